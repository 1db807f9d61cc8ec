// Copyright 2026 The permlcu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Hot loops, each in a plain serial form and an OpenMP form. Work is split
// so that every output entry is produced by one thread with a fixed
// summation order; the two forms agree bit for bit at any thread count.

#pragma once

#include <span>
#include <vector>

#include "permlcu/dyson.hpp"

namespace permlcu::kernels {

enum class Exec { serial, parallel };

/// Coefficients (times (-i)^q), term masks and bounds for every term and z.
CoefficientTable coefficient_table(const SegmentContext& ctx, Exec exec);

/// Dense sum_m sum_z coeff[m, z] |z ^ mask_m><z|, one column per task.
CMatrix accumulate_segment(const CoefficientTable& table, Exec exec);

/// Ancilla-major state: amps[a * dim + z]. Block a maps |z> to
/// phase[a * dim + z] |z ^ mask[a]>.
void apply_controlled(std::span<const Complex> phases, std::span<const BasisState> mask,
                      std::size_t dim, std::span<const Complex> in, std::span<Complex> out, Exec exec);

/// Inverse of apply_controlled.
void apply_controlled_adjoint(std::span<const Complex> phases, std::span<const BasisState> mask,
                              std::size_t dim, std::span<const Complex> in, std::span<Complex> out,
                              Exec exec);

/// In place (I - 2 v v^dagger) on the ancilla index, v unit-norm; Hermitian
/// and its own inverse.
void apply_householder(std::span<const Complex> v, std::size_t dim, std::span<Complex> amps, Exec exec);

/// Number of OpenMP threads the parallel forms will use.
int max_threads();

}  // namespace permlcu::kernels
