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

// Divided differences of the exponential function, e^{[x_0,...,x_q]}.
//
// The production path shifts the inputs by their mean, then either sums the
// Taylor series of complete homogeneous symmetric polynomials directly
// (small spread) or builds the full triangular table of divided differences
// at inputs scaled by 2^-s and squares it s times. Both paths run in long
// double and accept repeated (confluent) inputs without special casing.

#pragma once

#include <cstddef>
#include <span>

#include "permlcu/common.hpp"

namespace permlcu::dd {

/// e^{[x_0,...,x_q]}. Throws Errc::invalid_argument on empty or non-finite input.
Complex exp_dd(std::span<const Complex> xs);

/// e^{t[x_0,...,x_q]} = t^q e^{[t x_0,...,t x_q]}.
Complex exp_dd_scaled(double t, std::span<const Complex> xs);

/// e^{[Re x_0,...,Re x_q]}; upper bound on |exp_dd(xs)|.
double exp_dd_bound(std::span<const Complex> xs);

/// Longest input list accepted by exp_dd_oracle_bidiagonal.
inline constexpr std::size_t kOracleMaxInputs = 32;

/// Corner entry of the exponential of the bidiagonal matrix with xs on the
/// diagonal and ones above it, computed by a generic dense matrix exponential
/// in extended precision. Independent of exp_dd.
Complex exp_dd_oracle_bidiagonal(std::span<const Complex> xs);

/// Nested simplex integral
///   int_0^1 ds_q int_0^{s_q} ds_{q-1} ... int_0^{s_2} ds_1 exp(sum_l lambda_l s_l)
/// by tensor Gauss-Legendre quadrature (grid panels of 8 nodes per axis) on
/// the collapsed unit cube. q = lambdas.size() must be in [1, 3]; grid >= 10.
Complex hermite_genocchi_quadrature(std::span<const Complex> lambdas, int grid);

}  // namespace permlcu::dd
