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

// Stock single-qubit models and a seeded random generator, all emitted as
// HamiltonianSpec documents so they go through the regular parser.

#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "permlcu/pham.hpp"

namespace permlcu::models {

/// h Z + Gamma (e^{-i alpha t}|0><1| + e^{i alpha t}|1><0|).
nlohmann::json oscillating(double h, double gamma, double alpha);

/// h Z + Gamma e^{-alpha t} X.
nlohmann::json decay(double h, double gamma, double alpha);

/// h Z + Gamma e^{alpha t} X.
nlohmann::json growth(double h, double gamma, double alpha);

/// h Z + sum_c (amp_c e^{rate_c t}) X for a real-valued exponential sum.
nlohmann::json scalar_coupling(double h, const std::vector<ExpComponent>& components);

/// Random n-qubit model with up to max_masks permutation masks and up to
/// max_k distinct rates per mask. Each mask gets either a damped oscillation
/// (a conjugate rate pair) or a single real rate. H0 has random Z and ZZ terms.
nlohmann::json random_model(int n, int max_masks, int max_k, std::uint64_t seed);

/// A static model: random Pauli couplings with zero rates.
nlohmann::json random_static(int n, int num_strings, std::uint64_t seed);

}  // namespace permlcu::models
