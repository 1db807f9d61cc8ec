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

// Resource counts with all big-O constants set to 1 ("unit gates").
//
//   V_c   Q^2 + Q M (k_od + log M) + Q M K (C_D + C_dH0 + C_Lambda)
//   U_I   r * V_c
//   H0    L d
//   total r * V_c + L d
//   qubits Q ceil(log2(max(2, M K))) + n + 1

#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "permlcu/pham.hpp"
#include "permlcu/sched.hpp"

namespace permlcu {

struct CostParams {
  std::int64_t M = 0;
  std::int64_t K = 0;
  std::int64_t r = 0;
  std::int64_t Q = 0;
  std::int64_t k_od = 0;
  std::int64_t L = 0;
  std::int64_t d = 0;
  std::int64_t C_D = 1;
  std::int64_t C_dH0 = 1;
  std::int64_t C_Lambda = 1;
  std::int64_t n = 0;  // system qubits, for the qubit count only
};

struct CostReport {
  std::int64_t gate_vc = 0;
  std::int64_t gate_ui = 0;
  std::int64_t gate_h0 = 0;
  std::int64_t total = 0;
  std::int64_t qubits = 0;
  // V_c breakdown.
  std::int64_t vc_register = 0;     // Q^2
  std::int64_t vc_permutation = 0;  // Q M (k_od + log M)
  std::int64_t vc_phase = 0;        // Q M K (C_D + C_dH0 + C_Lambda)
  // State preparation, reported beside the U_I row.
  std::int64_t prep_exact = 0;    // Q M K
  std::int64_t prep_uniform = 0;  // Q ceil(log2(max(2, M K)))
};

/// ceil(log2(x)) for x >= 1; 0 at x = 1.
std::int64_t ceil_log2(std::int64_t x);

CostReport gate_cost(const CostParams& p);
std::int64_t qubit_cost(const CostParams& p);

struct H0Circuit {
  std::int64_t cnots = 0;
  std::int64_t rotations = 0;
  std::int64_t ancillas = 0;
  std::int64_t total() const { return cnots + rotations; }
};

/// e^{-i H0 t} as one parity-accumulating circuit per Z-term:
/// 2 m CNOTs into a single ancilla and one phase rotation.
H0Circuit h0_circuit_count(std::int64_t L, std::int64_t d, const std::vector<std::int64_t>& weights);

/// Parameters read off a Hamiltonian and its schedule.
CostParams cost_params(const PermExpHamiltonian& h, const Schedule& s);

nlohmann::json to_json(const CostParams& p);
nlohmann::json to_json(const CostReport& r);

}  // namespace permlcu
