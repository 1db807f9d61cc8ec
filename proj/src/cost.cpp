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

#include "permlcu/cost.hpp"

#include <algorithm>

namespace permlcu {

std::int64_t ceil_log2(std::int64_t x) {
  if (x < 1) throw Error(Errc::invalid_argument, "ceil_log2 needs x >= 1");
  std::int64_t k = 0;
  while ((std::int64_t{1} << k) < x) ++k;
  return k;
}

CostReport gate_cost(const CostParams& p) {
  for (std::int64_t v : {p.M, p.K, p.r, p.Q, p.k_od, p.L, p.d, p.C_D, p.C_dH0, p.C_Lambda, p.n}) {
    if (v < 0) throw Error(Errc::invalid_argument, "cost parameters must be non-negative");
  }
  CostReport rep;
  rep.vc_register = p.Q * p.Q;
  rep.vc_permutation = p.Q * p.M * (p.k_od + (p.M >= 1 ? ceil_log2(p.M) : 0));
  rep.vc_phase = p.Q * p.M * p.K * (p.C_D + p.C_dH0 + p.C_Lambda);
  rep.gate_vc = rep.vc_register + rep.vc_permutation + rep.vc_phase;
  rep.gate_ui = p.r * rep.gate_vc;
  rep.gate_h0 = p.L * p.d;
  rep.total = rep.gate_ui + rep.gate_h0;
  rep.qubits = qubit_cost(p);
  rep.prep_exact = p.Q * p.M * p.K;
  rep.prep_uniform = p.Q * ceil_log2(std::max<std::int64_t>(2, p.M * p.K));
  return rep;
}

std::int64_t qubit_cost(const CostParams& p) {
  return p.Q * ceil_log2(std::max<std::int64_t>(2, p.M * p.K)) + p.n + 1;
}

H0Circuit h0_circuit_count(std::int64_t L, std::int64_t d, const std::vector<std::int64_t>& weights) {
  if (L < 0 || d < 0) throw Error(Errc::invalid_argument, "L and d must be non-negative");
  if (static_cast<std::int64_t>(weights.size()) != L) {
    throw Error(Errc::invalid_argument, "need one weight per Z-term");
  }
  H0Circuit c;
  c.ancillas = L > 0 ? 1 : 0;
  for (std::int64_t m : weights) {
    if (m < 0 || m > d) throw Error(Errc::invalid_argument, "Z-term weight must lie in [0, d]");
    c.cnots += 2 * m;
    c.rotations += 1;
  }
  return c;
}

CostParams cost_params(const PermExpHamiltonian& h, const Schedule& s) {
  CostParams p;
  p.M = h.num_perm_terms();
  p.K = h.num_exp_terms();
  p.r = s.r;
  p.Q = s.Q;
  p.k_od = h.max_locality();
  p.L = static_cast<std::int64_t>(h.h0_terms().size());
  p.d = h.h0_locality();
  p.n = h.num_qubits();
  return p;
}

nlohmann::json to_json(const CostParams& p) {
  return {{"M", p.M}, {"K", p.K}, {"r", p.r}, {"Q", p.Q}, {"k_od", p.k_od}, {"L", p.L},
          {"d", p.d}, {"C_D", p.C_D}, {"C_dH0", p.C_dH0}, {"C_Lambda", p.C_Lambda}, {"n", p.n}};
}

nlohmann::json to_json(const CostReport& r) {
  return {{"gate_vc", r.gate_vc},
          {"gate_ui", r.gate_ui},
          {"gate_h0", r.gate_h0},
          {"total", r.total},
          {"qubits", r.qubits},
          {"vc_breakdown", {{"register", r.vc_register}, {"permutation", r.vc_permutation}, {"phase", r.vc_phase}}},
          {"state_prep", {{"exact", r.prep_exact}, {"uniform", r.prep_uniform}}}};
}

}  // namespace permlcu
