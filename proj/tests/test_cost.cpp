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

#include <gtest/gtest.h>

#include "permlcu/cost.hpp"
#include "permlcu/models.hpp"

namespace permlcu {
namespace {

CostParams unit_params() {
  CostParams p;
  p.M = p.K = p.k_od = 1;
  p.r = 10;
  p.Q = 4;
  p.L = p.d = 1;
  p.n = 1;
  return p;
}

TEST(GateCost, HandEvaluatedExample) {
  const CostReport r = gate_cost(unit_params());
  EXPECT_EQ(r.vc_register, 16);
  EXPECT_EQ(r.vc_permutation, 4);
  EXPECT_EQ(r.vc_phase, 12);
  EXPECT_EQ(r.gate_vc, 32);
  EXPECT_EQ(r.gate_ui, 320);
  EXPECT_EQ(r.gate_h0, 1);
  EXPECT_EQ(r.total, 321);
}

TEST(GateCost, ZeroStepsLeavesH0Only) {
  CostParams p = unit_params();
  p.r = 0;
  p.L = 3;
  p.d = 2;
  const CostReport r = gate_cost(p);
  EXPECT_EQ(r.gate_ui, 0);
  EXPECT_EQ(r.total, 6);
}

TEST(GateCost, UiIsRTimesVc) {
  CostParams p = unit_params();
  p.M = 5;
  p.K = 3;
  p.k_od = 2;
  p.r = 7;
  p.Q = 6;
  const CostReport r = gate_cost(p);
  EXPECT_EQ(r.gate_ui, p.r * r.gate_vc);
  EXPECT_EQ(r.vc_permutation, 6 * 5 * (2 + 3));
  EXPECT_EQ(r.prep_exact, 6 * 5 * 3);
  EXPECT_EQ(r.prep_uniform, 6 * 4);
}

TEST(GateCost, MonotoneInEachParameter) {
  const CostParams base = [] {
    CostParams p;
    p.M = 2;
    p.K = 2;
    p.r = 5;
    p.Q = 4;
    p.k_od = 2;
    p.L = 3;
    p.d = 2;
    p.n = 2;
    return p;
  }();
  std::int64_t CostParams::*fields[] = {&CostParams::M,   &CostParams::K,   &CostParams::r,
                                        &CostParams::Q,   &CostParams::k_od, &CostParams::L,
                                        &CostParams::d,   &CostParams::C_D, &CostParams::C_dH0,
                                        &CostParams::C_Lambda};
  for (auto f : fields) {
    for (std::int64_t v = 0; v < 12; ++v) {
      CostParams a = base, b = base;
      a.*f = v;
      b.*f = v + 1;
      EXPECT_LE(gate_cost(a).total, gate_cost(b).total);
      EXPECT_LE(qubit_cost(a), qubit_cost(b));
    }
  }
}

TEST(GateCost, RejectsNegative) {
  CostParams p = unit_params();
  p.Q = -1;
  EXPECT_THROW(gate_cost(p), Error);
}

TEST(QubitCost, Examples) {
  CostParams p = unit_params();
  p.n = 3;
  EXPECT_EQ(qubit_cost(p), 4 * 1 + 3 + 1);
  p.M = 4;
  p.K = 2;
  p.Q = 3;
  EXPECT_EQ(qubit_cost(p), 9 + 3 + 1);
  p.Q = 0;
  EXPECT_EQ(qubit_cost(p), 3 + 1);
}

TEST(H0Circuit, Examples) {
  const H0Circuit one = h0_circuit_count(1, 1, {1});
  EXPECT_EQ(one.cnots, 2);
  EXPECT_EQ(one.rotations, 1);
  EXPECT_EQ(one.ancillas, 1);
  const H0Circuit full = h0_circuit_count(4, 3, {3, 3, 3, 3});
  EXPECT_EQ(full.total(), 2 * 4 * 3 + 4);
  const H0Circuit none = h0_circuit_count(0, 0, {});
  EXPECT_EQ(none.total(), 0);
  EXPECT_EQ(none.ancillas, 0);
  EXPECT_THROW(h0_circuit_count(1, 1, {2}), Error);
  EXPECT_THROW(h0_circuit_count(2, 1, {1}), Error);
}

TEST(CostParamsFromModel, OscillatingIgnoresFrequency) {
  nlohmann::json ref;
  for (double alpha : {0.0, 1.0, 1e3, 1e6}) {
    const PermExpHamiltonian h = merge_disjoint_exp_terms(from_pauli_spec(models::oscillating(1.0, 1.0, alpha)));
    const Schedule s = build_schedule(h, 4.0, 1e-3);
    const CostParams p = cost_params(h, s);
    EXPECT_EQ(p.M, 1);
    EXPECT_EQ(p.K, 1);
    EXPECT_EQ(p.k_od, 1);
    const nlohmann::json j = {{"params", to_json(p)}, {"report", to_json(gate_cost(p))}};
    if (ref.is_null()) ref = j;
    EXPECT_EQ(j, ref) << "alpha=" << alpha;
  }
}

TEST(CostParamsFromModel, DecaySaturates) {
  const PermExpHamiltonian h = from_pauli_spec(models::decay(1.0, 1.0, 1.0));
  const CostReport a = gate_cost(cost_params(h, build_schedule(h, 100.0, 1e-3)));
  const CostReport b = gate_cost(cost_params(h, build_schedule(h, 1000.0, 1e-3)));
  EXPECT_EQ(a.gate_ui, b.gate_ui);
}

TEST(CostParamsFromModel, ReadsStructure) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_model(3, 3, 2, 4));
  const Schedule s = build_schedule(h, 2.0, 1e-3);
  const CostParams p = cost_params(h, s);
  EXPECT_EQ(p.M, h.num_perm_terms());
  EXPECT_EQ(p.K, h.num_exp_terms());
  EXPECT_EQ(p.r, s.r);
  EXPECT_EQ(p.Q, s.Q);
  EXPECT_EQ(p.Q, truncation_order(s.r, 1e-3));
  EXPECT_EQ(p.L, 4);
  EXPECT_EQ(p.d, 2);
  EXPECT_EQ(p.n, 3);
}

TEST(CeilLog2, Values) {
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(3), 2);
  EXPECT_EQ(ceil_log2(8), 3);
  EXPECT_EQ(ceil_log2(9), 4);
  EXPECT_THROW(ceil_log2(0), Error);
}

}  // namespace
}  // namespace permlcu
