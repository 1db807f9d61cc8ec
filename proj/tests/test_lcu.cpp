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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "permlcu/lcu.hpp"
#include "permlcu/models.hpp"
#include "permlcu/oracle.hpp"

namespace permlcu {
namespace {

using nlohmann::json;
constexpr double kLog2 = std::numbers::ln2;

CVector random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

json static_x(double g) {
  return {{"n", 1}, {"v", {{{"pauli", "X"}, {"coeff", {{{"amp", {g, 0.0}}, {"rate", {0.0, 0.0}}}}}}}}};
}

LcuProgram program_for(const SegmentContext& ctx) {
  return make_program(ctx, kernels::coefficient_table(ctx, kernels::Exec::serial));
}

TEST(PrepareB, OrderZero) {
  const PermExpHamiltonian h = from_pauli_spec(static_x(1.0));
  const SegmentContext ctx = make_segment(h, 0.0, 0.5, 0);
  const LcuProgram prog = program_for(ctx);
  EXPECT_EQ(prog.s, 1.0);
  ASSERT_EQ(prog.ancilla_dim, 2u);
  Statevector sv = Statevector::with_system(prog.ancilla_dim, CVector::Ones(2) / std::sqrt(2.0));
  prepare_B(prog, sv);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t z = 0; z < 2; ++z) EXPECT_NEAR(std::abs(sv.amps[a * 2 + z] - Complex(0.5, 0.0)), 0.0, 1e-15);
  }
}

TEST(PrepareB, FirstOrderAmplitudes) {
  const double g = 1.7;
  const PermExpHamiltonian h = from_pauli_spec(static_x(g));
  const SegmentContext ctx = make_segment(h, 0.0, kLog2 / g, 1);
  const LcuProgram prog = program_for(ctx);
  EXPECT_NEAR(prog.s, 1.0 + kLog2, 1e-15);
  ASSERT_EQ(prog.prep.size(), 4u);
  EXPECT_NEAR(prog.prep[2].real() / prog.prep[0].real(), std::sqrt(kLog2), 1e-14);
  double norm = 0.0;
  for (const auto& p : prog.prep) norm += std::norm(p);
  EXPECT_NEAR(norm, 1.0, 1e-15);
  // B|0> = prep.
  CVector e0 = CVector::Zero(2);
  e0(0) = 1.0;
  Statevector sv = Statevector::with_system(prog.ancilla_dim, e0);
  prepare_B(prog, sv);
  for (std::size_t a = 0; a < 4; ++a) {
    EXPECT_NEAR(std::abs(sv.amps[a * 2] - prog.prep[a]), 0.0, 1e-15);
    EXPECT_EQ(sv.amps[a * 2 + 1], Complex(0.0, 0.0));
  }
}

TEST(PrepareB, UniformModeIsFlatOverChannels) {
  const json spec = {{"n", 2},
                     {"v", {{{"pauli", "XI"}, {"coeff", {{{"amp", {0.3, 0.0}}, {"rate", {0.0, 0.0}}}}}},
                            {{"pauli", "IX"}, {"coeff", {{{"amp", {0.9, 0.0}}, {"rate", {0.0, 0.0}}}}}}}}};
  const PermExpHamiltonian h = from_pauli_spec(spec);
  ASSERT_EQ(h.num_perm_terms(), 2);
  const SegmentContext uni = make_segment(h, 0.0, 0.3, 1, GammaMode::uniform);
  const LcuProgram pu = program_for(uni);
  EXPECT_NEAR(std::abs(pu.prep[2]), std::abs(pu.prep[4]), 1e-15);
  const SegmentContext ex = make_segment(h, 0.0, 0.3, 1, GammaMode::exact);
  const LcuProgram pe = program_for(ex);
  EXPECT_NEAR(std::norm(pe.prep[4]) / std::norm(pe.prep[2]), 3.0, 1e-12);
}

TEST(ApplyVc, BlocksMatchTermPhases) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_model(1, 1, 1, 31));
  const SegmentContext ctx = make_segment(h, 0.2, 0.4, 1);
  const LcuProgram prog = program_for(ctx);
  std::mt19937_64 rng(1);
  const CVector psi = random_state(2, rng);

  // Zero block: untouched.
  Statevector sv = Statevector::with_system(prog.ancilla_dim, psi);
  apply_Vc(prog, sv);
  EXPECT_LT((sv.system_block() - psi).norm(), 1e-15);

  // q = 1 block with mask 1: |z> -> (-i) e^{i(theta_z +- phi_z)} |z ^ 1>.
  for (int x = 0; x < 2; ++x) {
    const std::size_t a = 2 + static_cast<std::size_t>(x);
    Statevector s1{prog.ancilla_dim, 2, std::vector<Complex>(prog.ancilla_dim * 2, Complex(0.0, 0.0))};
    s1.amps[a * 2 + 0] = psi(0);
    s1.amps[a * 2 + 1] = psi(1);
    apply_Vc(prog, s1);
    for (BasisState z = 0; z < 2; ++z) {
      const DysonTerm t = make_term(ctx, 1, z);
      const double sgn = x == 0 ? 1.0 : -1.0;
      const Complex expected = Complex(0.0, -1.0) * std::polar(1.0, t.theta + sgn * t.phi) * psi(z);
      EXPECT_NEAR(std::abs(s1.amps[a * 2 + (z ^ 1u)] - expected), 0.0, 1e-14);
    }
  }
}

TEST(ApplyVc, PreservesNormAndInverts) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, 4));
  const Schedule s = build_schedule(h, 2.0, 1e-3);
  const LcuProgram prog = program_for(make_segment(h, s, 0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Statevector sv{prog.ancilla_dim, prog.dim, std::vector<Complex>(prog.ancilla_dim * prog.dim)};
  for (auto& x : sv.amps) x = Complex(g(rng), g(rng));
  const double n0 = sv.norm();
  const auto before = sv.amps;
  apply_Vc(prog, sv);
  EXPECT_NEAR(sv.norm() / n0, 1.0, 1e-12);
  apply_Vc_adjoint(prog, sv);
  for (std::size_t j = 0; j < before.size(); ++j) EXPECT_LT(std::abs(sv.amps[j] - before[j]), 1e-13);
}

TEST(ApplyW, ZeroBlockIsScaledSegment) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, seed));
    const Schedule s = build_schedule(h, 3.0, 1e-3);
    const SegmentContext ctx = make_segment(h, s, 0);
    const CoefficientTable table = kernels::coefficient_table(ctx, kernels::Exec::serial);
    const LcuProgram prog = make_program(ctx, table);
    const CMatrix useg = kernels::accumulate_segment(table, kernels::Exec::serial);
    for (int it = 0; it < 5; ++it) {
      const CVector psi = random_state(h.dim(), rng);
      Statevector sv = Statevector::with_system(prog.ancilla_dim, psi);
      apply_W(prog, sv);
      const CVector expected = useg * psi / prog.s;
      EXPECT_LT((sv.system_block() - expected).norm() / expected.norm(), 1e-10);
      EXPECT_NEAR(sv.norm(), 1.0, 1e-12);
    }
  }
}

TEST(ApplyA, RejectsDirtyAncilla) {
  const PermExpHamiltonian h = from_pauli_spec(static_x(1.0));
  const LcuProgram prog = program_for(make_segment(h, 0.0, kLog2, 2));
  Statevector sv = Statevector::with_system(prog.ancilla_dim, CVector::Ones(2) / std::sqrt(2.0));
  sv.amps[2 * 2] = 0.1;
  EXPECT_THROW(apply_A(prog, sv), Error);
}

TEST(ApplyA, OscillatingSegmentResidual) {
  const PermExpHamiltonian h = from_pauli_spec(models::oscillating(1.0, 1.0, 2.0));
  const double eps = 1e-3;
  const Schedule s = build_schedule(h, 3.0, eps);
  std::mt19937_64 rng(4);
  for (int w = 0; w + 1 < s.r; ++w) {
    const SegmentContext ctx = make_segment(h, s, w);
    const CoefficientTable table = kernels::coefficient_table(ctx, kernels::Exec::parallel);
    const LcuProgram prog = make_program(ctx, table);
    const CMatrix useg = kernels::accumulate_segment(table, kernels::Exec::parallel);
    const CVector psi = random_state(2, rng);
    Statevector sv = Statevector::with_system(prog.ancilla_dim, psi);
    apply_A(prog, sv);
    EXPECT_NEAR(sv.norm(), 1.0, 1e-12);
    EXPECT_LE((sv.system_block() - useg * psi).norm(), 3.0 * eps / s.r);
  }
}

// With V = 0 the program has s = 1 and A = -W R W^dagger R W reduces to -1.
// run_full skips such segments instead.
TEST(ApplyA, NoInteractionGivesGlobalSign) {
  const PermExpHamiltonian h = from_pauli_spec({{"n", 1}, {"h0", {{{"coupling", 1.0}, {"z_mask", "1"}}}}});
  const SegmentContext ctx = make_segment(h, 0.0, 0.5, 3);
  const LcuProgram prog = program_for(ctx);
  EXPECT_EQ(prog.s, 1.0);
  std::mt19937_64 rng(5);
  const CVector psi = random_state(2, rng);
  Statevector sv = Statevector::with_system(prog.ancilla_dim, psi);
  apply_A(prog, sv);
  EXPECT_LT((sv.system_block() + psi).norm(), 1e-14);
}

TEST(SFromPrep, MatchesFormulaInBothModes) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, seed));
    for (GammaMode mode : {GammaMode::exact, GammaMode::uniform}) {
      const Schedule s = build_schedule(h, 4.0, 1e-3, mode);
      for (int w = 0; w < s.r; ++w) {
        const SegmentContext ctx = make_segment(h, s, w);
        if (ctx.channels.empty() || ctx.clamped) continue;
        double x = 0.0;
        if (mode == GammaMode::exact) {
          x = gamma_bound(h, ctx.t_w) * ctx.dt_tilde;
        } else {
          x = static_cast<double>(h.num_perm_terms()) * h.num_exp_terms() * max_term_amplitude(h) * ctx.dt_tilde *
              std::exp(ctx.t_w * lambda_max(h));
        }
        double formula = 0.0, term = 1.0;
        for (int q = 0; q <= ctx.Q; ++q) {
          formula += term;
          term *= x / (q + 1);
        }
        EXPECT_NEAR(s_from_prep(program_for(ctx)) / formula, 1.0, 1e-12);
      }
    }
  }
}

TEST(RunFull, NoInteractionIsH0Phase) {
  const PermExpHamiltonian h = from_pauli_spec({{"n", 2}, {"h0", {{{"coupling", 0.7}, {"z_mask", "11"}}}}});
  std::mt19937_64 rng(6);
  const CVector psi = random_state(4, rng);
  const RunResult run = run_full(h, 2.0, 1e-3, psi);
  CVector expected = psi;
  for (Eigen::Index z = 0; z < 4; ++z) expected(z) *= std::exp(Complex(0.0, -h.h0_diag()(z) * 2.0));
  EXPECT_LT((run.final_state - expected).norm(), 1e-15);
}

TEST(RunFull, OscillatingMatchesOracle) {
  const PermExpHamiltonian h = from_pauli_spec(models::oscillating(1.0, 1.0, 1.5));
  const double eps = 1e-3;
  CVector psi = CVector::Zero(2);
  psi(0) = 1.0;
  const RunResult run = run_full(h, 5.0, eps, psi);
  const CVector ref = oracle::propagate_state(h, psi, 0.0, 5.0);
  EXPECT_LE((run.final_state - ref).norm(), eps);
  EXPECT_GE(std::abs(ref.dot(run.final_state)), 1.0 - 2.0 * eps);
  EXPECT_EQ(static_cast<int>(run.segments.size()), run.schedule.r);
}

TEST(RunFull, DecayMatchesOracleAndSaturates) {
  const PermExpHamiltonian h = from_pauli_spec(models::decay(1.0, 1.0, 1.0));
  const double eps = 1e-3;
  std::mt19937_64 rng(7);
  const CVector psi = random_state(2, rng);
  const RunResult run = run_full(h, 50.0, eps, psi);
  EXPECT_EQ(run.schedule.r, build_schedule(h, 10.0, eps).r);
  EXPECT_LE((run.final_state - oracle::propagate_state(h, psi, 0.0, 50.0)).norm(), eps);
}

TEST(RunFull, ModesAgree) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, 12));
  const double eps = 1e-3;
  std::mt19937_64 rng(8);
  const CVector psi = random_state(4, rng);
  RunOptions uni;
  uni.mode = GammaMode::uniform;
  const RunResult a = run_full(h, 2.0, eps, psi);
  const RunResult b = run_full(h, 2.0, eps, psi, uni);
  EXPECT_GE(b.schedule.r, a.schedule.r);
  EXPECT_LE((a.final_state - b.final_state).norm(), 2.0 * eps);
}

TEST(RunFull, SerialAndParallelIdentical) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, 13));
  std::mt19937_64 rng(9);
  const CVector psi = random_state(4, rng);
  RunOptions ser;
  ser.exec = kernels::Exec::serial;
  const RunResult a = run_full(h, 1.5, 1e-3, psi, ser);
  const RunResult b = run_full(h, 1.5, 1e-3, psi);
  EXPECT_TRUE(a.final_state == b.final_state);
}

TEST(RunFull, RejectsBadState) {
  const PermExpHamiltonian h = from_pauli_spec(static_x(1.0));
  EXPECT_THROW(run_full(h, 1.0, 1e-3, CVector::Ones(2)), Error);
  EXPECT_THROW(run_full(h, 1.0, 1e-3, CVector::Ones(4) / 2.0), Error);
}

TEST(ApplyH0Phase, Examples) {
  const double hz = 0.8, t = 1.3;
  const PermExpHamiltonian h = from_pauli_spec({{"n", 1}, {"h0", {{{"coupling", hz}, {"z_mask", "1"}}}}});
  CVector psi = CVector::Ones(2);
  apply_H0_phase(h, 0.0, psi);
  EXPECT_TRUE(psi == CVector::Ones(2));
  apply_H0_phase(h, t, psi);
  EXPECT_NEAR(std::abs(psi(0) - std::exp(Complex(0.0, -hz * t))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(psi(1) - std::exp(Complex(0.0, hz * t))), 0.0, 1e-15);

  const PermExpHamiltonian r = from_pauli_spec(models::random_model(3, 1, 1, 2));
  std::mt19937_64 rng(10);
  CVector v = random_state(8, rng);
  const CVector ref = (Complex(0.0, -t) * CMatrix(r.h0_diag().cast<Complex>().asDiagonal())).exp() * v;
  apply_H0_phase(r, t, v);
  EXPECT_LT((v - ref).norm(), 1e-14);
}

TEST(RegisterLayout, Dimensions) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_model(3, 3, 2, 3));
  const RegisterLayout l = register_layout(h, 4);
  EXPECT_EQ(l.dim_i, h.num_perm_terms() + 1);
  EXPECT_EQ(l.dim_k, h.num_exp_terms());
  EXPECT_EQ(l.system_qubits, 3);
  EXPECT_DOUBLE_EQ(l.ancilla_dim(), std::pow(l.dim_i, 4) * std::pow(l.dim_k, 4) * 2.0);
}

}  // namespace
}  // namespace permlcu
