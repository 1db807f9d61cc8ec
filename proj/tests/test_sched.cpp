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

#include <gtest/gtest.h>

#include "permlcu/models.hpp"
#include "permlcu/sched.hpp"

namespace permlcu {
namespace {

constexpr double kLog2 = std::numbers::ln2;

// Solves gamma (e^{lambda dt} - 1) / lambda = ln 2 for dt by bisection.
double bisect_step(double gamma, double lambda) {
  auto f = [&](double dt) { return gamma * std::expm1(lambda * dt) / lambda - kLog2; };
  double lo = 0.0, hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Tail 2 - sum_{q <= Q} ln2^q / q! by direct partial sums.
double partial_tail(int Q) {
  double sum = 0.0, term = 1.0;
  for (int q = 0; q <= Q; ++q) {
    sum += term;
    term *= kLog2 / (q + 1);
  }
  return 2.0 - sum;
}

TEST(NextStep, Examples) {
  const StepResult a = next_step(1.0, 0.0);
  EXPECT_EQ(a.kind, StepKind::ok);
  EXPECT_DOUBLE_EQ(a.dt, kLog2);

  const StepResult b = next_step(1.0, 1.0);
  EXPECT_EQ(b.kind, StepKind::ok);
  EXPECT_NEAR(b.dt, std::log(1.0 + kLog2), 1e-15);
  EXPECT_NEAR(b.dt, 0.526589034, 1e-9);
  EXPECT_NEAR(b.dt, bisect_step(1.0, 1.0), 1e-14);

  EXPECT_EQ(next_step(0.5, -1.0).kind, StepKind::negative_argument);
  EXPECT_EQ(next_step(0.0, 1.0).kind, StepKind::vanished);
  EXPECT_EQ(next_step(-1.0, 0.0).kind, StepKind::vanished);
}

TEST(NextStep, SeriesBranchIsContinuous) {
  for (double lambda : {1e-12, -1e-12, 1e-10, 3e-9, -3e-9}) {
    const double dt = next_step(2.0, lambda).dt;
    EXPECT_NEAR(2.0 * dt_tilde(dt, lambda), kLog2, 1e-15) << lambda;
  }
}

TEST(NextStep, SatisfiesStepCondition) {
  for (double g : {0.1, 1.0, 30.0}) {
    for (double lambda : {-0.05, -1.0, 0.2, 5.0}) {
      const StepResult s = next_step(g, lambda);
      if (s.kind != StepKind::ok) continue;
      EXPECT_NEAR(g * dt_tilde(s.dt, lambda) / kLog2, 1.0, 1e-12);
      EXPECT_NEAR(s.dt, bisect_step(g, lambda), 1e-12 * s.dt);
    }
  }
}

TEST(BuildSchedule, ConstantGammaCount) {
  const PermExpHamiltonian h = merge_disjoint_exp_terms(from_pauli_spec(models::oscillating(1.0, 1.3, 2.0)));
  for (double T : {0.4, 3.0, 10.0, 17.5}) {
    const Schedule s = build_schedule(h, T, 1e-3);
    const double g = gamma_bound(h, 0.0);
    EXPECT_EQ(s.r, static_cast<int>(std::ceil(g * T / kLog2))) << T;
    for (int w = 0; w + 1 < s.r; ++w) EXPECT_EQ(s.steps[static_cast<std::size_t>(w)].dt, kLog2 / g);
  }
}

TEST(BuildSchedule, Invariants) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, seed));
    const double T = 6.0;
    const Schedule s = build_schedule(h, T, 1e-3);
    ASSERT_GE(s.r, 1);
    EXPECT_EQ(s.steps.front().t, 0.0);
    double total = 0.0;
    for (int w = 0; w < s.r; ++w) {
      const Step& st = s.steps[static_cast<std::size_t>(w)];
      EXPECT_GT(st.dt, 0.0);
      if (w > 0) EXPECT_EQ(st.t, s.steps[static_cast<std::size_t>(w - 1)].t + s.steps[static_cast<std::size_t>(w - 1)].dt);
      if (w + 1 < s.r) EXPECT_NEAR(st.gamma * st.dt_tilde / kLog2, 1.0, 1e-12);
      total += st.dt;
    }
    EXPECT_EQ(s.steps.back().t + s.steps.back().dt, T);
    EXPECT_NEAR(total, T, 1e-12);
    if (!s.final_step_clamped) EXPECT_LE(s.r, s.l1_like / kLog2 + 1.0 + 1e-12);
  }
}

TEST(BuildSchedule, DecaySaturates) {
  const PermExpHamiltonian h = from_pauli_spec(models::decay(1.0, 1.0, 1.0));
  const Schedule s10 = build_schedule(h, 10.0, 1e-3);
  const Schedule s100 = build_schedule(h, 100.0, 1e-3);
  const Schedule s1000 = build_schedule(h, 1000.0, 1e-3);
  EXPECT_EQ(s10.r, s100.r);
  EXPECT_EQ(s100.r, s1000.r);
  // Only the final clamped step differs.
  for (int w = 0; w + 1 < s100.r; ++w) {
    EXPECT_EQ(s100.steps[static_cast<std::size_t>(w)].dt, s1000.steps[static_cast<std::size_t>(w)].dt);
  }
  EXPECT_TRUE(s1000.final_step_clamped);
}

TEST(BuildSchedule, DecayL1LikeNearIntegral) {
  const double g = 1.0, alpha = 0.05;
  const PermExpHamiltonian h = from_pauli_spec(models::decay(1.0, g, alpha));
  const Schedule s = build_schedule(h, 1000.0, 1e-3);
  EXPECT_NEAR(s.l1_like / (g / alpha), 1.0, 0.25);
  EXPECT_EQ(l1_like_norm(s), s.l1_like);
}

TEST(BuildSchedule, ShortTimeIsSingleClampedStep) {
  const PermExpHamiltonian h = from_pauli_spec(models::decay(1.0, 1.0, 1.0));
  const Schedule s = build_schedule(h, 0.1, 1e-3);
  EXPECT_EQ(s.r, 1);
  EXPECT_TRUE(s.final_step_clamped);
  EXPECT_EQ(s.steps[0].dt, 0.1);
  // Envelope integral of e^{-t} over [0, 0.1].
  EXPECT_NEAR(s.l1_like, -std::expm1(-0.1), 1e-15);
}

TEST(BuildSchedule, ClampedGrowthStepKeepsRectangle) {
  const PermExpHamiltonian h = from_pauli_spec(models::growth(1.0, 1.0, 1.0));
  const Schedule s = build_schedule(h, 0.1, 1e-3);
  ASSERT_EQ(s.r, 1);
  EXPECT_NEAR(s.l1_like, 0.1, 1e-15);
}

TEST(BuildSchedule, ConstantL1LikeIsRLn2) {
  const PermExpHamiltonian h = merge_disjoint_exp_terms(from_pauli_spec(models::oscillating(1.0, 1.0, 0.0)));
  const Schedule s = build_schedule(h, 5.0 * kLog2, 1e-3);
  // T is an exact multiple only up to rounding; either way the sum is r ln2.
  EXPECT_NEAR(s.l1_like, s.r * kLog2, 1e-12);
}

TEST(BuildSchedule, GrowthApproachesLn2FromBelow) {
  const PermExpHamiltonian h = from_pauli_spec(models::growth(1.0, 1.0, 0.5));
  const Schedule s = build_schedule(h, 12.0, 1e-3);
  double prev = 0.0;
  for (int w = 0; w + 1 < s.r; ++w) {
    const Step& st = s.steps[static_cast<std::size_t>(w)];
    const double p = st.dt * st.gamma;
    EXPECT_LT(p, kLog2);
    EXPECT_GE(p, prev);
    prev = p;
  }
  EXPECT_GT(prev, 0.99 * kLog2);
}

TEST(BuildSchedule, FrequencyIndependent) {
  const PermExpHamiltonian ref = merge_disjoint_exp_terms(from_pauli_spec(models::oscillating(1.0, 1.0, 0.0)));
  const Schedule s0 = build_schedule(ref, 7.0, 1e-4);
  for (double alpha : {1.0, 1e3, 1e6}) {
    const PermExpHamiltonian h = merge_disjoint_exp_terms(from_pauli_spec(models::oscillating(1.0, 1.0, alpha)));
    const Schedule s = build_schedule(h, 7.0, 1e-4);
    ASSERT_EQ(s.r, s0.r);
    EXPECT_EQ(s.Q, s0.Q);
    for (int w = 0; w < s.r; ++w) {
      EXPECT_EQ(s.steps[static_cast<std::size_t>(w)].dt, s0.steps[static_cast<std::size_t>(w)].dt);
      EXPECT_EQ(s.steps[static_cast<std::size_t>(w)].gamma, s0.steps[static_cast<std::size_t>(w)].gamma);
    }
  }
}

TEST(BuildSchedule, UniformModeIsLooser) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, 3));
  const Schedule exact = build_schedule(h, 4.0, 1e-3, GammaMode::exact);
  const Schedule uni = build_schedule(h, 4.0, 1e-3, GammaMode::uniform);
  EXPECT_GE(uni.r, exact.r);
  for (double t : {0.0, 1.0, 3.0}) {
    EXPECT_GE(schedule_gamma(h, t, GammaMode::uniform), schedule_gamma(h, t, GammaMode::exact));
  }
}

TEST(BuildSchedule, RejectsBadArguments) {
  const PermExpHamiltonian h = from_pauli_spec(models::decay(1.0, 1.0, 1.0));
  EXPECT_THROW(build_schedule(h, 0.0, 1e-3), Error);
  EXPECT_THROW(build_schedule(h, 1.0, 0.0), Error);
}

TEST(TruncationOrder, Examples) {
  EXPECT_EQ(truncation_order(1, 0.5), 1);
  EXPECT_NEAR(partial_tail(1), 2.0 - (1.0 + kLog2), 1e-15);
  EXPECT_EQ(truncation_order(1, 1.0), 0);
  EXPECT_EQ(truncation_order(1, 3.0), 0);
  const int q = truncation_order(100, 1e-3);
  EXPECT_LE(partial_tail(q), 1e-5);
  EXPECT_GT(partial_tail(q - 1), 1e-5);
  EXPECT_THROW(truncation_order(1, 0.0), Error);
  EXPECT_THROW(truncation_order(0, 0.1), Error);
}

TEST(TruncationOrder, TailMatchesPartialSums) {
  for (int Q = 0; Q <= 8; ++Q) EXPECT_NEAR(truncation_tail(Q), partial_tail(Q), 1e-15);
  // Past the point where 2 - sum cancels, the forward tail keeps full precision.
  EXPECT_NEAR(truncation_tail(15) / (std::pow(kLog2, 16) / std::tgamma(17.0)), 1.0, 0.1);
}

TEST(TruncationOrder, MinimalAndBelowLambert) {
  for (int r : {1, 2, 5, 20, 100, 1000}) {
    for (double eps : {0.3, 1e-2, 1e-5, 1e-8, 1e-11}) {
      const int q = truncation_order(r, eps);
      EXPECT_LE(truncation_tail(q), eps / r);
      if (q > 0) EXPECT_GT(truncation_tail(q - 1), eps / r);
      EXPECT_LE(q, truncation_order_lambert(r, eps));
    }
  }
}

}  // namespace
}  // namespace permlcu
