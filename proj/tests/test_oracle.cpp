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
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "permlcu/models.hpp"
#include "permlcu/oracle.hpp"

namespace permlcu {
namespace {

using nlohmann::json;

constexpr double kTol = oracle::kDefaultTol;

CMatrix eye(Eigen::Index d) { return CMatrix::Identity(d, d); }

CMatrix h0_phase(const PermExpHamiltonian& h, double t) {
  const auto d = static_cast<Eigen::Index>(h.dim());
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index z = 0; z < d; ++z) m(z, z) = std::exp(Complex(0.0, -h.h0_diag()(z) * t));
  return m;
}

TEST(Propagate, ZeroHamiltonianIsIdentity) {
  const oracle::HamiltonianFn zero = [](double, CMatrix& out) { out = CMatrix::Zero(3, 3); };
  const auto r = oracle::propagate(zero, eye(3), 0.0, 2.0);
  EXPECT_LT(max_norm(r.U - eye(3)), 1e-15);
}

TEST(Propagate, StaticMatchesExpm) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_static(3, 5, 7));
  const auto r = oracle::propagate_ode(h, 0.3, 2.1);
  const CMatrix exact = (Complex(0.0, -1.8) * eval_H(h, 0.0)).exp();
  EXPECT_LT(spectral_norm(r.U - exact), kTol);
  EXPECT_LE(spectral_norm(r.U.adjoint() * r.U - eye(8)), 10.0 * std::max(r.est_error, kTol));
}

// In the frame R(t) = diag(e^{-i a t/2}, e^{i a t/2}) the two-level model is
// static: H_rot = (h - a/2) Z + g X, so U(t) = R(t) exp(-i H_rot t).
TEST(Propagate, RabiClosedForm) {
  const double hz = 0.7, g = 1.1;
  for (double a : {0.0, 1.0, 25.0}) {
    const PermExpHamiltonian h = from_pauli_spec(models::oscillating(hz, g, a));
    const double t = 2.3;
    CMatrix hrot(2, 2);
    hrot << hz - a / 2, g, g, -(hz - a / 2);
    CMatrix rt = CMatrix::Zero(2, 2);
    rt(0, 0) = std::exp(Complex(0.0, -a * t / 2));
    rt(1, 1) = std::exp(Complex(0.0, a * t / 2));
    const CMatrix exact = rt * (Complex(0.0, -t) * hrot).exp();
    const auto r = oracle::propagate_ode(h, 0.0, t);
    EXPECT_LT(spectral_norm(r.U - exact), 10.0 * kTol) << "alpha=" << a;
  }
}

TEST(Propagate, Composition) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, 3));
  const auto a = oracle::propagate_ode(h, 0.0, 0.8);
  const auto b = oracle::propagate_ode(h, 0.8, 1.9);
  const auto c = oracle::propagate_ode(h, 0.0, 1.9);
  EXPECT_LT(spectral_norm(b.U * a.U - c.U), 10.0 * kTol);
}

TEST(Propagate, UnitarityOnRandomModels) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PermExpHamiltonian h = from_pauli_spec(models::random_model(3, 3, 2, seed));
    const auto r = oracle::propagate_ode(h, 0.0, 3.0);
    EXPECT_LT(spectral_norm(r.U.adjoint() * r.U - eye(8)), 10.0 * kTol);
    EXPECT_GT(r.steps_taken, 0);
  }
}

TEST(PropagateInteraction, Examples) {
  const PermExpHamiltonian h0only = from_pauli_spec({{"n", 2}, {"h0", {{{"coupling", 0.9}, {"z_mask", "10"}}}}});
  EXPECT_LT(max_norm(oracle::propagate_interaction(h0only, 0.0, 1.0).U - eye(4)), 1e-15);

  const PermExpHamiltonian nofield = from_pauli_spec(models::random_static(2, 3, 2));
  EXPECT_LT(spectral_norm(oracle::propagate_interaction(nofield, 0.2, 1.4).U -
                          oracle::propagate_ode(nofield, 0.2, 1.4).U),
            5.0 * kTol);
}

TEST(PropagateInteraction, Intertwining) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, seed));
    const double t0 = 0.5, t1 = 2.0;
    const CMatrix u = oracle::propagate_ode(h, t0, t1).U;
    const CMatrix ui = oracle::propagate_interaction(h, t0, t1).U;
    const CMatrix rebuilt = h0_phase(h, t1) * ui * h0_phase(h, -t0);
    EXPECT_LT(spectral_norm(u - rebuilt), 5.0 * kTol) << "seed=" << seed;
  }
}

TEST(PropagateState, MatchesColumn) {
  const PermExpHamiltonian h = from_pauli_spec(models::random_model(2, 2, 2, 9));
  CVector e2 = CVector::Zero(4);
  e2(2) = 1.0;
  const CVector s = oracle::propagate_state(h, e2, 0.0, 1.5);
  EXPECT_LT((s - oracle::propagate_ode(h, 0.0, 1.5).U.col(2)).norm(), 10.0 * kTol);
}

// Two Hamiltonians whose sup-norm gap is at most delta drift apart by at most delta T.
TEST(Propagate, SubadditivityHarness) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double T = 2.0;
  for (int it = 0; it < 5; ++it) {
    const double w = 3.0 * std::abs(u(rng));
    const double delta = 0.05 * std::abs(u(rng));
    const oracle::HamiltonianFn h1 = [w](double t, CMatrix& out) {
      out.resize(2, 2);
      out << 0.5, std::cos(w * t), std::cos(w * t), -0.5;
    };
    const oracle::HamiltonianFn h2 = [w, delta](double t, CMatrix& out) {
      out.resize(2, 2);
      const double f = std::cos(w * t) + delta * std::sin(7.0 * t);
      out << 0.5, f, f, -0.5;
    };
    const CMatrix u1 = oracle::propagate(h1, eye(2), 0.0, T).U;
    const CMatrix u2 = oracle::propagate(h2, eye(2), 0.0, T).U;
    EXPECT_LE(spectral_norm(u1 - u2), delta * T + 10.0 * kTol);
  }
}

TEST(Propagate, PreconditionsAndStiffness) {
  const PermExpHamiltonian h = from_pauli_spec(models::decay(1.0, 1.0, 1.0));
  EXPECT_THROW(oracle::propagate_ode(h, 0.0, 1.0, 1e-14), Error);
  EXPECT_THROW(oracle::propagate_ode(h, 1.0, 0.0), Error);
  const oracle::HamiltonianFn huge = [](double, CMatrix& out) {
    out = CMatrix::Zero(2, 2);
    out(0, 0) = 1e22;
    out(1, 1) = -1e22;
  };
  try {
    oracle::propagate(huge, eye(2), 0.0, 1.0);
    FAIL() << "expected a stiffness error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::stiffness);
  }
  const PermExpHamiltonian big = from_pauli_spec(models::random_static(9, 2, 1));
  EXPECT_THROW(oracle::propagate_ode(big, 0.0, 0.1), Error);
}

}  // namespace
}  // namespace permlcu
