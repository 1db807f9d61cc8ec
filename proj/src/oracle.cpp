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

#include "permlcu/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

namespace permlcu::oracle {
namespace {

using State = std::vector<Complex>;

// Local errors below this are roundoff; the controller does not chase them.
constexpr double kRoundoffFloor = 1e-15;
constexpr double kMinStepFraction = 1e-14;
constexpr int kMaxQubitsOracle = 8;

void check_size(const PermExpHamiltonian& h) {
  if (h.num_qubits() > kMaxQubitsOracle) {
    throw Error(Errc::unsupported_size, "oracle propagation is limited to 8 qubits");
  }
}

HamiltonianFn schroedinger(const PermExpHamiltonian& h) {
  return [&h](double t, CMatrix& out) { eval_H_into(h, t, out); };
}

HamiltonianFn interaction(const PermExpHamiltonian& h) {
  return [&h](double t, CMatrix& out) {
    out = eval_V(h, t);
    const RVector& E = h.h0_diag();
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      for (Eigen::Index r = 0; r < out.rows(); ++r) {
        if (out(r, c) != Complex(0.0, 0.0)) out(r, c) *= std::exp(Complex(0.0, (E(r) - E(c)) * t));
      }
    }
  };
}

}  // namespace

PropagatorResult propagate(const HamiltonianFn& H, const CMatrix& x0, double t0, double t1, double tol) {
  if (!(tol >= 1e-13)) throw Error(Errc::invalid_argument, "oracle tolerance must be at least 1e-13");
  if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) {
    throw Error(Errc::invalid_argument, "need finite t0 <= t1");
  }
  const Eigen::Index rows = x0.rows(), cols = x0.cols();
  PropagatorResult res;
  res.U = x0;
  const double span = t1 - t0;
  if (span == 0.0) return res;

  CMatrix hmat(rows, rows);
  auto rhs = [&](const State& x, State& dxdt, double t) {
    H(t, hmat);
    Eigen::Map<const CMatrix> xm(x.data(), rows, cols);
    Eigen::Map<CMatrix> dm(dxdt.data(), rows, cols);
    dm.noalias() = Complex(0.0, -1.0) * (hmat * xm);
  };

  boost::numeric::odeint::runge_kutta_fehlberg78<State> stepper;
  State x(x0.data(), x0.data() + x0.size());
  State xout(x.size()), xerr(x.size());

  H(t0, hmat);
  const double hnorm = std::max(hmat.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  double dt = std::min(span, 0.5 / hnorm);
  double t = t0;
  while (t < t1) {
    const bool last = t + dt >= t1;
    const double step = last ? t1 - t : dt;
    stepper.do_step(rhs, x, t, xout, step, xerr);
    double err = 0.0;
    for (const auto& e : xerr) err = std::max(err, std::abs(e));
    const double allowed = std::max(tol * step / span, kRoundoffFloor);
    if (err <= allowed) {
      x.swap(xout);
      t = last ? t1 : t + step;
      res.est_error += err;
      ++res.steps_taken;
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(allowed / err, 1.0 / 8.0), 0.2, 5.0);
    dt = step * factor;
    if (t < t1 && dt < kMinStepFraction * span) {
      throw Error(Errc::stiffness, "oracle step size underflow");
    }
  }
  res.U = Eigen::Map<const CMatrix>(x.data(), rows, cols);
  return res;
}

PropagatorResult propagate_ode(const PermExpHamiltonian& h, double t0, double t1, double tol) {
  check_size(h);
  const auto d = static_cast<Eigen::Index>(h.dim());
  return propagate(schroedinger(h), CMatrix::Identity(d, d), t0, t1, tol);
}

PropagatorResult propagate_interaction(const PermExpHamiltonian& h, double t0, double t1, double tol) {
  check_size(h);
  const auto d = static_cast<Eigen::Index>(h.dim());
  return propagate(interaction(h), CMatrix::Identity(d, d), t0, t1, tol);
}

CVector propagate_state(const PermExpHamiltonian& h, const CVector& psi, double t0, double t1, double tol) {
  check_size(h);
  return propagate(schroedinger(h), psi, t0, t1, tol).U.col(0);
}

}  // namespace permlcu::oracle
