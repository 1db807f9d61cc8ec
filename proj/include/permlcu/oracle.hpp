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

// Reference propagators: dU/dt = -i H(t) U integrated with the embedded
// Runge-Kutta-Fehlberg 7(8) pair. Shares no numerics with the Dyson or LCU
// code.

#pragma once

#include <functional>

#include "permlcu/pham.hpp"

namespace permlcu::oracle {

inline constexpr double kDefaultTol = 1e-10;

struct PropagatorResult {
  CMatrix U;
  double est_error = 0.0;  // sum of accepted local error estimates
  long steps_taken = 0;
};

/// Writes H(t) into a dim x dim matrix.
using HamiltonianFn = std::function<void(double t, CMatrix& out)>;

/// Evolves the columns of x0 from t0 to t1 under H(t). Throws Errc::stiffness
/// when the step size underflows.
PropagatorResult propagate(const HamiltonianFn& H, const CMatrix& x0, double t0, double t1,
                           double tol = kDefaultTol);

/// Full propagator U(t1, t0) of H(t) = H0 + V(t). Requires n <= 8.
PropagatorResult propagate_ode(const PermExpHamiltonian& h, double t0, double t1,
                               double tol = kDefaultTol);

/// Propagator of H_I(t) = e^{i H0 t} V(t) e^{-i H0 t}.
PropagatorResult propagate_interaction(const PermExpHamiltonian& h, double t0, double t1,
                                       double tol = kDefaultTol);

/// U(t1, t0) psi without forming the full matrix.
CVector propagate_state(const PermExpHamiltonian& h, const CVector& psi, double t0, double t1,
                        double tol = kDefaultTol);

}  // namespace permlcu::oracle
