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

// Adaptive partition of [0, T]. Each step solves
//   Gamma(t_w) * (e^{lambda dt} - 1) / lambda = ln 2
// for dt, which keeps the LCU normalization s near 2.

#pragma once

#include <vector>

#include "permlcu/pham.hpp"

namespace permlcu {

enum class StepKind {
  ok,
  negative_argument,  // 1 + lambda ln2 / Gamma <= 0: no finite step reaches ln 2
  vanished,           // Gamma(t_w) <= 0
};

struct StepResult {
  StepKind kind = StepKind::ok;
  double dt = 0.0;  // meaningful only for StepKind::ok
};

StepResult next_step(double gamma_tw, double lambda);

/// (e^{lambda dt} - 1) / lambda, equal to dt at lambda = 0.
double dt_tilde(double dt, double lambda);

/// How the per-step bound Gamma(t) is formed.
enum class GammaMode {
  exact,    // sum over (i,k) of ||amp_ik||_max e^{t lambda_ik}
  uniform,  // M K max_ik ||amp_ik||_max e^{t lambda}
};

const char* to_string(GammaMode mode);

/// Gamma(t) under the given mode.
double schedule_gamma(const PermExpHamiltonian& h, double t, GammaMode mode);

struct Step {
  double t = 0.0;
  double dt = 0.0;
  double gamma = 0.0;     // Gamma(t_w)
  double dt_tilde = 0.0;  // (e^{lambda dt} - 1) / lambda
};

struct Schedule {
  std::vector<Step> steps;
  int r = 0;
  int Q = 0;
  double lambda = 0.0;
  bool final_step_clamped = false;
  double l1_like = 0.0;
  /// ln 2 / dt_tilde of the final step; the bound the final segment is
  /// normalized with when it was clamped.
  double gamma_tilde = 0.0;
  double T = 0.0;
  double eps = 0.0;
  GammaMode mode = GammaMode::exact;
};

/// Partitions [0, T] and picks Q for the total error budget eps.
Schedule build_schedule(const PermExpHamiltonian& h, double T, double eps,
                        GammaMode mode = GammaMode::exact);

/// sum_{q > Q} (ln 2)^q / q!, i.e. 2 - sum_{q <= Q} (ln 2)^q / q!.
double truncation_tail(int Q);

/// Smallest Q with truncation_tail(Q) <= eps / r. Throws Errc::internal_consistency
/// if the result exceeds truncation_order_lambert.
int truncation_order(int r, double eps);

/// ceil(ln(2r/eps) / W(ln(2r/eps) / (e ln 2)) - 1), W the principal Lambert branch.
int truncation_order_lambert(int r, double eps);

/// sum_w Gamma(t_w) dt_w; a clamped final step counts Gamma(t_w) min(dt, dt_tilde).
double l1_like_norm(const Schedule& s);

}  // namespace permlcu
