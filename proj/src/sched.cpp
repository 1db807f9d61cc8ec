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

#include "permlcu/sched.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/lambert_w.hpp>

namespace permlcu {
namespace {

constexpr double kSeriesSwitch = 1e-9;
constexpr std::size_t kMaxSteps = 10'000'000;

}  // namespace

StepResult next_step(double gamma_tw, double lambda) {
  if (!(gamma_tw > 0.0) || !std::isfinite(gamma_tw)) return {StepKind::vanished, 0.0};
  const double a = lambda * kLn2 / gamma_tw;
  if (1.0 + a <= 0.0) return {StepKind::negative_argument, 0.0};
  if (std::abs(a) < kSeriesSwitch) return {StepKind::ok, kLn2 / gamma_tw * (1.0 - 0.5 * a)};
  return {StepKind::ok, std::log1p(a) / lambda};
}

double dt_tilde(double dt, double lambda) {
  if (lambda == 0.0) return dt;
  return std::expm1(lambda * dt) / lambda;
}

const char* to_string(GammaMode mode) {
  return mode == GammaMode::exact ? "exact" : "uniform";
}

double schedule_gamma(const PermExpHamiltonian& h, double t, GammaMode mode) {
  if (mode == GammaMode::exact) return gamma_bound(h, t);
  const double pairs = static_cast<double>(h.num_perm_terms()) * h.num_exp_terms();
  return pairs * max_term_amplitude(h) * std::exp(t * lambda_max(h));
}

Schedule build_schedule(const PermExpHamiltonian& h, double T, double eps, GammaMode mode) {
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(Errc::invalid_argument, "evolution time must be positive");
  if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "epsilon must be positive");
  Schedule s;
  s.T = T;
  s.eps = eps;
  s.mode = mode;
  s.lambda = lambda_max(h);

  double t = 0.0;
  while (true) {
    if (s.steps.size() >= kMaxSteps) throw Error(Errc::internal_consistency, "schedule does not terminate");
    const double g = schedule_gamma(h, t, mode);
    const StepResult step = next_step(g, s.lambda);
    if (step.kind == StepKind::ok && t + step.dt < T) {
      s.steps.push_back({t, step.dt, g, dt_tilde(step.dt, s.lambda)});
      t += step.dt;
      continue;
    }
    const double dt = T - t;
    s.final_step_clamped = !(step.kind == StepKind::ok && t + step.dt == T);
    s.steps.push_back({t, dt, g, dt_tilde(dt, s.lambda)});
    break;
  }
  s.r = static_cast<int>(s.steps.size());
  s.gamma_tilde = kLn2 / s.steps.back().dt_tilde;
  s.l1_like = l1_like_norm(s);
  s.Q = truncation_order(s.r, eps);
  return s;
}

double truncation_tail(int Q) {
  if (Q < -1) return 2.0;
  double term = 1.0;
  for (int q = 1; q <= Q + 1; ++q) term *= kLn2 / q;
  // term = ln2^{Q+1} / (Q+1)!; sum the remaining tail forward.
  double tail = 0.0;
  for (int q = Q + 1; term > 1e-30 * tail || tail == 0.0; ++q) {
    tail += term;
    term *= kLn2 / (q + 1);
    if (term == 0.0) break;
  }
  return tail;
}

int truncation_order(int r, double eps) {
  if (r < 1) throw Error(Errc::invalid_argument, "step count must be at least 1");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(Errc::invalid_argument, "epsilon must be positive");
  const double target = eps / r;
  int Q = 0;
  while (truncation_tail(Q) > target) ++Q;
  if (std::log(2.0 * r / eps) > 0.0 && Q > truncation_order_lambert(r, eps)) {
    throw Error(Errc::internal_consistency, "searched truncation order exceeds the Lambert-W bound");
  }
  return Q;
}

int truncation_order_lambert(int r, double eps) {
  if (r < 1 || !(eps > 0.0)) throw Error(Errc::invalid_argument, "need r >= 1 and eps > 0");
  const double L = std::log(2.0 * r / eps);
  if (L <= 0.0) return 0;
  const double w = boost::math::lambert_w0(L / (std::numbers::e * kLn2));
  return static_cast<int>(std::ceil(L / w - 1.0));
}

double l1_like_norm(const Schedule& s) {
  double acc = 0.0;
  for (std::size_t w = 0; w < s.steps.size(); ++w) {
    const Step& st = s.steps[w];
    // A clamped final step under decay can be arbitrarily long; score it by
    // the decaying envelope instead of the left-endpoint rectangle.
    const bool tail = s.final_step_clamped && w + 1 == s.steps.size();
    acc += st.gamma * (tail ? std::min(st.dt, st.dt_tilde) : st.dt);
  }
  return acc;
}

}  // namespace permlcu
