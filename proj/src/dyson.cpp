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

#include "permlcu/dyson.hpp"

#include <cmath>
#include <numbers>

#include "permlcu/dd.hpp"
#include "permlcu/kernels.hpp"

namespace permlcu {
namespace {

constexpr double kClampTolerance = 1e-9;

double normalization(double gamma_dt, int Q) {
  double s = 0.0, term = 1.0;
  for (int q = 0; q <= Q; ++q) {
    s += term;
    term *= gamma_dt / (q + 1);
  }
  return s;
}

std::vector<Channel> collect_channels(const PermExpHamiltonian& h, double t_w, GammaMode mode) {
  std::vector<Channel> out;
  if (mode == GammaMode::exact) {
    for (const auto& ref : h.active_channels()) {
      const auto& et = h.vterms()[static_cast<std::size_t>(ref.perm_index)].exp_terms[static_cast<std::size_t>(ref.exp_index)];
      const double lam = lambda_ik(et);
      out.push_back({ref, h.vterms()[static_cast<std::size_t>(ref.perm_index)].mask, lam,
                     et.max_amp() * std::exp(t_w * lam)});
    }
    return out;
  }
  // Uniform: every (i, k) pair carries the same weight.
  const double lam = lambda_max(h);
  const double w = max_term_amplitude(h) * std::exp(t_w * lam);
  for (int i = 0; i < h.num_perm_terms(); ++i) {
    for (int k = 0; k < h.num_exp_terms(); ++k) {
      out.push_back({{i, k}, h.vterms()[static_cast<std::size_t>(i)].mask, lam, w});
    }
  }
  return out;
}

void finish_context(SegmentContext& ctx, double target_gamma) {
  double sum = 0.0;
  for (const auto& c : ctx.channels) sum += c.weight;
  ctx.gamma_nominal = sum;
  if (target_gamma > sum && !ctx.channels.empty()) {
    if (sum > 0.0) {
      const double scale = target_gamma / sum;
      for (auto& c : ctx.channels) c.weight *= scale;
    } else {
      for (auto& c : ctx.channels) c.weight = target_gamma / static_cast<double>(ctx.channels.size());
    }
  }
  ctx.gamma = 0.0;
  for (const auto& c : ctx.channels) ctx.gamma += c.weight;
  ctx.s_nominal = normalization(ctx.gamma_nominal * ctx.dt_tilde, ctx.Q);
  ctx.s = normalization(ctx.gamma * ctx.dt_tilde, ctx.Q);
}

}  // namespace

std::size_t SegmentContext::num_terms() const {
  std::size_t total = 0, power = 1;
  for (int q = 0; q <= Q; ++q) {
    total += power;
    power *= channels.size();
  }
  return total;
}

SegmentContext make_segment(const PermExpHamiltonian& h, const Schedule& sched, int w) {
  if (w < 0 || w >= sched.r) throw Error(Errc::invalid_argument, "segment index out of range");
  const Step& st = sched.steps[static_cast<std::size_t>(w)];
  SegmentContext ctx;
  ctx.h = &h;
  ctx.w = w;
  ctx.t_w = st.t;
  ctx.dt = st.dt;
  ctx.lambda = sched.lambda;
  ctx.dt_tilde = st.dt_tilde;
  ctx.Q = sched.Q;
  ctx.mode = sched.mode;
  ctx.clamped = sched.final_step_clamped && w == sched.r - 1;
  ctx.channels = collect_channels(h, st.t, sched.mode);
  finish_context(ctx, ctx.clamped ? sched.gamma_tilde : 0.0);
  return ctx;
}

SegmentContext make_segment(const PermExpHamiltonian& h, double t_w, double dt, int Q, GammaMode mode) {
  if (!(dt > 0.0) || t_w < 0.0 || Q < 0) throw Error(Errc::invalid_argument, "bad segment window");
  SegmentContext ctx;
  ctx.h = &h;
  ctx.t_w = t_w;
  ctx.dt = dt;
  ctx.lambda = lambda_max(h);
  ctx.dt_tilde = permlcu::dt_tilde(dt, ctx.lambda);
  ctx.Q = Q;
  ctx.mode = mode;
  ctx.channels = collect_channels(h, t_w, mode);
  finish_context(ctx, 0.0);
  return ctx;
}

std::vector<int> decode_term(const SegmentContext& ctx, std::size_t m) {
  const std::size_t C = ctx.channels.size();
  std::size_t power = 1;
  for (int q = 0; q <= ctx.Q; ++q) {
    if (m < power) {
      std::vector<int> out(static_cast<std::size_t>(q));
      for (auto& c : out) {
        c = static_cast<int>(m % C);
        m /= C;
      }
      return out;
    }
    m -= power;
    power *= C;
  }
  throw Error(Errc::invalid_argument, "term index out of range");
}

InteractionInputs interaction_inputs(const PermExpHamiltonian& h, std::span<const ChannelRef> chans,
                                     BasisState z) {
  const std::size_t q = chans.size();
  InteractionInputs in;
  in.z_path.resize(q);
  in.xs.resize(q);
  std::vector<Complex> rates(q);
  BasisState cur = z;
  for (std::size_t j = 0; j < q; ++j) {
    const auto& pt = h.vterms()[static_cast<std::size_t>(chans[j].perm_index)];
    const auto& et = pt.exp_terms[static_cast<std::size_t>(chans[j].exp_index)];
    cur ^= pt.mask;
    in.z_path[j] = cur;
    rates[j] = et.rate(static_cast<Eigen::Index>(cur));
    in.d_coeff *= et.amp(static_cast<Eigen::Index>(cur));
    in.rate_sum += rates[j];
  }
  if (q == 0) return in;
  const RVector& E = h.h0_diag();
  const double e_last = E(static_cast<Eigen::Index>(in.z_path[q - 1]));
  Complex suffix(0.0, 0.0);
  for (std::size_t jj = q; jj-- > 0;) {
    suffix += rates[jj];
    const BasisState prev = jj == 0 ? z : in.z_path[jj - 1];
    in.xs[jj] = Complex(0.0, e_last - E(static_cast<Eigen::Index>(prev))) + suffix;
  }
  return in;
}

Complex term_coefficient(const SegmentContext& ctx, const InteractionInputs& in, BasisState z) {
  const std::size_t q = in.xs.size();
  if (q == 0) return {1.0, 0.0};
  const RVector& E = ctx.h->h0_diag();
  std::vector<Complex> inputs(in.xs);
  inputs.push_back({0.0, 0.0});
  const double gap = E(static_cast<Eigen::Index>(z)) - E(static_cast<Eigen::Index>(in.z_path.back()));
  const Complex prefactor = std::exp(Complex(0.0, -ctx.t_w * gap) + ctx.t_w * in.rate_sum);
  return prefactor * dd::exp_dd_scaled(ctx.dt, inputs) * in.d_coeff;
}

PhaseAngles phase_angles(Complex coeff, double bound) {
  const double mag = std::abs(coeff);
  if (!(bound > 0.0)) {
    if (mag == 0.0) return {std::numbers::pi / 2, 0.0};
    throw Error(Errc::internal_consistency, "nonzero coefficient with zero bound");
  }
  const double ratio = mag / bound;
  if (ratio > 1.0 + kClampTolerance) {
    throw Error(Errc::internal_consistency, "coefficient magnitude exceeds its bound");
  }
  PhaseAngles out;
  out.phi = std::acos(std::min(ratio, 1.0));
  out.theta = mag == 0.0 ? 0.0 : std::arg(coeff);
  return out;
}

double term_bound(const SegmentContext& ctx, std::size_t m) {
  const std::vector<int> idx = decode_term(ctx, m);
  double b = 1.0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    b *= ctx.dt_tilde / static_cast<double>(j + 1) * ctx.channels[static_cast<std::size_t>(idx[j])].weight;
  }
  return b;
}

DysonTerm make_term(const SegmentContext& ctx, std::size_t m, BasisState z) {
  const std::vector<int> idx = decode_term(ctx, m);
  DysonTerm t;
  t.q = static_cast<int>(idx.size());
  t.z = z;
  t.gamma_term = 1.0;
  for (int c : idx) {
    t.channels.push_back(ctx.channels[static_cast<std::size_t>(c)].ref);
    t.gamma_term *= ctx.channels[static_cast<std::size_t>(c)].weight;
  }
  const InteractionInputs in = interaction_inputs(*ctx.h, t.channels, z);
  t.z_path = in.z_path;
  t.xj = in.xs;
  t.coeff = term_coefficient(ctx, in, z);
  t.bound = term_bound(ctx, m);
  const PhaseAngles pa = phase_angles(t.coeff, t.bound);
  t.phi = pa.phi;
  t.theta = pa.theta;
  return t;
}

CMatrix build_segment_unitary(const SegmentContext& ctx) {
  const CoefficientTable table = kernels::coefficient_table(ctx, kernels::Exec::parallel);
  return kernels::accumulate_segment(table, kernels::Exec::parallel);
}

CMatrix build_segment_unitary(const PermExpHamiltonian& h, const Schedule& sched, int w) {
  return build_segment_unitary(make_segment(h, sched, w));
}

CMatrix alt_segment_unitary(const SegmentContext& ctx) {
  const PermExpHamiltonian& h = *ctx.h;
  const std::size_t dim = h.dim();
  const std::size_t terms = ctx.num_terms();
  if (static_cast<double>(terms) * static_cast<double>(dim) > kMaxEnumeratedTerms) {
    throw Error(Errc::unsupported_size, "term enumeration exceeds 1e8");
  }
  const RVector& E = h.h0_diag();
  const double t_next = ctx.t_w + ctx.dt;
  CMatrix u = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  static const Complex kMinusIPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  for (std::size_t m = 0; m < terms; ++m) {
    const std::vector<int> idx = decode_term(ctx, m);
    const std::size_t q = idx.size();
    for (std::size_t z = 0; z < dim; ++z) {
      // y_1 = 0; y_{j+1} = -i (E_{z_j} - E_z) - sum_{l <= j} rate_l.
      std::vector<Complex> ys(q + 1);
      ys[0] = {0.0, 0.0};
      Complex d(1.0, 0.0), rate_sum(0.0, 0.0);
      BasisState cur = static_cast<BasisState>(z);
      const double ez = E(static_cast<Eigen::Index>(z));
      for (std::size_t j = 0; j < q; ++j) {
        const Channel& ch = ctx.channels[static_cast<std::size_t>(idx[j])];
        const auto& et = h.vterms()[static_cast<std::size_t>(ch.ref.perm_index)]
                             .exp_terms[static_cast<std::size_t>(ch.ref.exp_index)];
        cur ^= ch.mask;
        const Complex rate = et.rate(static_cast<Eigen::Index>(cur));
        d *= et.amp(static_cast<Eigen::Index>(cur));
        rate_sum += rate;
        ys[j + 1] = Complex(0.0, -(E(static_cast<Eigen::Index>(cur)) - ez)) - rate_sum;
      }
      if (d == Complex(0.0, 0.0)) continue;
      const Complex c = kMinusIPow[q % 4] * std::exp(t_next * rate_sum) *
                        dd::exp_dd_scaled(ctx.dt, ys) * d * std::exp(Complex(0.0, -ez * ctx.dt));
      u(static_cast<Eigen::Index>(cur), static_cast<Eigen::Index>(z)) += c;
    }
  }
  return u;
}

CMatrix alt_segment_unitary(const PermExpHamiltonian& h, const Schedule& sched, int w) {
  return alt_segment_unitary(make_segment(h, sched, w));
}

}  // namespace permlcu
