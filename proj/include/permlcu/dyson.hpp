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

// Truncated Dyson segments of the interaction-picture propagator with every
// time-ordered integral replaced by a divided difference of exp.
//
// A term of order q is a sequence of channels (i_1,k_1) ... (i_q,k_q) applied
// to |z>, visiting z_1 = z ^ b_{i_1}, ..., z_q. Its matrix element is
//   U[z_q, z] += (-i)^q coeff,
//   coeff = e^{-i t_w (E_z - E_{z_q})} e^{t_w sum_l rate_l} e^{dt[x_1..x_q, 0]} prod_l amp_l,
//   x_j   = i (E_{z_q} - E_{z_{j-1}}) + sum_{l >= j} rate_l,
// where amp_l and rate_l are read at z_l.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "permlcu/pham.hpp"
#include "permlcu/sched.hpp"

namespace permlcu {

/// One (i, k) pair used by a segment, with its LCU weight.
struct Channel {
  ChannelRef ref;
  BasisState mask = 0;
  double lambda = 0.0;  // max_z Re(rate)
  double weight = 0.0;  // Gamma_ik(t_w), possibly rescaled on a clamped step
};

struct SegmentContext {
  const PermExpHamiltonian* h = nullptr;
  int w = 0;
  double t_w = 0.0;
  double dt = 0.0;
  double dt_tilde = 0.0;
  double lambda = 0.0;
  int Q = 0;
  GammaMode mode = GammaMode::exact;
  bool clamped = false;
  std::vector<Channel> channels;
  double gamma_nominal = 0.0;  // Gamma(t_w) from the schedule
  double gamma = 0.0;          // sum of channel weights actually used
  double s_nominal = 0.0;      // sum_q (gamma_nominal dt_tilde)^q / q!
  double s = 0.0;              // sum_q (gamma dt_tilde)^q / q!

  std::size_t num_channels() const { return channels.size(); }
  /// sum_{q <= Q} C^q, with C the channel count.
  std::size_t num_terms() const;
};

/// Context for step w. On a clamped final step with Gamma dt_tilde < ln 2 the
/// weights are scaled up to gamma_tilde so s keeps its nominal value.
SegmentContext make_segment(const PermExpHamiltonian& h, const Schedule& sched, int w);

/// Context for an explicit window, used by tests and fixtures.
SegmentContext make_segment(const PermExpHamiltonian& h, double t_w, double dt, int Q,
                            GammaMode mode = GammaMode::exact);

/// Channel indices (into ctx.channels) of term m, m in [0, num_terms()).
std::vector<int> decode_term(const SegmentContext& ctx, std::size_t m);

struct InteractionInputs {
  std::vector<Complex> xs;          // x_1 .. x_q
  std::vector<BasisState> z_path;   // z_1 .. z_q
  Complex d_coeff{1.0, 0.0};        // prod_l amp_l[z_l]
  Complex rate_sum{0.0, 0.0};       // sum_l rate_l[z_l]
};

InteractionInputs interaction_inputs(const PermExpHamiltonian& h, std::span<const ChannelRef> chans,
                                     BasisState z);

/// Full coefficient of one term (without the (-i)^q factor).
Complex term_coefficient(const SegmentContext& ctx, const InteractionInputs& in, BasisState z);

struct PhaseAngles {
  double phi = 0.0;    // [0, pi/2]
  double theta = 0.0;  // (-pi, pi]
};

/// coeff = bound cos(phi) e^{i theta}. Throws Errc::internal_consistency if
/// |coeff| exceeds bound by more than a relative 1e-9.
PhaseAngles phase_angles(Complex coeff, double bound);

struct DysonTerm {
  int q = 0;
  std::vector<ChannelRef> channels;
  BasisState z = 0;
  std::vector<BasisState> z_path;
  std::vector<Complex> xj;
  Complex coeff;
  double gamma_term = 0.0;  // prod of channel weights
  double bound = 0.0;       // dt_tilde^q / q! * gamma_term
  double phi = 0.0;
  double theta = 0.0;
};

DysonTerm make_term(const SegmentContext& ctx, std::size_t m, BasisState z);

/// dt_tilde^q / q! * prod weights of term m.
double term_bound(const SegmentContext& ctx, std::size_t m);

/// Coefficients of all terms, row m holds the 2^n values over z.
struct CoefficientTable {
  std::size_t num_terms = 0;
  std::size_t dim = 0;
  std::vector<Complex> coeff;          // m * dim + z, includes (-i)^q
  std::vector<BasisState> term_mask;   // XOR of the masks of term m
  std::vector<double> bound;           // per term
};

inline constexpr double kMaxEnumeratedTerms = 1e8;

/// Dense truncated U_I(t_w + dt, t_w).
CMatrix build_segment_unitary(const SegmentContext& ctx);
CMatrix build_segment_unitary(const PermExpHamiltonian& h, const Schedule& sched, int w);

/// Dense U~_I(t_w + dt, t_w) = e^{-i H0 t_{w+1}} U_I e^{i H0 t_w}, assembled
/// from prefix-based inputs y_j = -i (E_{z_{j-1}} - E_z) - sum_{l<j} rate_l.
CMatrix alt_segment_unitary(const SegmentContext& ctx);
CMatrix alt_segment_unitary(const PermExpHamiltonian& h, const Schedule& sched, int w);

}  // namespace permlcu
