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

#include "permlcu/lcu.hpp"

#include <cmath>
#include <sstream>

namespace permlcu {
namespace {

constexpr double kPrepDrift = 1e-8;
constexpr double kPreconditionTol = 1e-12;

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::vector<Complex> householder_vector(const std::vector<Complex>& prep) {
  // v proportional to e_0 - prep; prep_0 is real and positive, so B e_0 = prep.
  std::vector<Complex> v(prep.size());
  for (std::size_t a = 0; a < prep.size(); ++a) v[a] = -prep[a];
  v[0] += 1.0;
  double nrm = 0.0;
  for (const auto& x : v) nrm += std::norm(x);
  nrm = std::sqrt(nrm);
  if (nrm == 0.0) {
    // prep == e_0: B is the identity, encoded as v = 0.
    return std::vector<Complex>(prep.size(), Complex(0.0, 0.0));
  }
  for (auto& x : v) x /= nrm;
  return v;
}

void check_prep(const std::vector<Complex>& prep) {
  double total = 0.0;
  for (const auto& x : prep) total += std::norm(x);
  if (std::abs(total - 1.0) > kPrepDrift) {
    throw Error(Errc::internal_consistency, "preparation amplitudes are not normalized");
  }
}

void dense_blocks(const LcuProgram& prog, Statevector& psi, bool adjoint) {
  const auto d = static_cast<Eigen::Index>(prog.dim);
  for (std::size_t a = 0; a < prog.ancilla_dim; ++a) {
    Eigen::Map<CVector> blk(psi.amps.data() + a * prog.dim, d);
    const CVector tmp = adjoint ? (prog.blocks[a].adjoint() * blk).eval() : (prog.blocks[a] * blk).eval();
    blk = tmp;
  }
}

}  // namespace

double RegisterLayout::ancilla_dim() const {
  return std::pow(static_cast<double>(dim_i), Q) * std::pow(static_cast<double>(dim_k), Q) * 2.0;
}

RegisterLayout register_layout(const PermExpHamiltonian& h, int Q) {
  return {Q, h.num_perm_terms() + 1, std::max(1, h.num_exp_terms()), h.num_qubits()};
}

Statevector Statevector::with_system(std::size_t ancilla_dim, const CVector& system) {
  Statevector sv;
  sv.ancilla_dim = ancilla_dim;
  sv.dim = static_cast<std::size_t>(system.size());
  sv.amps.assign(ancilla_dim * sv.dim, Complex(0.0, 0.0));
  for (std::size_t z = 0; z < sv.dim; ++z) sv.amps[z] = system(static_cast<Eigen::Index>(z));
  return sv;
}

double Statevector::norm() const {
  double acc = 0.0;
  for (const auto& x : amps) acc += std::norm(x);
  return std::sqrt(acc);
}

CVector Statevector::system_block() const {
  CVector out(static_cast<Eigen::Index>(dim));
  for (std::size_t z = 0; z < dim; ++z) out(static_cast<Eigen::Index>(z)) = amps[z];
  return out;
}

double Statevector::off_zero_norm() const {
  double acc = 0.0;
  for (std::size_t i = dim; i < amps.size(); ++i) acc += std::norm(amps[i]);
  return std::sqrt(acc);
}

LcuProgram make_program(const SegmentContext& ctx, const CoefficientTable& table) {
  LcuProgram prog;
  prog.dim = table.dim;
  prog.ancilla_dim = 2 * table.num_terms;
  double s = 0.0;
  for (double b : table.bound) s += b;
  if (std::abs(s - ctx.s) > 1e-12 * ctx.s) {
    throw Error(Errc::internal_consistency, "term bounds do not add up to s");
  }
  prog.s = s;
  prog.prep.resize(prog.ancilla_dim);
  prog.phases.resize(prog.ancilla_dim * prog.dim);
  prog.masks.resize(prog.ancilla_dim);
  for (std::size_t m = 0; m < table.num_terms; ++m) {
    const double amp = std::sqrt(table.bound[m] / (2.0 * s));
    prog.prep[2 * m] = amp;
    prog.prep[2 * m + 1] = amp;
    prog.masks[2 * m] = prog.masks[2 * m + 1] = table.term_mask[m];
    const std::size_t q = decode_term(ctx, m).size();
    for (std::size_t z = 0; z < prog.dim; ++z) {
      // The table carries (-i)^q; strip it so the angles describe the coefficient.
      const Complex raw = table.coeff[m * prog.dim + z] * kIPow[q % 4];
      const PhaseAngles pa = phase_angles(raw, table.bound[m]);
      const Complex base = std::conj(kIPow[q % 4]) * std::polar(1.0, pa.theta);
      prog.phases[(2 * m) * prog.dim + z] = base * std::polar(1.0, pa.phi);
      prog.phases[(2 * m + 1) * prog.dim + z] = base * std::polar(1.0, -pa.phi);
    }
  }
  check_prep(prog.prep);
  prog.householder = householder_vector(prog.prep);
  return prog;
}

LcuProgram make_dense_program(const std::vector<double>& weights, const std::vector<CMatrix>& unitaries) {
  if (weights.empty() || weights.size() != unitaries.size()) {
    throw Error(Errc::invalid_argument, "need one weight per unitary");
  }
  LcuProgram prog;
  prog.dim = static_cast<std::size_t>(unitaries.front().rows());
  prog.ancilla_dim = weights.size();
  prog.s = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(Errc::invalid_argument, "weights must be positive");
    prog.s += w;
  }
  for (const auto& u : unitaries) {
    if (static_cast<std::size_t>(u.rows()) != prog.dim || u.rows() != u.cols()) {
      throw Error(Errc::invalid_argument, "unitaries must share one square shape");
    }
  }
  prog.prep.resize(weights.size());
  for (std::size_t j = 0; j < weights.size(); ++j) prog.prep[j] = std::sqrt(weights[j] / prog.s);
  prog.blocks = unitaries;
  check_prep(prog.prep);
  prog.householder = householder_vector(prog.prep);
  return prog;
}

double s_from_prep(const LcuProgram& prog, double weight0) {
  const double p0 = std::norm(prog.prep.front());
  return prog.dense() ? weight0 / p0 : 1.0 / (2.0 * p0);
}

void prepare_B(const LcuProgram& prog, Statevector& psi) {
  kernels::apply_householder(prog.householder, prog.dim, psi.amps, prog.exec);
}

void apply_Vc(const LcuProgram& prog, Statevector& psi) {
  if (prog.dense()) {
    dense_blocks(prog, psi, false);
    return;
  }
  std::vector<Complex> out(psi.amps.size());
  kernels::apply_controlled(prog.phases, prog.masks, prog.dim, psi.amps, out, prog.exec);
  psi.amps.swap(out);
}

void apply_Vc_adjoint(const LcuProgram& prog, Statevector& psi) {
  if (prog.dense()) {
    dense_blocks(prog, psi, true);
    return;
  }
  std::vector<Complex> out(psi.amps.size());
  kernels::apply_controlled_adjoint(prog.phases, prog.masks, prog.dim, psi.amps, out, prog.exec);
  psi.amps.swap(out);
}

void apply_W(const LcuProgram& prog, Statevector& psi) {
  prepare_B(prog, psi);
  apply_Vc(prog, psi);
  prepare_B(prog, psi);
}

void apply_W_adjoint(const LcuProgram& prog, Statevector& psi) {
  prepare_B(prog, psi);
  apply_Vc_adjoint(prog, psi);
  prepare_B(prog, psi);
}

void apply_R(Statevector& psi) {
  for (std::size_t z = 0; z < psi.dim; ++z) psi.amps[z] = -psi.amps[z];
}

void apply_A(const LcuProgram& prog, Statevector& psi) {
  if (psi.ancilla_dim != prog.ancilla_dim || psi.dim != prog.dim) {
    throw Error(Errc::invalid_argument, "state layout does not match the program");
  }
  if (psi.off_zero_norm() > kPreconditionTol * std::max(1.0, psi.norm())) {
    throw Error(Errc::precondition, "ancilla must start in |0>");
  }
  apply_W(prog, psi);
  apply_R(psi);
  apply_W_adjoint(prog, psi);
  apply_R(psi);
  apply_W(prog, psi);
  for (auto& x : psi.amps) x = -x;
}

void apply_H0_phase(const PermExpHamiltonian& h, double t, CVector& psi) {
  const RVector& E = h.h0_diag();
  for (Eigen::Index z = 0; z < psi.size(); ++z) psi(z) *= std::exp(Complex(0.0, -E(z) * t));
}

RunResult run_full(const PermExpHamiltonian& h, double T, double eps, const CVector& psi_system,
                   const RunOptions& opts) {
  if (static_cast<std::size_t>(psi_system.size()) != h.dim()) {
    throw Error(Errc::invalid_argument, "initial state has the wrong dimension");
  }
  if (std::abs(psi_system.norm() - 1.0) > 1e-10) throw Error(Errc::invalid_argument, "initial state must be normalized");

  RunResult res;
  res.schedule = build_schedule(h, T, eps, opts.mode);
  const Schedule& sched = res.schedule;
  CVector psi = psi_system;
  const double limit = 10.0 * eps / sched.r;

  for (int w = 0; w < sched.r; ++w) {
    const SegmentContext ctx = make_segment(h, sched, w);
    SegmentReport rep;
    rep.w = w;
    rep.t = ctx.t_w;
    rep.dt = ctx.dt;
    rep.s = ctx.s;
    rep.s_nominal = ctx.s_nominal;
    rep.clamped = ctx.clamped;
    if (ctx.channels.empty()) {
      // No interaction: the segment is the identity.
      rep.s = rep.s_nominal = 1.0;
      rep.terms = 1;
      res.segments.push_back(rep);
      continue;
    }
    const CoefficientTable table = kernels::coefficient_table(ctx, opts.exec);
    LcuProgram prog = make_program(ctx, table);
    prog.exec = opts.exec;
    rep.terms = table.num_terms;

    Statevector sv = Statevector::with_system(prog.ancilla_dim, psi);
    apply_A(prog, sv);
    const CVector out = sv.system_block();
    const CMatrix useg = kernels::accumulate_segment(table, opts.exec);
    rep.residual = (out - useg * psi).norm();
    const double kept = out.squaredNorm();
    rep.deficit = 1.0 - kept;
    res.total_deficit += rep.deficit;
    res.max_residual = std::max(res.max_residual, rep.residual);
    res.segments.push_back(rep);
    if (opts.check_residuals && rep.residual > limit) {
      std::ostringstream msg;
      msg << "segment " << w << " residual " << rep.residual << " exceeds 10 eps / r = " << limit;
      throw Error(Errc::tolerance, msg.str());
    }
    if (!(kept > 0.0)) throw Error(Errc::internal_consistency, "projection removed the whole state");
    psi = out / std::sqrt(kept);
  }
  apply_H0_phase(h, T, psi);
  res.final_state = psi;
  return res;
}

}  // namespace permlcu
