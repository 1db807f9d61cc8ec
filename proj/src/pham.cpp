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

#include "permlcu/pham.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace permlcu {

double ExpTerm::max_amp() const {
  return amp.size() == 0 ? 0.0 : amp.cwiseAbs().maxCoeff();
}

double ExpTerm::max_rate_real() const {
  return rate.size() == 0 ? 0.0 : rate.real().maxCoeff();
}

PermExpHamiltonian::PermExpHamiltonian(int n, std::vector<ZTerm> h0_terms,
                                       std::vector<PermTerm> vterms)
    : n_(n), h0_terms_(std::move(h0_terms)), vterms_(std::move(vterms)) {
  if (n < 1 || n > kMaxQubits) {
    throw Error(Errc::unsupported_size, "qubit count must be in [1, 12], got " + std::to_string(n));
  }
  const std::size_t d = dim();
  const BasisState full = static_cast<BasisState>(d - 1);

  h0_diag_ = RVector::Zero(static_cast<Eigen::Index>(d));
  for (const auto& zt : h0_terms_) {
    if ((zt.z_mask & ~full) != 0) throw Error(Errc::invalid_argument, "H0 Z-mask exceeds qubit count");
    for (std::size_t z = 0; z < d; ++z) {
      const int sign = popcount(static_cast<BasisState>(z) & zt.z_mask) % 2 == 0 ? 1 : -1;
      h0_diag_(static_cast<Eigen::Index>(z)) += sign * zt.coupling;
    }
  }

  std::size_t k_common = 1;
  for (std::size_t i = 0; i < vterms_.size(); ++i) {
    const auto& pt = vterms_[i];
    if ((pt.mask & ~full) != 0) throw Error(Errc::invalid_argument, "permutation mask exceeds qubit count");
    if (pt.mask == 0 && i != 0) throw Error(Errc::invalid_argument, "identity permutation must be term 0");
    for (std::size_t j = 0; j < i; ++j) {
      if (vterms_[j].mask == pt.mask) throw Error(Errc::invalid_argument, "duplicate permutation mask");
    }
    if (pt.exp_terms.empty()) throw Error(Errc::invalid_argument, "permutation term without exponentials");
    for (const auto& et : pt.exp_terms) {
      if (static_cast<std::size_t>(et.amp.size()) != d || static_cast<std::size_t>(et.rate.size()) != d) {
        throw Error(Errc::invalid_argument, "diagonal length must equal 2^n");
      }
      if (!et.amp.allFinite() || !et.rate.allFinite()) {
        throw Error(Errc::invalid_argument, "non-finite amplitude or rate");
      }
    }
    k_common = std::max(k_common, pt.exp_terms.size());
  }
  // Uniform K: pad with zero-amplitude terms.
  for (auto& pt : vterms_) {
    while (pt.exp_terms.size() < k_common) {
      pt.exp_terms.push_back({CVector::Zero(static_cast<Eigen::Index>(d)),
                              CVector::Zero(static_cast<Eigen::Index>(d))});
    }
  }
}

int PermExpHamiltonian::num_offdiagonal() const {
  return static_cast<int>(std::count_if(vterms_.begin(), vterms_.end(),
                                        [](const PermTerm& p) { return p.mask != 0; }));
}

int PermExpHamiltonian::num_exp_terms() const {
  return vterms_.empty() ? 0 : static_cast<int>(vterms_.front().exp_terms.size());
}

int PermExpHamiltonian::max_locality() const {
  int k = 0;
  for (const auto& p : vterms_) k = std::max(k, p.locality());
  return k;
}

int PermExpHamiltonian::h0_locality() const {
  int k = 0;
  for (const auto& z : h0_terms_) k = std::max(k, popcount(z.z_mask));
  return k;
}

std::vector<ChannelRef> PermExpHamiltonian::active_channels() const {
  std::vector<ChannelRef> out;
  for (std::size_t i = 0; i < vterms_.size(); ++i) {
    for (std::size_t k = 0; k < vterms_[i].exp_terms.size(); ++k) {
      if (!vterms_[i].exp_terms[k].is_zero()) out.push_back({static_cast<int>(i), static_cast<int>(k)});
    }
  }
  return out;
}

namespace {

BasisState parse_bitstring(const std::string& s, int n, const char* what) {
  if (static_cast<int>(s.size()) != n) {
    throw Error(Errc::schema, std::string(what) + " must have length n");
  }
  BasisState m = 0;
  for (int i = 0; i < n; ++i) {
    if (s[static_cast<std::size_t>(i)] == '1') {
      m |= BasisState{1} << i;
    } else if (s[static_cast<std::size_t>(i)] != '0') {
      throw Error(Errc::schema, std::string(what) + " must contain only 0 and 1");
    }
  }
  return m;
}

Complex parse_pair(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(Errc::schema, std::string(what) + " must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(Errc::schema, std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

// d(z) for a Pauli string written as (diagonal) * X^mask, indexed by output state.
struct PauliFactor {
  BasisState mask = 0;
  BasisState z_mask = 0;  // positions carrying a (-1)^{z_j} sign (Y or Z)
  int y_count = 0;        // each Y adds a factor -i
};

PauliFactor parse_pauli(const std::string& s, int n) {
  if (static_cast<int>(s.size()) != n) throw Error(Errc::schema, "pauli string must have length n");
  PauliFactor f;
  for (int i = 0; i < n; ++i) {
    const BasisState bit = BasisState{1} << i;
    switch (s[static_cast<std::size_t>(i)]) {
      case 'I': break;
      case 'X': f.mask |= bit; break;
      case 'Y': f.mask |= bit; f.z_mask |= bit; ++f.y_count; break;
      case 'Z': f.z_mask |= bit; break;
      default: throw Error(Errc::schema, "pauli string must use only I, X, Y, Z");
    }
  }
  return f;
}

Complex pauli_diag(const PauliFactor& f, BasisState z) {
  static const Complex kMinusIPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  const double sign = popcount(z & f.z_mask) % 2 == 0 ? 1.0 : -1.0;
  return sign * kMinusIPow[f.y_count % 4];
}

bool same_rate(Complex a, Complex b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= 1e-12 * scale;
}

// V(t) is Hermitian iff d_b(z xor b, t) = conj(d_b(z, t)) for every mask b, z
// and t. Both sides are exponential polynomials, so compare coefficient by
// coefficient after merging equal rates.
void check_hermitian(const std::vector<PermTerm>& vterms, std::size_t dim) {
  double scale = 0.0;
  for (const auto& p : vterms) {
    for (const auto& e : p.exp_terms) scale = std::max(scale, e.max_amp());
  }
  const double tol = 1e-12 * std::max(scale, 1.0);
  using Poly = std::vector<std::pair<Complex, Complex>>;  // (rate, amp)
  auto collect = [&](const PermTerm& p, std::size_t z, bool conjugate) {
    Poly poly;
    for (const auto& e : p.exp_terms) {
      Complex rate = e.rate(static_cast<Eigen::Index>(z));
      Complex amp = e.amp(static_cast<Eigen::Index>(z));
      if (conjugate) {
        rate = std::conj(rate);
        amp = std::conj(amp);
      }
      auto it = std::find_if(poly.begin(), poly.end(),
                             [&](const auto& pr) { return same_rate(pr.first, rate); });
      if (it == poly.end()) {
        poly.emplace_back(rate, amp);
      } else {
        it->second += amp;
      }
    }
    return poly;
  };
  for (const auto& p : vterms) {
    for (std::size_t z = 0; z < dim; ++z) {
      const Poly lhs = collect(p, z ^ p.mask, false);
      const Poly rhs = collect(p, z, true);
      auto covered = [&](const Poly& a, const Poly& b) {
        for (const auto& [rate, amp] : a) {
          Complex other(0.0, 0.0);
          for (const auto& [r2, a2] : b) {
            if (same_rate(rate, r2)) other += a2;
          }
          if (std::abs(amp - other) > tol) return false;
        }
        return true;
      };
      if (!covered(lhs, rhs) || !covered(rhs, lhs)) {
        throw Error(Errc::invalid_argument,
                    "V(t) is not Hermitian: terms must come in conjugate pairs");
      }
    }
  }
}

}  // namespace

PermExpHamiltonian from_pauli_spec(const nlohmann::json& spec) {
  if (!spec.is_object()) throw Error(Errc::schema, "Hamiltonian spec must be a JSON object");
  const auto& jn = require(spec, "n");
  if (!jn.is_number_integer()) throw Error(Errc::schema, "\"n\" must be an integer");
  const int n = jn.get<int>();
  if (n < 1) throw Error(Errc::schema, "\"n\" must be positive");
  if (n > kMaxQubits) {
    throw Error(Errc::unsupported_size, "at most 12 qubits are supported, got " + std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;

  std::vector<ZTerm> h0;
  if (spec.contains("h0")) {
    const auto& jh0 = spec.at("h0");
    if (!jh0.is_array()) throw Error(Errc::schema, "\"h0\" must be an array");
    for (const auto& e : jh0) {
      const auto& c = require(e, "coupling");
      const auto& m = require(e, "z_mask");
      if (!c.is_number() || !m.is_string()) throw Error(Errc::schema, "bad h0 entry");
      h0.push_back({c.get<double>(), parse_bitstring(m.get<std::string>(), n, "z_mask")});
    }
  }

  // Group by (mask, scalar rate); static real diagonal strings fold into H0.
  struct Group {
    BasisState mask;
    std::vector<std::pair<Complex, CVector>> by_rate;
  };
  std::vector<Group> groups;
  if (spec.contains("v")) {
    const auto& jv = spec.at("v");
    if (!jv.is_array()) throw Error(Errc::schema, "\"v\" must be an array");
    for (const auto& e : jv) {
      const auto& jp = require(e, "pauli");
      const auto& jc = require(e, "coeff");
      if (!jp.is_string() || !jc.is_array() || jc.empty()) {
        throw Error(Errc::schema, "v entry needs a pauli string and a nonempty coeff array");
      }
      const PauliFactor f = parse_pauli(jp.get<std::string>(), n);
      for (const auto& c : jc) {
        const Complex amp = parse_pair(require(c, "amp"), "amp");
        const Complex rate = parse_pair(require(c, "rate"), "rate");
        if (!std::isfinite(std::abs(amp)) || !std::isfinite(std::abs(rate))) {
          throw Error(Errc::schema, "non-finite coefficient");
        }
        if (amp == Complex(0.0, 0.0)) continue;
        if (f.mask == 0 && rate == Complex(0.0, 0.0) && amp.imag() == 0.0 && f.y_count == 0) {
          h0.push_back({amp.real(), f.z_mask});
          continue;
        }
        auto git = std::find_if(groups.begin(), groups.end(),
                                [&](const Group& g) { return g.mask == f.mask; });
        if (git == groups.end()) {
          groups.push_back({f.mask, {}});
          git = std::prev(groups.end());
        }
        auto rit = std::find_if(git->by_rate.begin(), git->by_rate.end(),
                                [&](const auto& pr) { return pr.first == rate; });
        if (rit == git->by_rate.end()) {
          git->by_rate.emplace_back(rate, CVector::Zero(static_cast<Eigen::Index>(dim)));
          rit = std::prev(git->by_rate.end());
        }
        for (std::size_t z = 0; z < dim; ++z) {
          rit->second(static_cast<Eigen::Index>(z)) += amp * pauli_diag(f, static_cast<BasisState>(z));
        }
      }
    }
  }

  std::stable_partition(groups.begin(), groups.end(), [](const Group& g) { return g.mask == 0; });
  std::vector<PermTerm> vterms;
  for (const auto& g : groups) {
    PermTerm pt;
    pt.mask = g.mask;
    for (const auto& [rate, amp] : g.by_rate) {
      if (amp.cwiseAbs().maxCoeff() == 0.0) continue;
      pt.exp_terms.push_back({CVector::Constant(static_cast<Eigen::Index>(dim), rate), amp});
    }
    if (!pt.exp_terms.empty()) vterms.push_back(std::move(pt));
  }
  check_hermitian(vterms, dim);
  return PermExpHamiltonian(n, std::move(h0), std::move(vterms));
}

CMatrix eval_V(const PermExpHamiltonian& h, double t) {
  const auto d = static_cast<Eigen::Index>(h.dim());
  CMatrix v = CMatrix::Zero(d, d);
  for (const auto& pt : h.vterms()) {
    for (const auto& et : pt.exp_terms) {
      for (Eigen::Index z = 0; z < d; ++z) {
        const Complex a = et.amp(z);
        if (a == Complex(0.0, 0.0)) continue;
        // Row z (output state), column z xor mask.
        v(z, static_cast<Eigen::Index>(static_cast<BasisState>(z) ^ pt.mask)) += a * std::exp(et.rate(z) * t);
      }
    }
  }
  return v;
}

CMatrix eval_H(const PermExpHamiltonian& h, double t) {
  CMatrix out;
  eval_H_into(h, t, out);
  return out;
}

void eval_H_into(const PermExpHamiltonian& h, double t, CMatrix& out) {
  out = eval_V(h, t);
  for (Eigen::Index z = 0; z < out.rows(); ++z) out(z, z) += h.h0_diag()(z);
}

double lambda_ik(const ExpTerm& term) { return term.max_rate_real(); }

double lambda_max(const PermExpHamiltonian& h) {
  double lam = -std::numeric_limits<double>::infinity();
  for (const auto& pt : h.vterms()) {
    for (const auto& et : pt.exp_terms) {
      if (!et.is_zero()) lam = std::max(lam, lambda_ik(et));
    }
  }
  return std::isfinite(lam) ? lam : 0.0;
}

double gamma_bound(const PermExpHamiltonian& h, double t) {
  double g = 0.0;
  for (const auto& pt : h.vterms()) {
    for (const auto& et : pt.exp_terms) {
      const double a = et.max_amp();
      if (a > 0.0) g += a * std::exp(t * lambda_ik(et));
    }
  }
  return g;
}

double max_term_amplitude(const PermExpHamiltonian& h) {
  double g = 0.0;
  for (const auto& pt : h.vterms()) {
    for (const auto& et : pt.exp_terms) g = std::max(g, et.max_amp());
  }
  return g;
}

PermExpHamiltonian merge_disjoint_exp_terms(const PermExpHamiltonian& h) {
  std::vector<PermTerm> merged;
  for (const auto& pt : h.vterms()) {
    PermTerm out;
    out.mask = pt.mask;
    for (const auto& et : pt.exp_terms) {
      if (et.is_zero()) continue;
      const auto support = (et.amp.array().abs() > 0.0).eval();
      bool placed = false;
      for (auto& slot : out.exp_terms) {
        const auto taken = (slot.amp.array().abs() > 0.0).eval();
        if ((support && taken).any()) continue;
        // Equal growth rates keep Gamma(t) from rising at any t.
        if (lambda_ik(et) != lambda_ik(slot)) continue;
        for (Eigen::Index z = 0; z < et.amp.size(); ++z) {
          if (support(z)) {
            slot.amp(z) = et.amp(z);
            slot.rate(z) = et.rate(z);
          }
        }
        placed = true;
        break;
      }
      if (!placed) out.exp_terms.push_back(et);
    }
    if (!out.exp_terms.empty()) merged.push_back(std::move(out));
  }
  return PermExpHamiltonian(h.num_qubits(), h.h0_terms(), std::move(merged));
}

ExpSumFit exp_sum_fit(const TabulatedFunction& f, int k_target) {
  const std::size_t n = f.values.size();
  if (k_target < 1) throw Error(Errc::invalid_argument, "K_target must be at least 1");
  if (n < 2 || !(f.T > 0.0)) throw Error(Errc::invalid_argument, "need at least two samples on T > 0");
  const int harmonics = (k_target - 1) / 2;
  if (harmonics > static_cast<int>(n - 1) / 2) {
    throw Error(Errc::ill_posed, "K_target exceeds what the sample grid can resolve");
  }
  double fmax = 0.0;
  for (double v : f.values) {
    if (!std::isfinite(v)) throw Error(Errc::invalid_argument, "non-finite sample");
    fmax = std::max(fmax, std::abs(v));
  }

  // Cosine coefficients of the even extension, trapezoid rule on the grid.
  const double last = static_cast<double>(n - 1);
  std::vector<double> coef(static_cast<std::size_t>(harmonics) + 1, 0.0);
  for (int m = 0; m <= harmonics; ++m) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      acc += w * f.values[j] * std::cos(std::numbers::pi * m * static_cast<double>(j) / last);
    }
    coef[static_cast<std::size_t>(m)] = (m == 0 ? 1.0 : 2.0) * acc / last;
  }

  ExpSumFit fit;
  const double prune = 1e-14 * std::max(fmax, 1e-300);
  if (std::abs(coef[0]) > prune) fit.components.push_back({coef[0], 0.0});
  for (int m = 1; m <= harmonics; ++m) {
    const double a = coef[static_cast<std::size_t>(m)];
    if (std::abs(a) <= prune) continue;
    const double omega = std::numbers::pi * m / f.T;
    fit.components.push_back({0.5 * a, Complex(0.0, omega)});
    fit.components.push_back({0.5 * a, Complex(0.0, -omega)});
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double t = f.T * static_cast<double>(j) / last;
    fit.sup_error = std::max(fit.sup_error, std::abs(f.values[j] - eval_exp_sum(fit.components, t)));
  }
  return fit;
}

Complex eval_exp_sum(const std::vector<ExpComponent>& components, double t) {
  Complex acc(0.0, 0.0);
  for (const auto& c : components) acc += c.amp * std::exp(c.rate * t);
  return acc;
}

}  // namespace permlcu
