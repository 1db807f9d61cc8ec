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

// H(t) = H0 + V(t) with H0 static and diagonal, and
//   V(t) = sum_i D_i(t) P_i,   D_i(t) = sum_k diag(amp_ik * exp(rate_ik t)),
// where P_i |z> = |z xor mask_i>. Diagonal entries of D_i are indexed by the
// output (permuted) state.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "permlcu/common.hpp"

namespace permlcu {

inline constexpr int kMaxQubits = 12;

struct ExpTerm {
  CVector rate;  // 1/time, one entry per basis state
  CVector amp;   // energy

  /// max_z |amp_z|
  double max_amp() const;
  /// max_z Re(rate_z)
  double max_rate_real() const;
  bool is_zero() const { return max_amp() == 0.0; }
};

struct PermTerm {
  BasisState mask = 0;
  std::vector<ExpTerm> exp_terms;

  int locality() const { return popcount(mask); }
};

struct ZTerm {
  double coupling = 0.0;
  BasisState z_mask = 0;
};

/// One (i, k) pair of the expansion with a nonzero amplitude somewhere.
struct ChannelRef {
  int perm_index = 0;
  int exp_index = 0;
};

class PermExpHamiltonian {
 public:
  PermExpHamiltonian() = default;
  PermExpHamiltonian(int n, std::vector<ZTerm> h0_terms, std::vector<PermTerm> vterms);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }

  const RVector& h0_diag() const { return h0_diag_; }
  const std::vector<ZTerm>& h0_terms() const { return h0_terms_; }
  const std::vector<PermTerm>& vterms() const { return vterms_; }

  /// Number of distinct nonzero permutation masks.
  int num_offdiagonal() const;
  /// Size of the permutation index set (includes mask 0 when present).
  int num_perm_terms() const { return static_cast<int>(vterms_.size()); }
  /// Common exponential-sum length after zero padding.
  int num_exp_terms() const;
  /// Largest popcount over permutation masks.
  int max_locality() const;
  /// Largest popcount over H0 Z-masks.
  int h0_locality() const;

  /// Pairs (i, k) whose amplitude is not identically zero.
  std::vector<ChannelRef> active_channels() const;

 private:
  int n_ = 0;
  RVector h0_diag_;
  std::vector<ZTerm> h0_terms_;
  std::vector<PermTerm> vterms_;
};

/// Parses a HamiltonianSpec document:
///   {"n": int,
///    "h0": [{"coupling": float, "z_mask": "bitstring"}],
///    "v":  [{"pauli": "IXYZ...", "coeff": [{"amp": [re, im], "rate": [re, im]}]}]}
/// Character i of a bitstring or Pauli string refers to qubit i (bit i of z).
/// Throws Errc::schema on malformed input, Errc::invalid_argument for a
/// non-Hermitian V(t), Errc::unsupported_size for n > 12.
PermExpHamiltonian from_pauli_spec(const nlohmann::json& spec);

/// Dense V(t).
CMatrix eval_V(const PermExpHamiltonian& h, double t);
/// Dense H(t) = diag(E) + V(t).
CMatrix eval_H(const PermExpHamiltonian& h, double t);
/// Writes H(t) into a preallocated dim x dim matrix.
void eval_H_into(const PermExpHamiltonian& h, double t, CMatrix& out);

/// max_z Re(rate) of one term.
double lambda_ik(const ExpTerm& term);
/// max over nonzero ExpTerms of lambda_ik; 0 when V is empty.
double lambda_max(const PermExpHamiltonian& h);
/// Gamma(t) = sum_{i,k} ||amp_ik||_max exp(t lambda_ik).
double gamma_bound(const PermExpHamiltonian& h, double t);
/// Largest ||amp_ik||_max over all terms.
double max_term_amplitude(const PermExpHamiltonian& h);

/// Merges ExpTerms of one permutation whose amplitude supports are disjoint
/// into a single term with per-entry rates. Leaves V(t) unchanged and never
/// increases Gamma(t).
PermExpHamiltonian merge_disjoint_exp_terms(const PermExpHamiltonian& h);

/// Samples of a real function on the uniform grid t_j = j T / (N - 1).
struct TabulatedFunction {
  double T = 0.0;
  std::vector<double> values;
};

struct ExpComponent {
  Complex amp;
  Complex rate;
};

struct ExpSumFit {
  std::vector<ExpComponent> components;
  double sup_error = 0.0;  // max over the sample grid of |f - fit|
};

/// Truncated Fourier series of the even extension of f on period 2T, using
/// harmonics |m| <= (K_target - 1) / 2 (rates i pi m / T). Harmonics with
/// negligible amplitude are dropped. Throws Errc::ill_posed if the harmonics
/// exceed the sample resolution.
ExpSumFit exp_sum_fit(const TabulatedFunction& f, int k_target);

/// Evaluates sum_c amp_c exp(rate_c t).
Complex eval_exp_sum(const std::vector<ExpComponent>& components, double t);

}  // namespace permlcu
