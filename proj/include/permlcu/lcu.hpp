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

// Statevector simulation of one LCU segment and of the whole evolution.
//
// The ancilla is stored compactly: only basis states that the preparation can
// reach are kept. Term m of a segment (an order q and q channel choices) and
// the sign bit x form ancilla index a = 2 m + x, with a = 0 the all-zero
// register. Amplitudes are ancilla-major: amps[a * 2^n + z].
//
//   B    Householder reflection exchanging |0> and |psi0>
//   V_c  block a: |z> -> (-i)^q e^{i(theta +- phi)} |z ^ mask_m>
//   W    = B V_c B,  R = 1 - 2|0><0|,  A = -W R W^dagger R W

#pragma once

#include <cstdint>
#include <vector>

#include "permlcu/dyson.hpp"
#include "permlcu/kernels.hpp"
#include "permlcu/sched.hpp"

namespace permlcu {

/// Size of the register the circuit would use, for reporting.
struct RegisterLayout {
  int Q = 0;
  int dim_i = 0;  // permutation indices plus an idle value
  int dim_k = 0;
  int system_qubits = 0;

  /// dim_i^Q dim_k^Q 2
  double ancilla_dim() const;
};

RegisterLayout register_layout(const PermExpHamiltonian& h, int Q);

struct Statevector {
  std::size_t ancilla_dim = 0;
  std::size_t dim = 0;
  std::vector<Complex> amps;

  /// |0>_anc (x) system.
  static Statevector with_system(std::size_t ancilla_dim, const CVector& system);
  double norm() const;
  /// Ancilla-zero block.
  CVector system_block() const;
  /// Norm of everything outside the ancilla-zero block.
  double off_zero_norm() const;
};

struct LcuProgram {
  std::size_t dim = 0;
  std::size_t ancilla_dim = 0;
  double s = 0.0;
  std::vector<Complex> prep;         // B |0>
  std::vector<Complex> householder;  // unit vector v, B = 1 - 2 v v^dagger
  // Structured V_c (permutation and diagonal phase per block) ...
  std::vector<Complex> phases;
  std::vector<BasisState> masks;
  // ... or an arbitrary unitary per block.
  std::vector<CMatrix> blocks;
  kernels::Exec exec = kernels::Exec::parallel;

  bool dense() const { return !blocks.empty(); }
};

/// Program for one segment from its coefficient table.
LcuProgram make_program(const SegmentContext& ctx, const CoefficientTable& table);

/// Program for sum_j weights_j U_j with arbitrary unitary blocks.
LcuProgram make_dense_program(const std::vector<double>& weights, const std::vector<CMatrix>& unitaries);

/// s recovered from the preparation amplitudes: 1 / (2 |prep_0|^2) for
/// structured programs, 1 / |prep_0|^2 times weight_0 for dense ones.
double s_from_prep(const LcuProgram& prog, double weight0 = 1.0);

void prepare_B(const LcuProgram& prog, Statevector& psi);
void apply_Vc(const LcuProgram& prog, Statevector& psi);
void apply_Vc_adjoint(const LcuProgram& prog, Statevector& psi);
void apply_W(const LcuProgram& prog, Statevector& psi);
void apply_W_adjoint(const LcuProgram& prog, Statevector& psi);
void apply_R(Statevector& psi);
/// Throws Errc::precondition if the ancilla is not in |0>.
void apply_A(const LcuProgram& prog, Statevector& psi);

/// Multiplies system amplitude z by e^{-i E_z t}.
void apply_H0_phase(const PermExpHamiltonian& h, double t, CVector& psi);

struct SegmentReport {
  int w = 0;
  double t = 0.0;
  double dt = 0.0;
  double s = 0.0;
  double s_nominal = 0.0;
  bool clamped = false;
  double residual = 0.0;  // || P A |0>|psi> - |0> U_seg |psi> ||
  double deficit = 0.0;   // 1 - || P A |0>|psi> ||^2
  std::size_t terms = 0;
};

struct RunOptions {
  GammaMode mode = GammaMode::exact;
  bool check_residuals = true;  // abort when a residual exceeds 10 eps / r
  kernels::Exec exec = kernels::Exec::parallel;
};

struct RunResult {
  CVector final_state;
  Schedule schedule;
  std::vector<SegmentReport> segments;
  double total_deficit = 0.0;
  double max_residual = 0.0;
};

/// Whole evolution: for each segment prepare, run A, project the ancilla to
/// |0> and renormalize; finally apply e^{-i H0 T}.
RunResult run_full(const PermExpHamiltonian& h, double T, double eps, const CVector& psi_system,
                   const RunOptions& opts = {});

}  // namespace permlcu
