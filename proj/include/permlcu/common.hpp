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

#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace permlcu {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Basis-state index of an n-qubit register; bit i is qubit i.
using BasisState = std::uint32_t;

inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr Complex kI{0.0, 1.0};

enum class Errc {
  invalid_argument,
  unsupported_size,
  ill_posed,
  internal_consistency,
  stiffness,
  precondition,
  schema,
  tolerance,
};

const char* to_string(Errc code);

/// Single exception type for the library; the code drives CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline int popcount(BasisState x) { return __builtin_popcount(x); }

/// Spectral norm (largest singular value).
double spectral_norm(const CMatrix& m);

/// Largest entry magnitude.
double max_norm(const CMatrix& m);

}  // namespace permlcu
