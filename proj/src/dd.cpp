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

#include "permlcu/dd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

namespace permlcu::dd {
namespace {

using LComplex = std::complex<long double>;

// Inputs whose mean-shifted radius stays below this are summed directly.
constexpr long double kSeriesRadius = 1.0L;
constexpr int kMaxSeriesTerms = 500;
// Truncation threshold relative to the running sum of the majorant series.
constexpr long double kSeriesTolerance = 1e-21L;

void check_inputs(std::span<const Complex> xs) {
  if (xs.empty()) {
    throw Error(Errc::invalid_argument, "divided difference needs at least one input");
  }
  for (const auto& x : xs) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw Error(Errc::invalid_argument, "divided difference input is not finite");
    }
  }
}

struct KahanSum {
  long double re = 0, im = 0, c_re = 0, c_im = 0;

  void add(LComplex v) {
    long double y = v.real() - c_re;
    long double t = re + y;
    c_re = (t - re) - y;
    re = t;
    y = v.imag() - c_im;
    t = im + y;
    c_im = (t - im) - y;
    im = t;
  }
  LComplex value() const { return {re, im}; }
};

// sum_{m>=0} h_m(ys) / (m+q)!  with q = ys.size()-1, h_m the complete
// homogeneous symmetric polynomial. Recurrence over prefixes:
//   G_m[j] = G_m[j-1] + y_j G_{m-1}[j] / (m+q).
// A majorant with |y_j| runs alongside and drives termination.
LComplex series(std::span<const LComplex> ys) {
  const std::size_t n = ys.size();
  const long double q = static_cast<long double>(n - 1);
  long double inv_qfact = 1.0L;
  for (std::size_t k = 2; k < n; ++k) inv_qfact /= static_cast<long double>(k);

  std::vector<LComplex> g(n, LComplex(inv_qfact, 0.0L));
  std::vector<long double> gm(n, inv_qfact);
  std::vector<long double> mag(n);
  for (std::size_t j = 0; j < n; ++j) mag[j] = std::abs(ys[j]);

  KahanSum sum;
  sum.add(g[n - 1]);
  long double majorant = gm[n - 1];
  for (int m = 1; m < kMaxSeriesTerms; ++m) {
    const long double inv = 1.0L / (static_cast<long double>(m) + q);
    LComplex prev(0.0L, 0.0L);
    long double prev_m = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      g[j] = prev + ys[j] * g[j] * inv;
      gm[j] = prev_m + mag[j] * gm[j] * inv;
      prev = g[j];
      prev_m = gm[j];
    }
    sum.add(g[n - 1]);
    majorant += gm[n - 1];
    if (gm[n - 1] <= kSeriesTolerance * majorant) break;
  }
  return sum.value();
}

// Divided difference of exp at inputs ys (already mean-shifted), with
// scaling and squaring of the full triangular table when the spread is large.
LComplex shifted_dd(std::span<const LComplex> ys) {
  const std::size_t n = ys.size();
  long double radius = 0.0L;
  for (const auto& y : ys) radius = std::max(radius, std::abs(y));
  if (radius <= kSeriesRadius) return series(ys);

  const int squarings = static_cast<int>(std::ceil(std::log2(radius / kSeriesRadius)));
  std::vector<LComplex> scaled(ys.begin(), ys.end());
  for (auto& y : scaled) y = LComplex(std::ldexp(y.real(), -squarings), std::ldexp(y.imag(), -squarings));

  // table[i*n + j] = e^{[y_i,...,y_j]} at the current scale, i <= j.
  std::vector<LComplex> table(n * n, LComplex(0.0L, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      table[i * n + j] = series(std::span<const LComplex>(scaled.data() + i, j - i + 1));
    }
  }
  std::vector<LComplex> next(n * n);
  for (int s = 0; s < squarings; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        LComplex acc(0.0L, 0.0L);
        for (std::size_t k = i; k <= j; ++k) acc += table[i * n + k] * table[k * n + j];
        const int shift = -static_cast<int>(j - i);
        next[i * n + j] = LComplex(std::ldexp(acc.real(), shift), std::ldexp(acc.imag(), shift));
      }
    }
    std::swap(table, next);
  }
  return table[n - 1];
}

}  // namespace

Complex exp_dd(std::span<const Complex> xs) {
  check_inputs(xs);
  const std::size_t n = xs.size();
  LComplex mean(0.0L, 0.0L);
  for (const auto& x : xs) mean += LComplex(x.real(), x.imag());
  mean /= static_cast<long double>(n);

  std::vector<LComplex> ys(n);
  for (std::size_t j = 0; j < n; ++j) ys[j] = LComplex(xs[j].real(), xs[j].imag()) - mean;

  const LComplex value = std::exp(mean) * shifted_dd(ys);
  return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

Complex exp_dd_scaled(double t, std::span<const Complex> xs) {
  check_inputs(xs);
  if (!std::isfinite(t)) throw Error(Errc::invalid_argument, "scale t is not finite");
  const std::size_t q = xs.size() - 1;
  if (t == 0.0) return q == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  std::vector<Complex> scaled(xs.begin(), xs.end());
  for (auto& x : scaled) x *= t;
  return std::pow(t, static_cast<int>(q)) * exp_dd(scaled);
}

double exp_dd_bound(std::span<const Complex> xs) {
  check_inputs(xs);
  std::vector<Complex> re(xs.size());
  std::transform(xs.begin(), xs.end(), re.begin(), [](Complex x) { return Complex(x.real(), 0.0); });
  // Rounded outward so that equality cases (all inputs real) still bound.
  constexpr double kOutward = 1.0 + 8.0 * std::numeric_limits<double>::epsilon();
  return exp_dd(re).real() * kOutward;
}

Complex exp_dd_oracle_bidiagonal(std::span<const Complex> xs) {
  check_inputs(xs);
  if (xs.size() > kOracleMaxInputs) {
    throw Error(Errc::unsupported_size, "bidiagonal oracle is capped at 32 inputs");
  }
  using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;
  const auto n = static_cast<Eigen::Index>(xs.size());
  LMatrix z = LMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z(i, i) = LComplex(xs[static_cast<std::size_t>(i)].real(), xs[static_cast<std::size_t>(i)].imag());
    if (i + 1 < n) z(i, i + 1) = LComplex(1.0L, 0.0L);
  }
  const LMatrix e = z.exp();
  const LComplex corner = e(0, n - 1);
  return {static_cast<double>(corner.real()), static_cast<double>(corner.imag())};
}

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n, mapped to [0, 1].
std::vector<double> legendre_nodes(int n, std::vector<double>& weights) {
  std::vector<double> x(static_cast<std::size_t>(n));
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
    weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return x;
}

GaussRule composite_rule(int panels) {
  constexpr int kNodesPerPanel = 8;
  std::vector<double> w8;
  const std::vector<double> x8 = legendre_nodes(kNodesPerPanel, w8);
  GaussRule rule;
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    for (int k = 0; k < kNodesPerPanel; ++k) {
      rule.nodes.push_back((p + x8[static_cast<std::size_t>(k)]) * h);
      rule.weights.push_back(w8[static_cast<std::size_t>(k)] * h);
    }
  }
  return rule;
}

}  // namespace

Complex hermite_genocchi_quadrature(std::span<const Complex> lambdas, int grid) {
  if (lambdas.size() > 3) {
    throw Error(Errc::unsupported_size, "simplex quadrature supports at most 3 dimensions");
  }
  if (grid < 10) throw Error(Errc::invalid_argument, "quadrature grid must be at least 10");
  const std::size_t q = lambdas.size();
  if (q == 0) return {1.0, 0.0};

  // Collapsed coordinates: s_q = u_q, s_j = u_j s_{j+1}; Jacobian prod_{j>=2} s_j.
  const GaussRule rule = composite_rule(grid);
  const std::size_t m = rule.nodes.size();
  std::complex<long double> total(0.0L, 0.0L);
  if (q == 1) {
    for (std::size_t a = 0; a < m; ++a) {
      total += static_cast<long double>(rule.weights[a]) *
               std::complex<long double>(std::exp(lambdas[0] * rule.nodes[a]));
    }
  } else if (q == 2) {
    for (std::size_t a = 0; a < m; ++a) {
      const double s2 = rule.nodes[a];
      const Complex outer = std::exp(lambdas[1] * s2) * (rule.weights[a] * s2);
      Complex inner(0.0, 0.0);
      for (std::size_t b = 0; b < m; ++b) {
        inner += rule.weights[b] * std::exp(lambdas[0] * (rule.nodes[b] * s2));
      }
      total += std::complex<long double>(outer * inner);
    }
  } else {
    for (std::size_t a = 0; a < m; ++a) {
      const double s3 = rule.nodes[a];
      const Complex f3 = std::exp(lambdas[2] * s3) * (rule.weights[a] * s3 * s3);
      for (std::size_t b = 0; b < m; ++b) {
        const double s2 = rule.nodes[b] * s3;
        const Complex f2 = f3 * std::exp(lambdas[1] * s2) * (rule.weights[b] * rule.nodes[b]);
        Complex inner(0.0, 0.0);
        for (std::size_t c = 0; c < m; ++c) {
          inner += rule.weights[c] * std::exp(lambdas[0] * (rule.nodes[c] * s2));
        }
        total += std::complex<long double>(f2 * inner);
      }
    }
  }
  return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

}  // namespace permlcu::dd
