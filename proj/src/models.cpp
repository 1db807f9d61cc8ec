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

#include "permlcu/models.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace permlcu::models {
namespace {

using nlohmann::json;

json coeff(Complex amp, Complex rate) {
  return {{"amp", {amp.real(), amp.imag()}}, {"rate", {rate.real(), rate.imag()}}};
}

json single_qubit(double h, json v) {
  json spec;
  spec["n"] = 1;
  spec["h0"] = json::array();
  if (h != 0.0) spec["h0"].push_back({{"coupling", h}, {"z_mask", "1"}});
  spec["v"] = std::move(v);
  return spec;
}

}  // namespace

json oscillating(double h, double gamma, double alpha) {
  // |0><1| = (X + iY)/2 and |1><0| = (X - iY)/2.
  json v = json::array();
  v.push_back({{"pauli", "X"},
               {"coeff", {coeff(gamma / 2, {0.0, -alpha}), coeff(gamma / 2, {0.0, alpha})}}});
  v.push_back({{"pauli", "Y"},
               {"coeff", {coeff({0.0, gamma / 2}, {0.0, -alpha}), coeff({0.0, -gamma / 2}, {0.0, alpha})}}});
  return single_qubit(h, std::move(v));
}

json decay(double h, double gamma, double alpha) {
  json v = json::array();
  v.push_back({{"pauli", "X"}, {"coeff", {coeff(gamma, -alpha)}}});
  return single_qubit(h, std::move(v));
}

json growth(double h, double gamma, double alpha) {
  json v = json::array();
  v.push_back({{"pauli", "X"}, {"coeff", {coeff(gamma, alpha)}}});
  return single_qubit(h, std::move(v));
}

json scalar_coupling(double h, const std::vector<ExpComponent>& components) {
  json c = json::array();
  for (const auto& comp : components) c.push_back(coeff(comp.amp, comp.rate));
  json v = json::array();
  if (!c.empty()) v.push_back({{"pauli", "X"}, {"coeff", std::move(c)}});
  return single_qubit(h, std::move(v));
}

json random_model(int n, int max_masks, int max_k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const BasisState full = (BasisState{1} << n) - 1;

  json spec;
  spec["n"] = n;
  spec["h0"] = json::array();
  for (int q = 0; q < n; ++q) {
    std::string m(static_cast<std::size_t>(n), '0');
    m[static_cast<std::size_t>(q)] = '1';
    spec["h0"].push_back({{"coupling", uniform(-1.0, 1.0)}, {"z_mask", m}});
  }
  if (n >= 2) {
    std::string m(static_cast<std::size_t>(n), '0');
    m[0] = m[1] = '1';
    spec["h0"].push_back({{"coupling", uniform(-0.5, 0.5)}, {"z_mask", m}});
  }

  const int masks_wanted = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, max_masks)));
  std::vector<BasisState> masks;
  while (static_cast<int>(masks.size()) < std::min<int>(masks_wanted, static_cast<int>(full))) {
    const BasisState b = 1 + static_cast<BasisState>(rng() % full);
    if (std::find(masks.begin(), masks.end(), b) == masks.end()) masks.push_back(b);
  }

  json v = json::array();
  for (BasisState b : masks) {
    const bool pair = max_k >= 2 && unit(rng) < 0.5;
    const int strings = 1 + static_cast<int>(rng() % 2);
    const Complex rate = pair ? Complex(-uniform(0.0, 0.5), uniform(0.5, 3.0))
                              : Complex(uniform(-0.5, 0.3), 0.0);
    for (int s = 0; s < strings; ++s) {
      std::string p(static_cast<std::size_t>(n), 'I');
      for (int q = 0; q < n; ++q) {
        const bool x = (b >> q) & 1u;
        const double u = unit(rng);
        p[static_cast<std::size_t>(q)] = x ? (u < 0.5 ? 'X' : 'Y') : (u < 0.3 ? 'Z' : 'I');
      }
      json c = json::array();
      if (pair) {
        const Complex a = std::polar(uniform(0.2, 0.6), uniform(-3.14159, 3.14159));
        c.push_back(coeff(a, rate));
        c.push_back(coeff(std::conj(a), std::conj(rate)));
      } else {
        c.push_back(coeff(uniform(0.2, 0.8) * (unit(rng) < 0.5 ? -1.0 : 1.0), rate));
      }
      v.push_back({{"pauli", p}, {"coeff", std::move(c)}});
    }
  }
  spec["v"] = std::move(v);
  return spec;
}

json random_static(int n, int num_strings, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  static const char kPaulis[] = {'I', 'X', 'Y', 'Z'};
  json spec;
  spec["n"] = n;
  spec["h0"] = json::array();
  json v = json::array();
  for (int s = 0; s < num_strings; ++s) {
    std::string p(static_cast<std::size_t>(n), 'I');
    bool offdiag = false;
    for (int q = 0; q < n; ++q) {
      const char c = kPaulis[rng() % 4];
      p[static_cast<std::size_t>(q)] = c;
      offdiag = offdiag || c == 'X' || c == 'Y';
    }
    if (!offdiag) p[0] = 'X';
    v.push_back({{"pauli", p}, {"coeff", {coeff(unit(rng) - 0.5, 0.0)}}});
  }
  spec["v"] = std::move(v);
  return spec;
}

}  // namespace permlcu::models
