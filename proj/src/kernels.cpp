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

#include "permlcu/kernels.hpp"

#include <omp.h>

#include <cstdint>

namespace permlcu::kernels {
namespace {

const Complex kMinusIPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};

void fill_term(const SegmentContext& ctx, std::size_t m, CoefficientTable& t) {
  const std::vector<int> idx = decode_term(ctx, m);
  std::vector<ChannelRef> refs;
  BasisState mask = 0;
  for (int c : idx) {
    refs.push_back(ctx.channels[static_cast<std::size_t>(c)].ref);
    mask ^= ctx.channels[static_cast<std::size_t>(c)].mask;
  }
  t.term_mask[m] = mask;
  t.bound[m] = term_bound(ctx, m);
  const Complex sign = kMinusIPow[idx.size() % 4];
  for (std::size_t z = 0; z < t.dim; ++z) {
    const InteractionInputs in = interaction_inputs(*ctx.h, refs, static_cast<BasisState>(z));
    t.coeff[m * t.dim + z] = in.d_coeff == Complex(0.0, 0.0)
                                 ? Complex(0.0, 0.0)
                                 : sign * term_coefficient(ctx, in, static_cast<BasisState>(z));
  }
}

CoefficientTable empty_table(const SegmentContext& ctx) {
  CoefficientTable t;
  t.num_terms = ctx.num_terms();
  t.dim = ctx.h->dim();
  if (static_cast<double>(t.num_terms) * static_cast<double>(t.dim) > kMaxEnumeratedTerms) {
    throw Error(Errc::unsupported_size, "term enumeration exceeds 1e8");
  }
  t.coeff.assign(t.num_terms * t.dim, Complex(0.0, 0.0));
  t.term_mask.assign(t.num_terms, 0);
  t.bound.assign(t.num_terms, 0.0);
  return t;
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

CoefficientTable coefficient_table(const SegmentContext& ctx, Exec exec) {
  CoefficientTable t = empty_table(ctx);
  const auto n = static_cast<std::int64_t>(t.num_terms);
  if (exec == Exec::serial) {
    for (std::int64_t m = 0; m < n; ++m) fill_term(ctx, static_cast<std::size_t>(m), t);
    return t;
  }
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t m = 0; m < n; ++m) fill_term(ctx, static_cast<std::size_t>(m), t);
  return t;
}

CMatrix accumulate_segment(const CoefficientTable& table, Exec exec) {
  const auto dim = static_cast<Eigen::Index>(table.dim);
  CMatrix u = CMatrix::Zero(dim, dim);
  auto column = [&](Eigen::Index z) {
    for (std::size_t m = 0; m < table.num_terms; ++m) {
      const Complex c = table.coeff[m * table.dim + static_cast<std::size_t>(z)];
      u(static_cast<Eigen::Index>(static_cast<BasisState>(z) ^ table.term_mask[m]), z) += c;
    }
  };
  if (exec == Exec::serial) {
    for (Eigen::Index z = 0; z < dim; ++z) column(z);
    return u;
  }
#pragma omp parallel for schedule(static)
  for (Eigen::Index z = 0; z < dim; ++z) column(z);
  return u;
}

void apply_controlled(std::span<const Complex> phases, std::span<const BasisState> mask,
                      std::size_t dim, std::span<const Complex> in, std::span<Complex> out, Exec exec) {
  const auto blocks = static_cast<std::int64_t>(in.size() / dim);
  auto block = [&](std::int64_t a) {
    const std::size_t base = static_cast<std::size_t>(a) * dim;
    const BasisState b = mask[static_cast<std::size_t>(a)];
    for (std::size_t z = 0; z < dim; ++z) out[base + (z ^ b)] = phases[base + z] * in[base + z];
  };
  if (exec == Exec::serial) {
    for (std::int64_t a = 0; a < blocks; ++a) block(a);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < blocks; ++a) block(a);
}

void apply_controlled_adjoint(std::span<const Complex> phases, std::span<const BasisState> mask,
                              std::size_t dim, std::span<const Complex> in, std::span<Complex> out,
                              Exec exec) {
  const auto blocks = static_cast<std::int64_t>(in.size() / dim);
  auto block = [&](std::int64_t a) {
    const std::size_t base = static_cast<std::size_t>(a) * dim;
    const BasisState b = mask[static_cast<std::size_t>(a)];
    for (std::size_t z = 0; z < dim; ++z) out[base + z] = std::conj(phases[base + z]) * in[base + (z ^ b)];
  };
  if (exec == Exec::serial) {
    for (std::int64_t a = 0; a < blocks; ++a) block(a);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t a = 0; a < blocks; ++a) block(a);
}

void apply_householder(std::span<const Complex> v, std::size_t dim, std::span<Complex> amps, Exec exec) {
  const std::size_t na = v.size();
  auto column = [&](std::int64_t z) {
    Complex dot(0.0, 0.0);
    for (std::size_t a = 0; a < na; ++a) dot += std::conj(v[a]) * amps[a * dim + static_cast<std::size_t>(z)];
    if (dot == Complex(0.0, 0.0)) return;
    dot *= 2.0;
    for (std::size_t a = 0; a < na; ++a) amps[a * dim + static_cast<std::size_t>(z)] -= v[a] * dot;
  };
  const auto d = static_cast<std::int64_t>(dim);
  if (exec == Exec::serial) {
    for (std::int64_t z = 0; z < d; ++z) column(z);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t z = 0; z < d; ++z) column(z);
}

}  // namespace permlcu::kernels
