// Copyright 2026 The sicmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sicmeas/gbv.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

#include "sicmeas/kernels.hpp"

namespace sicmeas::gbv {
namespace {

std::vector<std::uint32_t> build_monomials(int n) {
  if (n == 3) {
    // positions: 0 = alpha, 1 = a, 2 = a'
    return {0b010, 0b100, 0b110, 0b011, 0b101, 0b111, 0b001};
  }
  std::vector<std::uint32_t> out;
  out.reserve(frame_dim(n));
  for (int degree = 1; degree <= n; ++degree) {
    // Lexicographic combinations of `degree` positions out of n.
    std::vector<int> pos(static_cast<std::size_t>(degree));
    std::iota(pos.begin(), pos.end(), 0);
    while (true) {
      std::uint32_t mask = 0;
      for (int p : pos) mask |= 1u << p;
      out.push_back(mask);
      int k = degree - 1;
      while (k >= 0 && pos[static_cast<std::size_t>(k)] == n - degree + k) --k;
      if (k < 0) break;
      ++pos[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < degree; ++j) pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

// Position mask -> mask over bits of the configuration index.
std::uint32_t index_mask(int n, std::uint32_t position_mask) {
  std::uint32_t out = 0;
  for (int i = 0; i < n; ++i) {
    if (position_mask & (1u << i)) out |= 1u << (n - 1 - i);
  }
  return out;
}

double sign_of(std::uint32_t index_bits, std::uint32_t mask) {
  return (std::popcount(index_bits & mask) & 1) ? -1.0 : 1.0;
}

void check_bits(int n) { (void)frame_dim(n); }

}  // namespace

std::size_t frame_dim(int n_bits) {
  if (n_bits < 1 || n_bits > kMaxBits) {
    throw DomainError("n_bits must be in [1, " + std::to_string(kMaxBits) + "], got " + std::to_string(n_bits));
  }
  return (std::size_t{1} << n_bits) - 1;
}

const std::vector<std::uint32_t>& monomials(int n_bits) {
  check_bits(n_bits);
  static std::array<std::vector<std::uint32_t>, kMaxBits + 1> cache;
  static std::array<std::once_flag, kMaxBits + 1> once;
  const auto n = static_cast<std::size_t>(n_bits);
  std::call_once(once[n], [&] { cache[n] = build_monomials(n_bits); });
  return cache[n];
}

std::vector<int> config_bits(int n_bits, std::size_t index) {
  if (index >= num_configs(n_bits)) throw std::out_of_range("configuration index out of range");
  std::vector<int> bits(static_cast<std::size_t>(n_bits));
  for (int i = 0; i < n_bits; ++i) bits[static_cast<std::size_t>(i)] = (index >> (n_bits - 1 - i)) & 1u ? -1 : 1;
  return bits;
}

std::size_t config_index(std::span<const int> bits) {
  const int n = static_cast<int>(bits.size());
  check_bits(n);
  std::size_t index = 0;
  for (int i = 0; i < n; ++i) {
    const int b = bits[static_cast<std::size_t>(i)];
    if (b != 1 && b != -1) throw DomainError("bits must be +1 or -1");
    if (b == -1) index |= std::size_t{1} << (n - 1 - i);
  }
  return index;
}

BitFrameVec frame_vector(int n_bits, std::span<const int> bits) {
  if (static_cast<int>(bits.size()) != n_bits) throw DomainError("bit tuple length does not match n_bits");
  const std::size_t index = config_index(bits);
  return {n_bits, std::vector<int>(bits.begin(), bits.end()), frame_vector(n_bits, index)};
}

Eigen::VectorXd frame_vector(int n_bits, std::size_t index) {
  const std::size_t dim = frame_dim(n_bits);
  if (index > dim) throw std::out_of_range("configuration index out of range");
  const auto& mons = monomials(n_bits);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    v[static_cast<Eigen::Index>(k)] = scale * sign_of(static_cast<std::uint32_t>(index), index_mask(n_bits, mons[k]));
  }
  return v;
}

Eigen::MatrixXd frame_matrix(int n_bits) {
  const std::size_t n = num_configs(n_bits);
  Eigen::MatrixXd f(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n));
  for (std::size_t x = 0; x < n; ++x) f.col(static_cast<Eigen::Index>(x)) = frame_vector(n_bits, x);
  return f;
}

BitDist::BitDist(int n_bits, std::vector<double> p) : n_bits_(n_bits), p_(std::move(p)) {
  if (p_.size() != num_configs(n_bits)) throw DomainError("distribution length must be 2^n_bits");
  if (!std::all_of(p_.begin(), p_.end(), [](double v) { return std::isfinite(v); })) {
    throw DomainError("distribution entries must be finite");
  }
  const double sum = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-10) throw DomainError("distribution must sum to 1, got " + std::to_string(sum));
}

BitDist BitDist::uniform(int n_bits) {
  const std::size_t n = num_configs(n_bits);
  return BitDist(n_bits, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

BitDist BitDist::point_mass(int n_bits, std::size_t index) {
  std::vector<double> p(num_configs(n_bits), 0.0);
  p.at(index) = 1.0;
  return BitDist(n_bits, std::move(p));
}

double BitDist::min_entry() const { return kernels::min_entry(p_); }

Gbv::Gbv(int n_bits, Eigen::VectorXd w) : n_bits_(n_bits), w_(std::move(w)) {
  if (static_cast<std::size_t>(w_.size()) != frame_dim(n_bits)) throw DomainError("GBV length must be 2^n_bits - 1");
}

Gbv gbv_from_dist(const BitDist& p) {
  const int n = p.n_bits();
  const std::size_t dim = frame_dim(n);
  // Walsh-Hadamard coefficients are the correlators <prod_{i in S} b_i>.
  std::vector<double> corr = p.values();
  kernels::fwht(corr);
  const auto& mons = monomials(n);
  const double scale = std::sqrt(static_cast<double>(dim));
  Eigen::VectorXd w(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) w[static_cast<Eigen::Index>(k)] = scale * corr[index_mask(n, mons[k])];
  return Gbv(n, std::move(w));
}

DecodedDist dist_from_gbv(const Gbv& w) {
  const int n = w.n_bits();
  const std::size_t dim = frame_dim(n);
  const auto& mons = monomials(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<double> buf(dim + 1, 0.0);
  buf[0] = 1.0;
  for (std::size_t k = 0; k < dim; ++k) buf[index_mask(n, mons[k])] = scale * w.w()[static_cast<Eigen::Index>(k)];
  kernels::fwht(buf);
  const double norm = 1.0 / static_cast<double>(dim + 1);
  for (double& v : buf) v *= norm;
  BitDist dist(n, std::move(buf));
  const bool nonpositive = !dist.is_nonnegative();
  return {std::move(dist), nonpositive};
}

AffineMap affine_from_process(const QuasiStochastic& t) {
  const std::size_t n_configs = t.rows();
  if (t.cols() != n_configs || !std::has_single_bit(n_configs) || n_configs < 2) {
    throw DomainError("process must be square over 2^n configurations");
  }
  const int n = std::countr_zero(n_configs);
  const double inv_n = 1.0 / static_cast<double>(n_configs);
  const double dim = static_cast<double>(frame_dim(n));
  const Eigen::MatrixXd f = frame_matrix(n);
  const Eigen::MatrixXd& tm = t.matrix();

  // c(b) and the columns M_b.
  const Eigen::VectorXd c = inv_n * tm.rowwise().sum();
  const Eigen::MatrixXd m = inv_n * f * tm.transpose();

  // w'.n_b = 2^n (c(b) + M_b.w) - 1; project with the frame identity.
  AffineMap out;
  out.a = dim * f * m.transpose();
  out.t = dim * inv_n * f * (static_cast<double>(n_configs) * c - Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n_configs)));
  return out;
}

double collision_entropy(const Gbv& w) {
  const double dim = static_cast<double>(frame_dim(w.n_bits()));
  return -std::log2((1.0 + w.w().squaredNorm() / dim) / (dim + 1.0));
}

}  // namespace sicmeas::gbv
