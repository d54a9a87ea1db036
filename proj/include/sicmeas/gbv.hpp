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

#pragma once

// Generalized Bloch vectors of distributions over n classical bits.
//
// A configuration (b_0, ..., b_{n-1}) in {+1,-1}^n has the linear index
//   sum_i [b_i == -1] << (n - 1 - i),
// i.e. big-endian with +1 before -1. The GBV holds one component per
// nontrivial monomial of the bits, scaled so that
//   p(x) = 2^-n (1 + w . n_x),   n_x = (monomials of x) / sqrt(2^n - 1).
//
// Monomial order (tag kMonomialOrderTag): degree-lexicographic over bit
// positions, except n = 3, which uses (b1, b2, b1b2, b0b1, b0b2, b0b1b2, b0)
// so that with bits (alpha, a, a') the first three components are the qubit
// block, the next three the qubit-meter correlations, and the last the meter.

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sicmeas/types.hpp"

namespace sicmeas::gbv {

inline constexpr int kMaxBits = 12;
inline constexpr std::string_view kMonomialOrderTag = "deglex+meter3/v1";

/// 2^n - 1; throws DomainError for n outside [1, kMaxBits].
std::size_t frame_dim(int n_bits);
inline std::size_t num_configs(int n_bits) { return frame_dim(n_bits) + 1; }

/// Monomials as masks over bit positions (bit i set <=> b_i is a factor).
const std::vector<std::uint32_t>& monomials(int n_bits);

std::vector<int> config_bits(int n_bits, std::size_t index);
std::size_t config_index(std::span<const int> bits);

struct BitFrameVec {
  int n_bits;
  std::vector<int> index;
  Eigen::VectorXd v;
};

BitFrameVec frame_vector(int n_bits, std::span<const int> bits);
Eigen::VectorXd frame_vector(int n_bits, std::size_t index);
/// (2^n - 1) x 2^n matrix whose columns are the frame vectors n_x.
Eigen::MatrixXd frame_matrix(int n_bits);

/// Normalized (quasi-)distribution over n bits; entries may be negative.
class BitDist {
 public:
  BitDist(int n_bits, std::vector<double> p);
  static BitDist uniform(int n_bits);
  static BitDist point_mass(int n_bits, std::size_t index);

  int n_bits() const { return n_bits_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const { return p_; }
  double min_entry() const;
  bool is_nonnegative(double tol = kPositivityTol) const { return min_entry() >= -tol; }

 private:
  int n_bits_;
  std::vector<double> p_;
};

class Gbv {
 public:
  Gbv(int n_bits, Eigen::VectorXd w);
  int n_bits() const { return n_bits_; }
  const Eigen::VectorXd& w() const { return w_; }

 private:
  int n_bits_;
  Eigen::VectorXd w_;
};

Gbv gbv_from_dist(const BitDist& p);

struct DecodedDist {
  BitDist dist;
  /// Some entry fell below -kPositivityTol: a quasi-distribution.
  bool nonpositive;
};
DecodedDist dist_from_gbv(const Gbv& w);

/// w' = A w + t.
struct AffineMap {
  Eigen::MatrixXd a;
  Eigen::VectorXd t;
  Eigen::VectorXd apply(const Eigen::VectorXd& w) const { return a * w + t; }
};

/// Affine action on GBVs of a quasi-stochastic process over 2^n configurations,
/// through c(b) = 2^-n sum_a T(b|a) and M_b = 2^-n sum_a T(b|a) n_a and the
/// frame identity sum_x n_x n_x^T = 2^n/(2^n - 1) I.
AffineMap affine_from_process(const QuasiStochastic& t);

/// Renyi-2 entropy in bits: -log2(2^-n (1 + |w|^2 / (2^n - 1))).
double collision_entropy(const Gbv& w);

}  // namespace sicmeas::gbv
