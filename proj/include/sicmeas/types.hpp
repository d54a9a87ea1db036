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

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sicmeas {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Positivity tolerance shared by every frame-side check.
inline constexpr double kPositivityTol = 1e-12;
/// Normalization tolerance for column/row sums and distributions.
inline constexpr double kNormTol = 1e-12;

/// Raised when an input lies outside the physical domain (|s| > 1,
/// non-unit direction, non-rotation matrix, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a conditional state is requested for an outcome of zero
/// probability.
class ZeroProbabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a distribution that must stay nonnegative acquires an entry
/// below -kPositivityTol. what() carries the full diagnostic dump.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Qubit state in Bloch form, |s| <= 1.
class BlochVec {
 public:
  BlochVec() : s_(Vec3::Zero()) {}
  explicit BlochVec(const Vec3& s);
  BlochVec(double x, double y, double z) : BlochVec(Vec3(x, y, z)) {}

  const Vec3& vec() const { return s_; }
  double operator[](int i) const { return s_[i]; }
  double norm() const { return s_.norm(); }

 private:
  Vec3 s_;
};

/// Unit measurement direction m.
class Direction {
 public:
  /// Accepts |v| within 1e-9 of one and renormalizes exactly.
  explicit Direction(const Vec3& v);
  Direction(double x, double y, double z) : Direction(Vec3(x, y, z)) {}

  /// Scales any nonzero vector to unit length.
  static Direction normalized(const Vec3& v);

  const Vec3& vec() const { return m_; }
  double operator[](int i) const { return m_[i]; }

 private:
  struct Raw {};
  Direction(const Vec3& v, Raw) : m_(v) {}
  Vec3 m_;
};

/// Real matrix with unit column sums, entries possibly negative. Column index
/// is the input configuration, row index the output configuration.
class QuasiStochastic {
 public:
  /// Throws DomainError if a column sum misses 1 by more than `tol`.
  explicit QuasiStochastic(Eigen::MatrixXd t, double tol = kNormTol);

  std::size_t rows() const { return static_cast<std::size_t>(t_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(t_.cols()); }
  double operator()(std::size_t out, std::size_t in) const {
    return t_(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
  }
  const Eigen::MatrixXd& matrix() const { return t_; }

  double min_entry() const;
  /// Sum of max(0, -t) over all entries.
  double negativity() const;
  /// Unit row sums as well (quasi-bistochastic).
  bool is_bistochastic(double tol = kNormTol) const;

  /// p' = T p through the dispatched mat-vec kernel.
  std::vector<double> apply(std::span<const double> p) const;
  /// this * other (apply `other` first).
  QuasiStochastic after(const QuasiStochastic& other) const;
  /// Kronecker product; index of the result is (i_this * other.rows() + i_other).
  QuasiStochastic kron(const QuasiStochastic& other) const;

 private:
  Eigen::MatrixXd t_;
};

/// Formats a vector as "[a, b, c]" with round-trip precision, for diagnostics.
std::string format_values(std::span<const double> values);

}  // namespace sicmeas
