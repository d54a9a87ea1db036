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

#include "sicmeas/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sicmeas/kernels.hpp"

namespace sicmeas {

BlochVec::BlochVec(const Vec3& s) : s_(s) {
  if (!s.allFinite() || s.norm() > 1.0 + 1e-9) {
    throw DomainError("unphysical Bloch vector, |s| = " + std::to_string(s.norm()));
  }
}

Direction::Direction(const Vec3& v) : m_(v) {
  const double n = v.norm();
  if (!v.allFinite() || std::abs(n - 1.0) > 1e-9) {
    throw DomainError("measurement direction must be a unit vector, |m| = " + std::to_string(n));
  }
  m_ = v / n;
}

Direction Direction::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!v.allFinite() || n == 0.0) throw DomainError("cannot normalize a zero direction");
  return Direction(v / n, Raw{});
}

QuasiStochastic::QuasiStochastic(Eigen::MatrixXd t, double tol) : t_(std::move(t)) {
  if (t_.size() == 0 || !t_.allFinite()) throw DomainError("quasi-stochastic matrix must be finite and non-empty");
  for (Eigen::Index c = 0; c < t_.cols(); ++c) {
    const double sum = t_.col(c).sum();
    if (std::abs(sum - 1.0) > tol) {
      throw DomainError("column " + std::to_string(c) + " sums to " + std::to_string(sum));
    }
  }
}

double QuasiStochastic::min_entry() const {
  return kernels::min_entry(std::span<const double>(t_.data(), static_cast<std::size_t>(t_.size())));
}

double QuasiStochastic::negativity() const { return (-t_.array()).max(0.0).sum(); }

bool QuasiStochastic::is_bistochastic(double tol) const {
  if (t_.rows() != t_.cols()) return false;
  return ((t_.rowwise().sum().array() - 1.0).abs() <= tol).all();
}

std::vector<double> QuasiStochastic::apply(std::span<const double> p) const {
  std::vector<double> out(rows());
  kernels::matvec(std::span<const double>(t_.data(), static_cast<std::size_t>(t_.size())), rows(),
                  cols(), p, out);
  return out;
}

QuasiStochastic QuasiStochastic::after(const QuasiStochastic& other) const {
  if (cols() != other.rows()) throw std::invalid_argument("composition dimension mismatch");
  return QuasiStochastic(t_ * other.t_, 1e-10);
}

QuasiStochastic QuasiStochastic::kron(const QuasiStochastic& other) const {
  const Eigen::Index r1 = t_.rows(), c1 = t_.cols();
  const Eigen::Index r2 = other.t_.rows(), c2 = other.t_.cols();
  Eigen::MatrixXd k(r1 * r2, c1 * c2);
  for (Eigen::Index i = 0; i < r1; ++i) {
    for (Eigen::Index j = 0; j < c1; ++j) k.block(i * r2, j * c2, r2, c2) = t_(i, j) * other.t_;
  }
  return QuasiStochastic(std::move(k), 1e-10);
}

std::string format_values(std::span<const double> values) {
  std::string out = "[";
  char buf[32];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    if (i != 0) out += ", ";
    out += buf;
  }
  return out + "]";
}

}  // namespace sicmeas
