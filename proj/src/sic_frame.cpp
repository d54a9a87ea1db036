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

#include "sicmeas/sic_frame.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

namespace sicmeas::sic {
namespace {

using cd = std::complex<double>;

const std::array<Vec3, 4>& tetra() {
  static const std::array<Vec3, 4> vecs = [] {
    std::array<Vec3, 4> out;
    const double r = 1.0 / std::sqrt(3.0);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto [a, a2] = bits_of(i);
      out[i] = Vec3(a, a2, a * a2) * r;
    }
    return out;
  }();
  return vecs;
}

// Frame-side Pauli matrices, used only to read off the adjoint action of U.
const std::array<Eigen::Matrix2cd, 3>& paulis() {
  static const std::array<Eigen::Matrix2cd, 3> s = {
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  return s;
}

QuasiStochastic channel_from_linear_map(const Mat3& r) {
  Eigen::MatrixXd t(4, 4);
  for (std::size_t out = 0; out < 4; ++out) {
    for (std::size_t in = 0; in < 4; ++in) {
      t(out, in) = 0.25 * (1.0 + 3.0 * tetra()[out].dot(r * tetra()[in]));
    }
  }
  return QuasiStochastic(std::move(t));
}

}  // namespace

BitPair bits_of(std::size_t index) {
  if (index >= 4) throw std::out_of_range("SIC outcome index out of range");
  return {(index & 2) ? -1 : 1, (index & 1) ? -1 : 1};
}

std::size_t index_of(int a, int a2) {
  if ((a != 1 && a != -1) || (a2 != 1 && a2 != -1)) throw DomainError("bits must be +1 or -1");
  return (a == -1 ? 2u : 0u) + (a2 == -1 ? 1u : 0u);
}

Vec3 tetra_vector(std::size_t index) {
  if (index >= 4) throw std::out_of_range("SIC outcome index out of range");
  return tetra()[index];
}

SicDist::SicDist(const std::array<double, 4>& p) : p_(p) {
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (!std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); }) ||
      std::abs(sum - 1.0) > kNormTol) {
    throw DomainError("SIC distribution must sum to 1, got " + format_values(p));
  }
}

double SicDist::min_entry() const { return *std::min_element(p_.begin(), p_.end()); }

SicDist2::SicDist2(const std::array<double, 16>& p) : p_(p) {
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(sum - 1.0) > kNormTol) throw DomainError("joint SIC distribution must sum to 1");
}

SicDist2 SicDist2::product(const SicDist& alice, const SicDist& bob) {
  std::array<double, 16> p{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) p[4 * i + j] = alice[i] * bob[j];
  }
  return SicDist2(p);
}

SicDist SicDist2::marginal_first() const {
  std::array<double, 4> m{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m[i] += p_[4 * i + j];
  }
  return SicDist(m);
}

SicDist SicDist2::marginal_second() const {
  std::array<double, 4> m{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m[j] += p_[4 * i + j];
  }
  return SicDist(m);
}

SicDist sic_from_bloch(const BlochVec& s) {
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = 0.25 * (1.0 + s.vec().dot(tetra()[i]));
  return SicDist(p);
}

Vec3 bloch_from_sic(const SicDist& p) {
  Vec3 s = Vec3::Zero();
  for (std::size_t i = 0; i < 4; ++i) s += 3.0 * p[i] * tetra()[i];
  return s;
}

void check_rotation(const Mat3& o) {
  if (!o.allFinite() || (o.transpose() * o - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9 ||
      std::abs(o.determinant() - 1.0) > 1e-9) {
    throw DomainError("matrix is not a proper rotation");
  }
}

QuasiStochastic channel_from_rotation(const Mat3& o) {
  check_rotation(o);
  return channel_from_linear_map(o);
}

Mat3 rotation_from_unitary(const Eigen::Matrix2cd& u) {
  if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
    throw DomainError("matrix is not unitary");
  }
  Mat3 o;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      o(j, k) = 0.5 * (paulis()[j] * u * paulis()[k] * u.adjoint()).trace().real();
    }
  }
  return o;
}

QuasiStochastic luders_channel(const Direction& m) {
  return channel_from_linear_map(m.vec() * m.vec().transpose());
}

Mat3 induced_bloch_map(const QuasiStochastic& t) {
  if (t.rows() != 4 || t.cols() != 4) throw std::invalid_argument("expected a 4x4 SIC channel");
  Mat3 r = Mat3::Zero();
  for (std::size_t out = 0; out < 4; ++out) {
    for (std::size_t in = 0; in < 4; ++in) {
      r += 0.75 * t(out, in) * tetra()[out] * tetra()[in].transpose();
    }
  }
  return r;
}

SicDist apply_channel(const QuasiStochastic& t, const SicDist& p) {
  if (t.rows() != 4 || t.cols() != 4) throw std::invalid_argument("expected a 4x4 SIC channel");
  const std::vector<double> out = t.apply(p.span());
  // Unit column sums keep the total at one up to rounding.
  std::array<double, 4> q{};
  std::copy(out.begin(), out.end(), q.begin());
  return SicDist(q);
}

std::array<Mat3, 12> tetrahedral_rotations() {
  std::array<Mat3, 12> out;
  std::size_t found = 0;
  std::array<std::size_t, 4> perm{0, 1, 2, 3};
  do {
    // sum_i n_i n_i^T = (4/3) I, so O = (3/4) sum_i n_{pi(i)} n_i^T maps n_i to n_{pi(i)}.
    Mat3 o = Mat3::Zero();
    for (std::size_t i = 0; i < 4; ++i) o += 0.75 * tetra()[perm[i]] * tetra()[i].transpose();
    if (o.determinant() > 0.0) out.at(found++) = o;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool permutes_tetrahedron(const Mat3& o) {
  for (const Vec3& n : tetra()) {
    const Vec3 image = o * n;
    const bool hit = std::any_of(tetra().begin(), tetra().end(),
                                 [&](const Vec3& t) { return (image - t).cwiseAbs().maxCoeff() < 1e-9; });
    if (!hit) return false;
  }
  return true;
}

SicDist2 singlet_sic() {
  std::array<double, 16> p{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) p[4 * i + j] = (1.0 - tetra()[i].dot(tetra()[j])) / 16.0;
  }
  return SicDist2(p);
}

Mat3 rotation_aligning(const Vec3& from, const Vec3& to) {
  const Vec3 f = from.normalized();
  const Vec3 t = to.normalized();
  const double c = f.dot(t);
  if (c > 1.0 - 1e-15) return Mat3::Identity();
  if (c < -1.0 + 1e-15) {
    // Half turn about any axis perpendicular to f.
    Vec3 axis = f.cross(Vec3::UnitX());
    if (axis.norm() < 1e-6) axis = f.cross(Vec3::UnitY());
    axis.normalize();
    return 2.0 * axis * axis.transpose() - Mat3::Identity();
  }
  return Eigen::AngleAxisd(std::acos(std::clamp(c, -1.0, 1.0)), f.cross(t).normalized()).toRotationMatrix();
}

double correlator_from_sic(const SicDist2& p, const Direction& a, const Direction& b) {
  const QuasiStochastic ta = channel_from_rotation(rotation_aligning(a.vec(), Vec3::UnitZ()));
  const QuasiStochastic tb = channel_from_rotation(rotation_aligning(b.vec(), Vec3::UnitZ()));
  const std::vector<double> rotated = ta.kron(tb).apply(p.values());
  // <sigma_z (x) sigma_z> = 9 sum p n_z n_z, and n_z = a a' / sqrt3.
  double e = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto [a1, a2] = bits_of(i);
    for (std::size_t j = 0; j < 4; ++j) {
      const auto [b1, b2] = bits_of(j);
      e += 3.0 * (a1 * a2) * (b1 * b2) * rotated[4 * i + j];
    }
  }
  return e;
}

ChshSettings ChshSettings::tsirelson() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Direction(0, 0, 1), Direction(1, 0, 0), Direction(-r, 0, -r), Direction(r, 0, -r)};
}

ChshSettings ChshSettings::all_equal(const Direction& d) { return {d, d, d, d}; }

double chsh_from_sic(const SicDist2& p, const ChshSettings& s) {
  return correlator_from_sic(p, s.a1, s.b1) + correlator_from_sic(p, s.a1, s.b2) +
         correlator_from_sic(p, s.a2, s.b1) - correlator_from_sic(p, s.a2, s.b2);
}

}  // namespace sicmeas::sic
