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

// Single-qubit SIC frame. The four outcomes are labelled by bit pairs
// (a, a') in {+1,-1}^2 and stored in the order (++, +-, -+, --).
//
// Only the qubit SIC is implemented. The general frame/dual-frame
// relations (rho = sum mu F, mu = Tr[rho G]) reduce here to
// p = Tr[rho Pi] and rho = sum (4p - 1) Pi, which is all this module needs.

#include <Eigen/Dense>

#include <array>
#include <span>

#include "sicmeas/types.hpp"

namespace sicmeas::sic {

inline constexpr std::size_t kOutcomes = 4;

/// Bits of outcome `index` in (++, +-, -+, --) order.
struct BitPair {
  int a;
  int a2;
};
BitPair bits_of(std::size_t index);
std::size_t index_of(int a, int a2);

/// n_{aa'} = (a, a', a a') / sqrt3.
Vec3 tetra_vector(std::size_t index);
inline Vec3 tetra_vector(int a, int a2) { return tetra_vector(index_of(a, a2)); }

/// Probability 4-vector over (a, a').
class SicDist {
 public:
  /// Throws DomainError unless the entries sum to one within kNormTol.
  explicit SicDist(const std::array<double, 4>& p);
  static SicDist uniform() { return SicDist({0.25, 0.25, 0.25, 0.25}); }

  double operator[](std::size_t i) const { return p_[i]; }
  const std::array<double, 4>& values() const { return p_; }
  std::span<const double> span() const { return p_; }
  double min_entry() const;

 private:
  std::array<double, 4> p_;
};

/// Joint distribution over (aa', bb') of two local SIC frames, index
/// 4 * i_A + i_B.
class SicDist2 {
 public:
  explicit SicDist2(const std::array<double, 16>& p);
  static SicDist2 product(const SicDist& alice, const SicDist& bob);

  double operator()(std::size_t i_a, std::size_t i_b) const { return p_[4 * i_a + i_b]; }
  const std::array<double, 16>& values() const { return p_; }
  SicDist marginal_first() const;
  SicDist marginal_second() const;

 private:
  std::array<double, 16> p_;
};

SicDist sic_from_bloch(const BlochVec& s);
Vec3 bloch_from_sic(const SicDist& p);

/// Throws DomainError unless O is a proper rotation to 1e-9.
void check_rotation(const Mat3& o);

/// T(bb'|aa') = (1 + 3 n_{bb'} . O n_{aa'}) / 4.
QuasiStochastic channel_from_rotation(const Mat3& o);

/// Adjoint action O_jk = Tr[sigma_j U sigma_k U^dagger] / 2 of a 2x2 unitary.
Mat3 rotation_from_unitary(const Eigen::Matrix2cd& u);

/// SIC form of the Lueders (projective, outcome-averaged) channel along m:
/// V(bb'|aa') = (1 + 3 n_{bb'} . (m m^T) n_{aa'}) / 4.
QuasiStochastic luders_channel(const Direction& m);

/// Linear Bloch map b -> 3 sum_{bb'} n_{bb'} sum_{aa'} T(bb'|aa') (1/4) n_{aa'}.b
/// induced by a 4x4 frame channel (the affine part for bistochastic T).
Mat3 induced_bloch_map(const QuasiStochastic& t);

/// p' = T p. Negative outputs are kept (and visible through min_entry).
SicDist apply_channel(const QuasiStochastic& t, const SicDist& p);

/// The 12 proper rotations that permute the tetrahedron {n_{aa'}}.
std::array<Mat3, 12> tetrahedral_rotations();
/// True iff O maps every n_{aa'} onto some n_{bb'} (tolerance 1e-9).
bool permutes_tetrahedron(const Mat3& o);

/// p(aa', bb') = (1 - n_{aa'} . n_{bb'}) / 16.
SicDist2 singlet_sic();

/// Correlator <(a.sigma) (x) (b.sigma)> evaluated frame-side: each party's
/// marginal frame is rotated so that its setting points along z, then the
/// outcome signs aa' and bb' are contracted.
double correlator_from_sic(const SicDist2& p, const Direction& a, const Direction& b);

struct ChshSettings {
  Direction a1, a2, b1, b2;
  static ChshSettings tsirelson();
  static ChshSettings all_equal(const Direction& d);
};

double chsh_from_sic(const SicDist2& p, const ChshSettings& settings);
inline double chsh_from_sic(const ChshSettings& settings) { return chsh_from_sic(singlet_sic(), settings); }

/// Proper rotation taking unit `from` onto unit `to` (Rodrigues).
Mat3 rotation_aligning(const Vec3& from, const Vec3& to);

}  // namespace sicmeas::sic
