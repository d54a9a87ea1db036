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

// Textbook density-matrix quantum mechanics, kept deliberately separate from
// the frame-side modules: this library includes none of their headers and is
// linked into tests as ground truth.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>

namespace sicmeas::oracle {

using cd = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using MatXc = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kEntryTol = 1e-12;
inline constexpr double kDerivedTol = 1e-9;
inline constexpr double kEigenTol = 1e-10;

class OracleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pauli matrices sigma_x, sigma_y, sigma_z (k = 0, 1, 2).
const Mat2c& pauli(int k);

/// Hermitian, unit-trace, positive semidefinite matrix of dimension 2 or 4.
class DensityMat {
 public:
  explicit DensityMat(MatXc rho);

  const MatXc& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  double purity() const;
  Eigen::VectorXd eigenvalues() const;

 private:
  MatXc rho_;
};

/// 2x2 unitary; the determinant may carry any phase.
class Unitary2 {
 public:
  explicit Unitary2(const Mat2c& u);

  const Mat2c& matrix() const { return u_; }

  static Unitary2 identity();
  static Unitary2 hadamard();
  /// exp(-i theta n.sigma / 2) for unit axis n.
  static Unitary2 rotation(const Vec3& axis, double theta);

 private:
  Mat2c u_;
};

/// Unit measurement axis (own copy of the check, independent of frame code).
class MeasAxis {
 public:
  explicit MeasAxis(const Vec3& m);
  MeasAxis(double x, double y, double z) : MeasAxis(Vec3(x, y, z)) {}
  const Vec3& vec() const { return m_; }

 private:
  Vec3 m_;
};

DensityMat density_from_bloch(const Vec3& s);
Vec3 bloch_from_density(const DensityMat& rho);
DensityMat apply_unitary(const DensityMat& rho, const Unitary2& u);

/// Pi_beta = (I + beta m.sigma) / 2.
Mat2c projector(const MeasAxis& m, int beta);
double born_probability(const DensityMat& rho, const MeasAxis& m, int beta);
/// Pi rho Pi / Tr[Pi rho]; throws OracleError when Tr[Pi rho] <= 1e-12.
DensityMat luders_collapse(const DensityMat& rho, const MeasAxis& m, int beta);

/// Tr[A B].
cd trace_product(const MatXc& a, const MatXc& b);
/// The four SIC elements (I + n.sigma) / 4 for the tetrahedron
/// (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1) over sqrt3, in that order.
const std::array<Mat2c, 4>& sic_projectors();
/// p_k = Tr[rho Pi_k].
std::array<double, 4> sic_probabilities(const DensityMat& rho);

DensityMat singlet_density();
/// Tr over the second (keep_first) or first qubit of a 4x4 state.
DensityMat partial_trace(const DensityMat& rho4, bool keep_first);
/// Tr[rho (a.sigma) (x) (b.sigma)].
double correlator(const DensityMat& rho4, const MeasAxis& a, const MeasAxis& b);
double chsh_value(const DensityMat& rho4, const MeasAxis& a1, const MeasAxis& a2,
                  const MeasAxis& b1, const MeasAxis& b2);

}  // namespace sicmeas::oracle
