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

#include "sicmeas/oracle.hpp"

#include <cmath>
#include <string>

namespace sicmeas::oracle {
namespace {

Mat2c dot_sigma(const Vec3& v) {
  return v[0] * pauli(0) + v[1] * pauli(1) + v[2] * pauli(2);
}

}  // namespace

const Mat2c& pauli(int k) {
  static const Mat2c sx = (Mat2c() << 0, 1, 1, 0).finished();
  static const Mat2c sy = (Mat2c() << 0, cd(0, -1), cd(0, 1), 0).finished();
  static const Mat2c sz = (Mat2c() << 1, 0, 0, -1).finished();
  switch (k) {
    case 0: return sx;
    case 1: return sy;
    case 2: return sz;
    default: throw OracleError("pauli index out of range");
  }
}

DensityMat::DensityMat(MatXc rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || (rho_.rows() != 2 && rho_.rows() != 4)) {
    throw OracleError("density matrix must be 2x2 or 4x4");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kEntryTol) {
    throw OracleError("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - cd(1.0)) > kEntryTol) {
    throw OracleError("density matrix trace is not 1");
  }
  if (eigenvalues().minCoeff() < -kEigenTol) {
    throw OracleError("density matrix has a negative eigenvalue");
  }
}

double DensityMat::purity() const { return (rho_ * rho_).trace().real(); }

Eigen::VectorXd DensityMat::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<MatXc> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Unitary2::Unitary2(const Mat2c& u) : u_(u) {
  if ((u_.adjoint() * u_ - Mat2c::Identity()).cwiseAbs().maxCoeff() > kEntryTol) {
    throw OracleError("matrix is not unitary");
  }
}

Unitary2 Unitary2::identity() { return Unitary2(Mat2c::Identity()); }

Unitary2 Unitary2::hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return Unitary2((Mat2c() << r, r, r, -r).finished());
}

Unitary2 Unitary2::rotation(const Vec3& axis, double theta) {
  const Vec3 n = axis.normalized();
  return Unitary2(std::cos(theta / 2) * Mat2c::Identity() - cd(0, std::sin(theta / 2)) * dot_sigma(n));
}

MeasAxis::MeasAxis(const Vec3& m) : m_(m) {
  if (std::abs(m.norm() - 1.0) > 1e-9) throw OracleError("measurement axis must be a unit vector");
  m_ = m / m.norm();
}

DensityMat density_from_bloch(const Vec3& s) {
  if (s.norm() > 1.0 + 1e-9) throw OracleError("unphysical Bloch vector");
  return DensityMat(0.5 * (Mat2c::Identity() + dot_sigma(s)));
}

Vec3 bloch_from_density(const DensityMat& rho) {
  if (rho.dim() != 2) throw OracleError("bloch_from_density needs a single-qubit state");
  const Mat2c r = rho.matrix();
  Vec3 s;
  for (int k = 0; k < 3; ++k) s[k] = (r * pauli(k)).trace().real();
  return s;
}

DensityMat apply_unitary(const DensityMat& rho, const Unitary2& u) {
  if (rho.dim() != 2) throw OracleError("apply_unitary needs a single-qubit state");
  MatXc out = u.matrix() * rho.matrix() * u.matrix().adjoint();
  // Restore exact hermiticity lost to rounding.
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMat(std::move(out));
}

Mat2c projector(const MeasAxis& m, int beta) {
  if (beta != 1 && beta != -1) throw OracleError("outcome must be +1 or -1");
  return 0.5 * (Mat2c::Identity() + static_cast<double>(beta) * dot_sigma(m.vec()));
}

double born_probability(const DensityMat& rho, const MeasAxis& m, int beta) {
  if (rho.dim() != 2) throw OracleError("born_probability needs a single-qubit state");
  const Mat2c r = rho.matrix();
  return (r * projector(m, beta)).trace().real();
}

DensityMat luders_collapse(const DensityMat& rho, const MeasAxis& m, int beta) {
  const double p = born_probability(rho, m, beta);
  if (p <= 1e-12) {
    throw OracleError("outcome " + std::to_string(beta) + " has zero probability");
  }
  const Mat2c pi = projector(m, beta);
  const Mat2c r = rho.matrix();
  MatXc out = pi * r * pi / p;
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMat(std::move(out));
}

cd trace_product(const MatXc& a, const MatXc& b) { return (a * b).trace(); }

const std::array<Mat2c, 4>& sic_projectors() {
  static const std::array<Mat2c, 4> pis = [] {
    const double r = 1.0 / std::sqrt(3.0);
    const std::array<Vec3, 4> n = {Vec3(r, r, r), Vec3(r, -r, -r), Vec3(-r, r, -r), Vec3(-r, -r, r)};
    std::array<Mat2c, 4> out;
    for (std::size_t k = 0; k < 4; ++k) out[k] = 0.25 * (Mat2c::Identity() + dot_sigma(n[k]));
    return out;
  }();
  return pis;
}

std::array<double, 4> sic_probabilities(const DensityMat& rho) {
  if (rho.dim() != 2) throw OracleError("sic_probabilities needs a single-qubit state");
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) p[k] = trace_product(rho.matrix(), sic_projectors()[k]).real();
  return p;
}

DensityMat singlet_density() {
  // |psi-> = (|01> - |10>) / sqrt2 in the basis |00>, |01>, |10>, |11>.
  Eigen::Vector4cd psi(0, 1, -1, 0);
  psi /= std::sqrt(2.0);
  return DensityMat(psi * psi.adjoint());
}

DensityMat partial_trace(const DensityMat& rho4, bool keep_first) {
  if (rho4.dim() != 4) throw OracleError("partial_trace needs a two-qubit state");
  const MatXc& r = rho4.matrix();
  Mat2c out = Mat2c::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        out(i, j) += keep_first ? r(2 * i + k, 2 * j + k) : r(2 * k + i, 2 * k + j);
      }
    }
  }
  return DensityMat(out);
}

double correlator(const DensityMat& rho4, const MeasAxis& a, const MeasAxis& b) {
  if (rho4.dim() != 4) throw OracleError("correlator needs a two-qubit state");
  const Mat2c sa = dot_sigma(a.vec());
  const Mat2c sb = dot_sigma(b.vec());
  Mat4c ab;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) ab.block<2, 2>(2 * i, 2 * j) = sa(i, j) * sb;
  }
  return (rho4.matrix() * ab).trace().real();
}

double chsh_value(const DensityMat& rho4, const MeasAxis& a1, const MeasAxis& a2,
                  const MeasAxis& b1, const MeasAxis& b2) {
  return correlator(rho4, a1, b1) + correlator(rho4, a1, b2) + correlator(rho4, a2, b1) -
         correlator(rho4, a2, b2);
}

}  // namespace sicmeas::oracle
