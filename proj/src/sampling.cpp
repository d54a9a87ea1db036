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

#include "sicmeas/sampling.hpp"

#include <cmath>
#include <complex>

namespace sicmeas {

double Sampler::uniform(double lo, double hi) {
  return lo + (hi - lo) * std::generate_canonical<double, 53>(rng_);
}

double Sampler::normal() {
  // Box-Muller on generate_canonical keeps the stream identical across
  // standard library implementations.
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Eigen::Vector3d Sampler::bloch_in_ball() {
  while (true) {
    const Eigen::Vector3d v(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    if (v.squaredNorm() <= 1.0) return v;
  }
}

Eigen::Vector3d Sampler::unit_vector() {
  while (true) {
    const Eigen::Vector3d v(normal(), normal(), normal());
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

namespace {

Eigen::Vector4d gaussian_quaternion(Sampler& s) {
  while (true) {
    const Eigen::Vector4d q(s.normal(), s.normal(), s.normal(), s.normal());
    const double n = q.norm();
    if (n > 1e-8) return q / n;
  }
}

}  // namespace

Eigen::Matrix2cd Sampler::unitary2() {
  const Eigen::Vector4d q = gaussian_quaternion(*this);
  using cd = std::complex<double>;
  Eigen::Matrix2cd u;
  u << cd(q[0], q[3]), cd(q[2], q[1]), cd(-q[2], q[1]), cd(q[0], -q[3]);
  return u;
}

Eigen::Matrix3d Sampler::rotation3() {
  const Eigen::Vector4d q = gaussian_quaternion(*this);
  return Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
}

std::vector<double> Sampler::distribution(std::size_t size) {
  std::vector<double> p(size);
  double sum = 0.0;
  for (double& v : p) {
    v = -std::log(1.0 - uniform());
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

Eigen::Matrix4cd Sampler::two_qubit_density(int terms) {
  const std::vector<double> weights = distribution(static_cast<std::size_t>(terms));
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (double w : weights) {
    Eigen::Vector4cd psi;
    for (int i = 0; i < 4; ++i) psi[i] = std::complex<double>(normal(), normal());
    psi.normalize();
    rho += w * psi * psi.adjoint();
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace sicmeas
