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

// Seeded random inputs for property tests and CLI ensembles. Produces plain
// Eigen values so that both the oracle and the frame-side code can consume
// them without depending on each other.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace sicmeas {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();

  /// Uniform in the unit ball (rejection from the cube).
  Eigen::Vector3d bloch_in_ball();
  /// Uniform on the unit sphere (normalized Gaussian).
  Eigen::Vector3d unit_vector();
  /// Haar-random SU(2) element from a normalized Gaussian quaternion.
  Eigen::Matrix2cd unitary2();
  /// Haar-random SO(3) element (same quaternion, as a rotation matrix).
  Eigen::Matrix3d rotation3();
  /// Uniform on the probability simplex of the given size.
  std::vector<double> distribution(std::size_t size);
  /// Mixture of `terms` Haar-random pure two-qubit states with simplex weights.
  Eigen::Matrix4cd two_qubit_density(int terms = 3);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace sicmeas
