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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "sicmeas/gbv.hpp"
#include "sicmeas/sampling.hpp"

namespace sicmeas::gbv {
namespace {

double direct_h2(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return -std::log2(s);
}

TEST(Gbv, Dimensions) {
  EXPECT_EQ(frame_dim(1), 1u);
  EXPECT_EQ(frame_dim(3), 7u);
  EXPECT_EQ(num_configs(4), 16u);
  EXPECT_THROW(frame_dim(0), DomainError);
  EXPECT_THROW(frame_dim(kMaxBits + 1), DomainError);
}

TEST(Gbv, MonomialsCoverEveryNonEmptySubsetOnce) {
  for (int n = 1; n <= 8; ++n) {
    const auto& mons = monomials(n);
    ASSERT_EQ(mons.size(), frame_dim(n));
    std::set<std::uint32_t> seen(mons.begin(), mons.end());
    EXPECT_EQ(seen.size(), mons.size());
    EXPECT_EQ(seen.count(0u), 0u);
    EXPECT_LT(*seen.rbegin(), 1u << n);
  }
  // Two bits: a, a', aa'.
  EXPECT_EQ(monomials(2), (std::vector<std::uint32_t>{0b01, 0b10, 0b11}));
}

TEST(Gbv, QubitMeterOrdering) {
  // Components for n=3: a, a', aa', alpha a, alpha a', alpha a a', alpha.
  const Eigen::VectorXd v = frame_vector(3, config_index(std::vector<int>{-1, +1, -1}));
  const double k = 1.0 / std::sqrt(7.0);
  const Eigen::VectorXd expect = (Eigen::VectorXd(7) << 1, -1, -1, -1, 1, 1, -1).finished() * k;
  EXPECT_LT((v - expect).norm(), 1e-15);
}

TEST(Gbv, ConfigIndexRoundTrip) {
  for (int n = 1; n <= 6; ++n) {
    for (std::size_t i = 0; i < num_configs(n); ++i) EXPECT_EQ(config_index(config_bits(n, i)), i);
  }
  EXPECT_EQ(config_index(std::vector<int>{-1, 1, 1}), 4u);
  EXPECT_THROW(config_index(std::vector<int>{0, 1}), DomainError);
}

TEST(Gbv, FrameIdentities) {
  for (int n = 1; n <= 6; ++n) {
    const Eigen::MatrixXd f = frame_matrix(n);
    const double d = static_cast<double>(frame_dim(n));
    const double big_n = d + 1.0;
    EXPECT_LT(f.rowwise().sum().norm(), 1e-13);
    const Eigen::MatrixXd gram = f.transpose() * f;
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
      for (Eigen::Index j = 0; j < gram.cols(); ++j) EXPECT_NEAR(gram(i, j), i == j ? 1.0 : -1.0 / d, 1e-13);
    }
    EXPECT_LT((f * f.transpose() - (big_n / d) * Eigen::MatrixXd::Identity(f.rows(), f.rows())).norm(), 1e-12);
  }
}

TEST(Gbv, UniformAndPointMass) {
  EXPECT_LT(gbv_from_dist(BitDist::uniform(4)).w().norm(), 1e-15);
  for (std::size_t i = 0; i < 8; ++i) {
    const Gbv w = gbv_from_dist(BitDist::point_mass(3, i));
    EXPECT_LT((w.w() - 7.0 * frame_vector(3, i)).norm(), 1e-14);
    EXPECT_NEAR(collision_entropy(w), 0.0, 1e-14);
  }
}

TEST(Gbv, RoundTripAndReconstructionFormula) {
  Sampler rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + trial % 8;
    const BitDist p(n, rng.distribution(num_configs(n)));
    const Gbv w = gbv_from_dist(p);
    const DecodedDist back = dist_from_gbv(w);
    EXPECT_FALSE(back.nonpositive);
    const double big_n = static_cast<double>(num_configs(n));
    for (std::size_t x = 0; x < p.size(); ++x) {
      EXPECT_NEAR(back.dist[x], p[x], 1e-14);
      EXPECT_NEAR((1.0 + w.w().dot(frame_vector(n, x))) / big_n, p[x], 1e-14);
    }
    EXPECT_NEAR(collision_entropy(w), direct_h2(p.values()), 1e-12);
  }
}

TEST(Gbv, DecodingFlagsNegativeDistributions) {
  // Push a point mass past the simplex.
  const Eigen::VectorXd w = 4.5 * frame_vector(2, 0);
  const DecodedDist d = dist_from_gbv(Gbv(2, w));
  EXPECT_TRUE(d.nonpositive);
  EXPECT_NEAR(std::accumulate(d.dist.values().begin(), d.dist.values().end(), 0.0), 1.0, 1e-14);
}

TEST(Gbv, AffineMapReproducesProcess) {
  Sampler rng(22);
  for (int n = 1; n <= 4; ++n) {
    const std::size_t big_n = num_configs(n);
    Eigen::MatrixXd t(big_n, big_n);
    for (std::size_t c = 0; c < big_n; ++c) {
      const auto col = rng.distribution(big_n);
      for (std::size_t r = 0; r < big_n; ++r) t(r, c) = col[r];
    }
    const QuasiStochastic process(t);
    const AffineMap map = affine_from_process(process);
    for (int k = 0; k < 20; ++k) {
      const BitDist p(n, rng.distribution(big_n));
      const BitDist out(n, process.apply(p.values()));
      EXPECT_LT((map.apply(gbv_from_dist(p).w()) - gbv_from_dist(out).w()).norm(), 1e-12);
    }
  }
  EXPECT_THROW(affine_from_process(QuasiStochastic(Eigen::MatrixXd::Identity(3, 3))), DomainError);
}

TEST(Gbv, BitDistValidation) {
  EXPECT_THROW(BitDist(2, {0.5, 0.5}), DomainError);
  EXPECT_THROW(BitDist(1, {0.7, 0.7}), DomainError);
  EXPECT_NO_THROW(BitDist(1, {1.5, -0.5}));
}

}  // namespace
}  // namespace sicmeas::gbv
