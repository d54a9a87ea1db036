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

#include "sicmeas/oracle.hpp"
#include "sicmeas/sampling.hpp"
#include "sicmeas/sic_frame.hpp"

namespace sicmeas::sic {
namespace {

const double kR3 = std::sqrt(3.0);

TEST(SicFrame, OutcomeOrdering) {
  EXPECT_EQ(index_of(+1, +1), 0u);
  EXPECT_EQ(index_of(+1, -1), 1u);
  EXPECT_EQ(index_of(-1, +1), 2u);
  EXPECT_EQ(index_of(-1, -1), 3u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(index_of(bits_of(i).a, bits_of(i).a2), i);
  EXPECT_LT((tetra_vector(-1, +1) - Vec3(-1, 1, -1) / kR3).norm(), 1e-16);
}

TEST(SicFrame, TetrahedronGeometry) {
  Vec3 sum = Vec3::Zero();
  for (std::size_t i = 0; i < 4; ++i) {
    sum += tetra_vector(i);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(tetra_vector(i).dot(tetra_vector(j)), i == j ? 1.0 : -1.0 / 3.0, 1e-15);
    }
  }
  EXPECT_LT(sum.norm(), 1e-15);
}

TEST(SicFrame, KnownStates) {
  const SicDist mixed = sic_from_bloch(BlochVec());
  for (double p : mixed.values()) EXPECT_DOUBLE_EQ(p, 0.25);
  // |0>: p = (1 + aa'/sqrt3)/4.
  const SicDist up = sic_from_bloch(BlochVec(0, 0, 1));
  EXPECT_NEAR(up[0], 0.25 * (1 + 1 / kR3), 1e-16);
  EXPECT_NEAR(up[1], 0.25 * (1 - 1 / kR3), 1e-16);
  EXPECT_NEAR(up[2], 0.25 * (1 - 1 / kR3), 1e-16);
  EXPECT_NEAR(up[3], 0.25 * (1 + 1 / kR3), 1e-16);
}

TEST(SicFrame, RoundTripAndOracleAgreement) {
  Sampler rng(3);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 s = rng.bloch_in_ball();
    const SicDist p = sic_from_bloch(BlochVec(s));
    EXPECT_LT((bloch_from_sic(p) - s).norm(), 1e-14);
    const auto q = oracle::sic_probabilities(oracle::density_from_bloch(s));
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(p[k], q[k], 1e-15);
  }
}

TEST(SicFrame, RejectsBadInputs) {
  EXPECT_THROW(SicDist({0.5, 0.5, 0.5, 0.5}), DomainError);
  EXPECT_THROW(BlochVec(1.0, 0.5, 0.0), DomainError);
  Mat3 reflect = Mat3::Identity();
  reflect(0, 0) = -1;
  EXPECT_THROW(channel_from_rotation(reflect), DomainError);
}

TEST(SicFrame, RotationChannelMatchesUnitaryEvolution) {
  Sampler rng(4);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Matrix2cd u = rng.unitary2();
    const Mat3 o = rotation_from_unitary(u);
    EXPECT_LT((o * o.transpose() - Mat3::Identity()).norm(), 1e-13);
    EXPECT_NEAR(o.determinant(), 1.0, 1e-13);
    const QuasiStochastic t = channel_from_rotation(o);
    EXPECT_TRUE(t.is_bistochastic());
    EXPECT_LT((induced_bloch_map(t) - o).norm(), 1e-13);
    const Vec3 s = rng.bloch_in_ball();
    const auto expect =
        oracle::sic_probabilities(oracle::apply_unitary(oracle::density_from_bloch(s), oracle::Unitary2(u)));
    const SicDist got = apply_channel(t, sic_from_bloch(BlochVec(s)));
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(got[k], expect[k], 1e-13);
  }
}

TEST(SicFrame, TetrahedralRotationsArePermutations) {
  const auto group = tetrahedral_rotations();
  for (const Mat3& o : group) {
    EXPECT_TRUE(permutes_tetrahedron(o));
    const QuasiStochastic t = channel_from_rotation(o);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) {
        const double v = t(r, c);
        EXPECT_TRUE(std::abs(v) < 1e-12 || std::abs(v - 1.0) < 1e-12) << v;
      }
    }
  }
  Sampler rng(9);
  for (int i = 0; i < 200; ++i) EXPECT_LT(channel_from_rotation(rng.rotation3()).min_entry(), -1e-12);
}

TEST(SicFrame, LudersChannelMatchesOracle) {
  Sampler rng(10);
  for (int i = 0; i < 300; ++i) {
    const Direction m = Direction::normalized(rng.unit_vector());
    const Vec3 s = rng.bloch_in_ball();
    const QuasiStochastic v = luders_channel(m);
    EXPECT_GE(v.min_entry(), -0.25 - 1e-15);
    const SicDist got = apply_channel(v, sic_from_bloch(BlochVec(s)));
    EXPECT_LT((bloch_from_sic(got) - m.vec() * m.vec().dot(s)).norm(), 1e-14);
  }
}

TEST(SicFrame, SingletDistribution) {
  const SicDist2 p = singlet_sic();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(p(i, j), i == j ? 0.0 : 1.0 / 12.0, 1e-15);
  }
  for (double m : p.marginal_first().values()) EXPECT_NEAR(m, 0.25, 1e-15);
}

TEST(SicFrame, ChshValues) {
  EXPECT_NEAR(chsh_from_sic(ChshSettings::tsirelson()), 2.0 * std::sqrt(2.0), 1e-12);
  // Product state has no correlations beyond the marginals.
  const SicDist2 prod = SicDist2::product(sic_from_bloch(BlochVec(0, 0, 1)), sic_from_bloch(BlochVec(0, 0, 1)));
  EXPECT_NEAR(correlator_from_sic(prod, Direction(0, 0, 1), Direction(0, 0, 1)), 1.0, 1e-13);
  EXPECT_NEAR(correlator_from_sic(singlet_sic(), Direction(0, 0, 1), Direction(0, 0, 1)), -1.0, 1e-13);
}

TEST(SicFrame, RotationAligning) {
  Sampler rng(12);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a = rng.unit_vector(), b = rng.unit_vector();
    EXPECT_LT((rotation_aligning(a, b) * a - b).norm(), 1e-13);
  }
  EXPECT_LT((rotation_aligning(Vec3(0, 0, 1), Vec3(0, 0, -1)) * Vec3(0, 0, 1) - Vec3(0, 0, -1)).norm(), 1e-15);
}

}  // namespace
}  // namespace sicmeas::sic
