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

#include <random>
#include <vector>

#include "sicmeas/kernels.hpp"

namespace sicmeas::kernels {
namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

bool have_avx2() { return avx2::compiled() && detect_backend() == Backend::kAvx2; }

TEST(Kernels, ScalarFwhtOfPointMassIsFlat) {
  std::vector<double> v(8, 0.0);
  v[0] = 1.0;
  scalar::fwht(v.data(), v.size());
  for (double x : v) EXPECT_EQ(x, 1.0);
}

TEST(Kernels, ScalarFwhtIsInvolutionUpToScale) {
  auto v = random_values(64, 1);
  auto w = v;
  scalar::fwht(w.data(), w.size());
  scalar::fwht(w.data(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(w[i] / 64.0, v[i], 1e-14);
}

TEST(Kernels, ScalarMatvecColumnMajor) {
  // [[1 2 3], [4 5 6]] stored column-major.
  const std::vector<double> a{1, 4, 2, 5, 3, 6};
  const std::vector<double> x{1, -1, 2};
  std::vector<double> y(2);
  scalar::matvec(a.data(), 2, 3, x.data(), y.data());
  EXPECT_EQ(y[0], 5.0);
  EXPECT_EQ(y[1], 11.0);
}

TEST(Kernels, Avx2MatchesScalar) {
  if (!have_avx2()) GTEST_SKIP() << "AVX2 unavailable";
  for (std::size_t rows : {1u, 3u, 4u, 7u, 8u, 16u, 33u}) {
    for (std::size_t cols : {1u, 5u, 8u, 16u}) {
      const auto a = random_values(rows * cols, rows * 100 + cols);
      const auto x = random_values(cols, cols);
      std::vector<double> ys(rows), yv(rows);
      scalar::matvec(a.data(), rows, cols, x.data(), ys.data());
      avx2::matvec(a.data(), rows, cols, x.data(), yv.data());
      for (std::size_t i = 0; i < rows; ++i) EXPECT_NEAR(ys[i], yv[i], 1e-13);
    }
  }
  for (std::size_t n = 1; n <= 4096; n *= 2) {
    auto s = random_values(n, n);
    auto v = s;
    scalar::fwht(s.data(), n);
    avx2::fwht(v.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(s[i], v[i]) << "n=" << n << " i=" << i;
  }
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 9u, 17u, 64u, 1001u}) {
    const auto d = random_values(n, n + 7);
    EXPECT_EQ(scalar::min_entry(d.data(), n), avx2::min_entry(d.data(), n));
  }
}

TEST(Kernels, DispatchHonoursBackendChoice) {
  const Backend before = active_backend();
  set_active_backend(Backend::kScalar);
  EXPECT_EQ(active_backend(), Backend::kScalar);
  std::vector<double> v{3.0, -2.0, 5.0};
  EXPECT_EQ(min_entry(v), -2.0);
  if (have_avx2()) {
    set_active_backend(Backend::kAvx2);
    EXPECT_EQ(min_entry(v), -2.0);
  } else {
    EXPECT_THROW(set_active_backend(Backend::kAvx2), std::runtime_error);
  }
  set_active_backend(before);
}

TEST(Kernels, FwhtRejectsNonPowerOfTwo) {
  std::vector<double> v(6, 1.0);
  EXPECT_THROW(fwht(v), std::invalid_argument);
}

}  // namespace
}  // namespace sicmeas::kernels
