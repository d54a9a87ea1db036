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

// Compiled with -mavx2 -mfma on x86-64; only reached after a runtime CPU check.

#include <cstddef>
#include <limits>

#include "sicmeas/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define SICMEAS_HAVE_AVX2 1
#endif

namespace sicmeas::kernels::avx2 {

#ifdef SICMEAS_HAVE_AVX2

bool compiled() { return true; }

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  const std::size_t vec_rows = rows & ~std::size_t{3};
  for (std::size_t r = 0; r < rows; ++r) y[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double* col = a + c * rows;
    const __m256d xc = _mm256_set1_pd(x[c]);
    std::size_t r = 0;
    for (; r < vec_rows; r += 4) {
      __m256d acc = _mm256_loadu_pd(y + r);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(col + r), xc, acc);
      _mm256_storeu_pd(y + r, acc);
    }
    for (; r < rows; ++r) y[r] += col[r] * x[c];
  }
}

// Same butterfly order as the scalar kernel (add/sub only), so results are
// bitwise identical.
void fwht(double* data, std::size_t size) {
  std::size_t half = 1;
  // Strides 1 and 2 mix lanes inside one register; do them scalar.
  for (; half < size && half < 4; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t j = block; j < block + half; ++j) {
        const double u = data[j];
        const double v = data[j + half];
        data[j] = u + v;
        data[j + half] = u - v;
      }
    }
  }
  for (; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t j = block; j < block + half; j += 4) {
        const __m256d u = _mm256_loadu_pd(data + j);
        const __m256d v = _mm256_loadu_pd(data + j + half);
        _mm256_storeu_pd(data + j, _mm256_add_pd(u, v));
        _mm256_storeu_pd(data + j + half, _mm256_sub_pd(u, v));
      }
    }
  }
}

double min_entry(const double* data, std::size_t size) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (size >= 4) {
    __m256d acc = _mm256_set1_pd(best);
    for (; i + 4 <= size; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(data + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (double lane : lanes) best = lane < best ? lane : best;
  }
  for (; i < size; ++i) best = data[i] < best ? data[i] : best;
  return best;
}

#else

bool compiled() { return false; }
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  scalar::matvec(a, rows, cols, x, y);
}
void fwht(double* data, std::size_t size) { scalar::fwht(data, size); }
double min_entry(const double* data, std::size_t size) { return scalar::min_entry(data, size); }

#endif

}  // namespace sicmeas::kernels::avx2
