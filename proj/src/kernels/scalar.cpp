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

#include <cstddef>
#include <limits>

#include "sicmeas/kernels.hpp"

namespace sicmeas::kernels::scalar {

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double xc = x[c];
    const double* col = a + c * rows;
    for (std::size_t r = 0; r < rows; ++r) y[r] += col[r] * xc;
  }
}

void fwht(double* data, std::size_t size) {
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t j = block; j < block + half; ++j) {
        const double u = data[j];
        const double v = data[j + half];
        data[j] = u + v;
        data[j + half] = u - v;
      }
    }
  }
}

double min_entry(const double* data, std::size_t size) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size; ++i) {
    if (data[i] < best) best = data[i];
  }
  return best;
}

}  // namespace sicmeas::kernels::scalar
