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

#include <cstddef>
#include <span>
#include <string_view>

namespace sicmeas::kernels {

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend backend);

/// Best backend the running CPU supports.
Backend detect_backend();

/// Backend used by the dispatching entry points below. Defaults to
/// detect_backend(), or kScalar when SICMEAS_FORCE_SCALAR is set in the
/// environment.
Backend active_backend();

/// Overrides the active backend. Requesting kAvx2 on a CPU without AVX2/FMA
/// throws std::runtime_error.
void set_active_backend(Backend backend);

// y = A x with A stored column-major (rows x cols). y must not alias A or x.
void matvec(std::span<const double> a_colmajor, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);

// In-place unnormalized Walsh-Hadamard transform:
//   data[k] <- sum_x (-1)^popcount(x & k) data[x].
// data.size() must be a power of two.
void fwht(std::span<double> data);

// Smallest element; +inf for an empty span.
double min_entry(std::span<const double> data);

// Explicit per-backend entry points, used by the equivalence tests.
namespace scalar {
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void fwht(double* data, std::size_t size);
double min_entry(const double* data, std::size_t size);
}  // namespace scalar

namespace avx2 {
bool compiled();
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void fwht(double* data, std::size_t size);
double min_entry(const double* data, std::size_t size);
}  // namespace avx2

}  // namespace sicmeas::kernels
