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

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "sicmeas/kernels.hpp"

namespace sicmeas::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (std::getenv("SICMEAS_FORCE_SCALAR") != nullptr) return Backend::kScalar;
  return detect_backend();
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string_view backend_name(Backend backend) {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

Backend detect_backend() {
  return avx2::compiled() && cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_active_backend(Backend backend) {
  if (backend == Backend::kAvx2 && detect_backend() != Backend::kAvx2) {
    throw std::runtime_error("AVX2/FMA backend not available on this CPU");
  }
  backend_slot().store(backend, std::memory_order_relaxed);
}

void matvec(std::span<const double> a_colmajor, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  if (a_colmajor.size() != rows * cols || x.size() != cols || y.size() != rows) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  if (active_backend() == Backend::kAvx2) {
    avx2::matvec(a_colmajor.data(), rows, cols, x.data(), y.data());
  } else {
    scalar::matvec(a_colmajor.data(), rows, cols, x.data(), y.data());
  }
}

void fwht(std::span<double> data) {
  if (!is_pow2(data.size())) throw std::invalid_argument("fwht: size must be a power of two");
  if (active_backend() == Backend::kAvx2) {
    avx2::fwht(data.data(), data.size());
  } else {
    scalar::fwht(data.data(), data.size());
  }
}

double min_entry(std::span<const double> data) {
  return active_backend() == Backend::kAvx2 ? avx2::min_entry(data.data(), data.size())
                                            : scalar::min_entry(data.data(), data.size());
}

}  // namespace sicmeas::kernels
