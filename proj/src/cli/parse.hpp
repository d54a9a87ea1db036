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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sicmeas::cli::detail {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Decimal number or a fraction "a/b".
double parse_number(std::string_view s);
std::vector<double> parse_numbers(std::string_view s);
std::int64_t parse_int(std::string_view s);
bool parse_bool(std::string_view s);

/// "lo:hi:n" with n >= 1; n == 1 yields {lo}.
struct Grid {
  double lo;
  double hi;
  std::int64_t n;
  double at(std::int64_t i) const;
};
Grid parse_grid(std::string_view s);

}  // namespace sicmeas::cli::detail
