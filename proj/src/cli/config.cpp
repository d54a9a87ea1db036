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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "parse.hpp"
#include "sicmeas/cli.hpp"

namespace sicmeas::cli {
namespace detail {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

namespace {

double parse_plain(std::string_view s) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError("not a number: '" + t + "'");
  }
  return v;
}

}  // namespace

double parse_number(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_plain(s);
  const double den = parse_plain(s.substr(slash + 1));
  if (den == 0.0) throw ConfigError("zero denominator in '" + std::string(s) + "'");
  return parse_plain(s.substr(0, slash)) / den;
}

std::vector<double> parse_numbers(std::string_view s) {
  std::vector<double> out;
  for (const std::string& part : split(s, ',')) out.push_back(parse_number(part));
  return out;
}

std::int64_t parse_int(std::string_view s) {
  const std::string t = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) throw ConfigError("not an integer: '" + t + "'");
  return v;
}

bool parse_bool(std::string_view s) {
  std::string t = trim(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw ConfigError("not a boolean: '" + t + "'");
}

double Grid::at(std::int64_t i) const {
  if (n == 1) return lo;
  // Integer ratio keeps grid points such as 1.0 exact.
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

Grid parse_grid(std::string_view s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ConfigError("grid must be lo:hi:n, got '" + std::string(s) + "'");
  Grid g{parse_number(parts[0]), parse_number(parts[1]), parse_int(parts[2])};
  if (g.n < 1 || g.hi < g.lo) throw ConfigError("grid needs n >= 1 and hi >= lo");
  return g;
}

}  // namespace detail

namespace {

constexpr std::pair<Experiment, std::string_view> kNames[] = {
    {Experiment::kMeasure, "measure"},       {Experiment::kChain, "chain"},
    {Experiment::kFamilyScan, "family-scan"}, {Experiment::kUniqueness, "uniqueness"},
    {Experiment::kEntropy, "entropy"},       {Experiment::kChsh, "chsh"},
    {Experiment::kNegativity, "negativity"}, {Experiment::kBroadcast, "broadcast"},
    {Experiment::kOracleDiff, "oracle-diff"},
};

}  // namespace

std::string_view to_string(Experiment e) {
  for (const auto& [k, name] : kNames) {
    if (k == e) return name;
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  const std::string t = detail::trim(name);
  for (const auto& [k, n] : kNames) {
    if (n == t) return k;
  }
  throw ConfigError("unknown experiment '" + t + "'");
}

Format parse_format(std::string_view name) {
  const std::string t = detail::trim(name);
  if (t == "csv" || t == "CSV") return Format::kCsv;
  if (t == "json" || t == "JSON") return Format::kJson;
  throw ConfigError("unknown format '" + t + "' (csv or json)");
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "seed", "experiment", "s", "m", "xyz", "grid", "samples", "chain-len", "observers",
      "format", "out", "reset-meter", "settings", "scales", "workers", "timing",
  };
  return keys;
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& value) {
  const std::string key = detail::trim(raw_key);
  if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
    throw ConfigError("unknown key '" + key + "'");
  }
  if (key == "seed") {
    const std::string t = detail::trim(value);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) throw ConfigError("bad seed '" + t + "'");
    seed = v;
  } else if (key == "experiment") {
    experiment = parse_experiment(value);
  } else if (key == "format") {
    format = parse_format(value);
  } else if (key == "out") {
    out = detail::trim(value);
  } else if (key == "timing") {
    timing = detail::parse_bool(value);
  } else {
    params[key] = detail::trim(value);
  }
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = detail::trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    try {
      config.set(body.substr(0, eq), body.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace sicmeas::cli
