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

// Experiment runner behind the `sicmeas` command-line tool. Each experiment
// is a composition of library calls; this layer only parses inputs, fans out
// parameter sweeps and assembles result tables.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace sicmeas::cli {

enum class Experiment {
  kMeasure,
  kChain,
  kFamilyScan,
  kUniqueness,
  kEntropy,
  kChsh,
  kNegativity,
  kBroadcast,
  kOracleDiff,
};

enum class Format { kCsv, kJson };

std::string_view to_string(Experiment e);
Experiment parse_experiment(std::string_view name);
Format parse_format(std::string_view name);

/// Bad configuration or usage; exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Keys accepted in config files and as --flags.
const std::vector<std::string>& known_keys();

struct ExperimentConfig {
  std::uint64_t seed = 20251018;
  std::optional<Experiment> experiment;
  /// Experiment parameters by key (s, m, xyz, grid, samples, chain-len,
  /// observers, settings, scales, reset-meter, workers).
  std::map<std::string, std::string> params;
  std::string out;  // empty: stdout
  Format format = Format::kCsv;
  bool timing = true;

  /// Sets one key; throws ConfigError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
};

/// Flat `key = value` text; `#` starts a comment, blank lines are ignored.
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig load_config_file(const std::string& path);

using Value = std::variant<double, std::int64_t, bool, std::string>;

struct ResultRecord {
  std::string experiment;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::pair<std::string, Value>> summary;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  /// False when an invariant or tolerance was breached.
  bool ok = true;
  std::string failure;
  double duration_s = 0.0;
};

ResultRecord run(const ExperimentConfig& config);

std::string render(const ResultRecord& record, Format format, bool timing);
std::string render_error(std::string_view kind, std::string_view message);

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace sicmeas::cli
