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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sicmeas/cli.hpp"
#include "sicmeas/gbv.hpp"
#include "sicmeas/types.hpp"

namespace sicmeas::cli {
namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) return num(x);
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
        else return x;
      },
      v);
}

ojson json_cell(const Value& v) {
  return std::visit([](const auto& x) { return ojson(x); }, v);
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace

std::string render(const ResultRecord& r, Format format, bool timing) {
  if (format == Format::kJson) {
    ojson j;
    j["experiment"] = r.experiment;
    j["seed"] = r.seed;
    j["monomial_order"] = gbv::kMonomialOrderTag;
    j["inputs"] = ojson::object();
    for (const auto& [k, v] : r.inputs) j["inputs"][k] = v;
    j["tolerances"] = ojson::object();
    for (const auto& [k, v] : r.tolerances) j["tolerances"][k] = v;
    j["summary"] = ojson::object();
    for (const auto& [k, v] : r.summary) j["summary"][k] = json_cell(v);
    j["columns"] = r.columns;
    j["rows"] = ojson::array();
    for (const auto& row : r.rows) {
      ojson jr = ojson::array();
      for (const Value& v : row) jr.push_back(json_cell(v));
      j["rows"].push_back(std::move(jr));
    }
    j["ok"] = r.ok;
    j["failure"] = r.failure;
    if (timing) j["duration_s"] = r.duration_s;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "# experiment: " << r.experiment << "\n# seed: " << r.seed << "\n# monomial_order: "
      << gbv::kMonomialOrderTag << "\n";
  for (const auto& [k, v] : r.inputs) out << "# input." << k << ": " << v << "\n";
  for (const auto& [k, v] : r.tolerances) out << "# tolerance." << k << ": " << num(v) << "\n";
  for (const auto& [k, v] : r.summary) out << "# summary." << k << ": " << csv_cell(v) << "\n";
  out << "# ok: " << (r.ok ? "true" : "false") << "\n";
  if (!r.ok) out << "# failure: " << r.failure << "\n";
  if (timing) out << "# duration_s: " << num(r.duration_s) << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
  out << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string render_error(std::string_view kind, std::string_view message) {
  ojson j;
  j["error"] = std::string(kind);
  j["message"] = std::string(message);
  return j.dump() + "\n";
}

int main_entry(int argc, char** argv) {
  CLI::App app{"sicmeas: qubit measurement in the SIC / generalized Bloch vector frame"};
  std::string positional, config_path;
  app.add_option("name", positional, "measure | chain | family-scan | uniqueness | entropy | chsh | negativity | "
                                           "broadcast | oracle-diff");
  app.add_option("--config", config_path, "key = value config file; flags override it");
  std::map<std::string, std::string> flags;
  bool reset_meter = false, no_timing = false;
  for (const std::string& key : known_keys()) {
    if (key == "reset-meter" || key == "timing") continue;
    app.add_option("--" + key, flags[key]);
  }
  app.add_flag("--reset-meter", reset_meter, "reset the meter to alpha=+1 before each chain step");
  app.add_flag("--no-timing", no_timing, "omit wall-clock duration from the output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << render_error("config", e.what());
    return 2;
  }

  ResultRecord record;
  ExperimentConfig config;
  try {
    if (!config_path.empty()) {
      if (!std::ifstream(config_path)) throw IoError("cannot read config file '" + config_path + "'");
      config = load_config_file(config_path);
    }
    for (const auto& [key, value] : flags) {
      if (app.count("--" + key)) config.set(key, value);
    }
    if (!positional.empty()) config.experiment = parse_experiment(positional);
    if (reset_meter) config.set("reset-meter", "true");
    if (no_timing) config.timing = false;
    record = run(config);
  } catch (const ConfigError& e) {
    std::cerr << render_error("config", e.what());
    return 2;
  } catch (const IoError& e) {
    std::cerr << render_error("io", e.what());
    return 3;
  } catch (const DomainError& e) {
    std::cerr << render_error("domain", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::cerr << render_error("invariant", e.what());
    return 1;
  }

  const std::string text = render(record, config.format, config.timing);
  if (config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(config.out);
    f << text;
    if (!f) {
      std::cerr << render_error("io", "cannot write '" + config.out + "'");
      return 3;
    }
  }
  if (!record.ok) {
    std::cerr << render_error("breach", record.failure);
    return 1;
  }
  return 0;
}

}  // namespace sicmeas::cli
