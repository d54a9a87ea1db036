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

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sicmeas/cli.hpp"
#include "sicmeas/types.hpp"

namespace sicmeas::cli {
namespace {

ExperimentConfig config_for(Experiment e, std::vector<std::pair<std::string, std::string>> kv = {}) {
  ExperimentConfig c;
  c.experiment = e;
  c.timing = false;
  for (const auto& [k, v] : kv) c.set(k, v);
  return c;
}

int call(std::vector<std::string> args) {
  args.insert(args.begin(), "sicmeas");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

TEST(Cli, ExperimentNamesRoundTrip) {
  for (Experiment e : {Experiment::kMeasure, Experiment::kChain, Experiment::kFamilyScan, Experiment::kUniqueness,
                       Experiment::kEntropy, Experiment::kChsh, Experiment::kNegativity, Experiment::kBroadcast,
                       Experiment::kOracleDiff}) {
    EXPECT_EQ(parse_experiment(to_string(e)), e);
  }
  EXPECT_THROW(parse_experiment("nope"), ConfigError);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Cli, ConfigText) {
  const ExperimentConfig c = parse_config_text(
      "# comment\n"
      "experiment = chain\n"
      "seed = 42   # trailing comment\n"
      "\n"
      "s = 0.1, 0.2, 0.3\n"
      "format = json\n");
  EXPECT_EQ(c.seed, 42u);
  ASSERT_TRUE(c.experiment);
  EXPECT_EQ(*c.experiment, Experiment::kChain);
  EXPECT_EQ(c.format, Format::kJson);
  EXPECT_EQ(c.params.at("s"), "0.1, 0.2, 0.3");
  EXPECT_THROW(parse_config_text("bogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("seed 1\n"), ConfigError);
  EXPECT_THROW(parse_config_text("seed = -3\n"), ConfigError);
}

TEST(Cli, MeasureRecord) {
  const ResultRecord r = run(config_for(Experiment::kMeasure, {{"s", "0.3,-0.2,0.5"}, {"m", "0,0.6,0.8"}}));
  EXPECT_TRUE(r.ok);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_NEAR(std::get<double>(r.rows[0][1]), 0.64, 1e-15);
  EXPECT_NEAR(std::get<double>(r.rows[1][1]), 0.36, 1e-15);
}

TEST(Cli, SicStateInput) {
  // (1 +- 1/sqrt3)/4 pattern is |0>.
  const double hi = 0.25 * (1 + 1 / std::sqrt(3.0)), lo = 0.25 * (1 - 1 / std::sqrt(3.0));
  char spec[200];
  std::snprintf(spec, sizeof spec, "%.17g,%.17g,%.17g,%.17g", hi, lo, lo, hi);
  const ResultRecord r = run(config_for(Experiment::kEntropy, {{"s", spec}, {"m", "0,0,1"}}));
  EXPECT_NEAR(std::get<double>(r.rows[0][2]), 0.0, 1e-12);
}

TEST(Cli, InputValidation) {
  EXPECT_THROW(run(config_for(Experiment::kMeasure, {{"s", "1,1,0"}})), DomainError);
  EXPECT_THROW(run(config_for(Experiment::kMeasure, {{"m", "0,0,2"}})), DomainError);
  EXPECT_THROW(run(config_for(Experiment::kMeasure, {{"s", "1,2"}})), ConfigError);
  EXPECT_THROW(run(config_for(Experiment::kOracleDiff, {{"samples", "0"}})), ConfigError);
  EXPECT_THROW(run(config_for(Experiment::kChsh, {{"settings", "other"}})), ConfigError);
  EXPECT_THROW(run(ExperimentConfig{}), ConfigError);
}

TEST(Cli, RenderingIsDeterministic) {
  for (Experiment e : {Experiment::kChain, Experiment::kFamilyScan, Experiment::kNegativity, Experiment::kChsh}) {
    ExperimentConfig c = config_for(e, {{"samples", "50"}, {"settings", "random"}});
    if (e == Experiment::kChsh) c.params.erase("samples");
    if (e != Experiment::kChsh) c.params.erase("settings");
    const std::string a = render(run(c), Format::kCsv, false);
    c.set("workers", "3");
    const std::string b = render(run(c), Format::kCsv, false);
    EXPECT_EQ(a, b) << to_string(e);
    EXPECT_EQ(render(run(c), Format::kJson, false), render(run(c), Format::kJson, false));
  }
}

TEST(Cli, SeedChangesRandomPayload) {
  ExperimentConfig c = config_for(Experiment::kChain);
  const std::string a = render(run(c), Format::kCsv, false);
  c.seed = 7;
  EXPECT_NE(a, render(run(c), Format::kCsv, false));
}

TEST(Cli, JsonShape) {
  const ResultRecord r = run(config_for(Experiment::kUniqueness, {{"grid", "-1:1:5"}}));
  const auto j = nlohmann::json::parse(render(r, Format::kJson, true));
  EXPECT_EQ(j["experiment"], "uniqueness");
  EXPECT_EQ(j["monomial_order"], "deglex+meter3/v1");
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["summary"]["zero_count"], 1);
  EXPECT_TRUE(j.contains("duration_s"));
  EXPECT_FALSE(nlohmann::json::parse(render(r, Format::kJson, false)).contains("duration_s"));
}

TEST(Cli, CsvShape) {
  const std::string text = render(run(config_for(Experiment::kEntropy)), Format::kCsv, false);
  EXPECT_EQ(text.rfind("# experiment: entropy\n", 0), 0u);
  EXPECT_NE(text.find("\nh2_before,h2_after,delta_direct,delta_closed_form,abs_diff\n"), std::string::npos);
  EXPECT_EQ(text.find("duration_s"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  const std::string path = ::testing::TempDir() + "sicmeas_cli_test.csv";
  EXPECT_EQ(call({"entropy", "--out", path}), 0);
  std::ifstream f(path);
  EXPECT_TRUE(f.good());
  EXPECT_EQ(call({"measure", "--s", "2,0,0", "--out", path}), 2);
  EXPECT_EQ(call({"nope"}), 2);
  EXPECT_EQ(call({"measure", "--config", "/nonexistent/sicmeas.cfg"}), 3);
  EXPECT_EQ(call({"measure", "--out", "/nonexistent/dir/x.csv"}), 3);

  const std::string cfg = ::testing::TempDir() + "sicmeas_cli_test.cfg";
  std::ofstream(cfg) << "experiment = broadcast\nobservers = 2\nout = " << path << "\n";
  EXPECT_EQ(call({"--config", cfg, "--observers", "4"}), 0);
  std::ifstream in(path);
  const std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(body.find("# input.observers: 4"), std::string::npos);
}

}  // namespace
}  // namespace sicmeas::cli
