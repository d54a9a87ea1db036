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
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "parse.hpp"
#include "sicmeas/cli.hpp"
#include "sicmeas/gbv.hpp"
#include "sicmeas/measurement.hpp"
#include "sicmeas/oracle.hpp"
#include "sicmeas/parallel.hpp"
#include "sicmeas/sampling.hpp"
#include "sicmeas/sic_frame.hpp"

namespace sicmeas::cli {
namespace {

using detail::Grid;

constexpr double kEntryTol = 1e-12;
constexpr double kDerivedTol = 1e-9;

class Params {
 public:
  explicit Params(const ExperimentConfig& c) : config_(c) {}

  bool has(const std::string& key) const { return config_.params.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const {
    const auto it = config_.params.find(key);
    return it == config_.params.end() ? fallback : it->second;
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    return has(key) ? detail::parse_int(get(key, "")) : fallback;
  }
  bool flag(const std::string& key) const { return has(key) && detail::parse_bool(get(key, "false")); }

 private:
  const ExperimentConfig& config_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BlochVec parse_state(const std::string& spec) {
  const std::vector<double> v = detail::parse_numbers(spec);
  if (v.size() == 3) return BlochVec(v[0], v[1], v[2]);
  if (v.size() == 4) {
    const sic::SicDist p({v[0], v[1], v[2], v[3]});
    if (p.min_entry() < -kPositivityTol) throw DomainError("SIC state has a negative entry");
    return BlochVec(sic::bloch_from_sic(p));
  }
  throw ConfigError("state spec needs 3 (Bloch) or 4 (SIC) components: '" + spec + "'");
}

Direction parse_direction(const std::string& spec) {
  const std::vector<double> v = detail::parse_numbers(spec);
  if (v.size() != 3) throw ConfigError("direction needs 3 components: '" + spec + "'");
  return Direction(v[0], v[1], v[2]);
}

std::vector<Direction> parse_directions(const std::string& spec) {
  std::vector<Direction> out;
  for (const std::string& part : detail::split(spec, ';')) out.push_back(parse_direction(part));
  return out;
}

meas::FamilyParams parse_xyz(const std::string& spec) {
  const std::vector<double> v = detail::parse_numbers(spec);
  if (v.size() != 3) throw ConfigError("xyz needs 3 components: '" + spec + "'");
  return {v[0], v[1], v[2]};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Vec3& v) { return fmt(v[0]) + "," + fmt(v[1]) + "," + fmt(v[2]); }

unsigned workers_of(const Params& p) {
  const std::int64_t w = p.integer("workers", static_cast<std::int64_t>(default_workers()));
  if (w < 1) throw ConfigError("workers must be >= 1");
  return static_cast<unsigned>(w);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double max_abs_diff(const Vec3& a, const Vec3& b) { return (a - b).cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------

void run_measure(const Params& p, ResultRecord& r) {
  const BlochVec s = parse_state(p.get("s", "0,0,1"));
  const Direction m = parse_direction(p.get("m", "0,0,1"));
  const meas::FamilyParams xyz = parse_xyz(p.get("xyz", "1,0,0"));
  r.inputs = {{"s", fmt(s.vec())}, {"m", fmt(m.vec())}, {"xyz", fmt(Vec3(xyz.x, xyz.y, xyz.z))}};
  r.tolerances = {{"positivity", kPositivityTol}, {"born", kEntryTol}, {"collapse", kDerivedTol}};

  const meas::MeasProcess process = meas::build_S(m, xyz);
  const meas::Outcome outcome = meas::measure_once(meas::QubitMeterState::prepare(sic::sic_from_bloch(s)), process);
  const oracle::DensityMat rho = oracle::density_from_bloch(s.vec());
  const oracle::MeasAxis axis(m.vec());

  r.columns = {"beta", "p_beta", "p_beta_oracle", "post_sx", "post_sy", "post_sz",
               "post_p_pp", "post_p_pm", "post_p_mp", "post_p_mm"};
  double dev_born = 0.0, dev_collapse = 0.0;
  for (int beta : {1, -1}) {
    const double p_frame = outcome.state.outcome_probability(beta);
    const double p_oracle = oracle::born_probability(rho, axis, beta);
    dev_born = std::max(dev_born, std::abs(p_frame - p_oracle));
    std::vector<Value> row{std::int64_t{beta}, p_frame, p_oracle};
    if (p_frame > 1e-12) {
      const sic::SicDist post = outcome.state.conditional_qubit(beta);
      const Vec3 post_s = sic::bloch_from_sic(post);
      dev_collapse = std::max(dev_collapse,
                              max_abs_diff(post_s, oracle::bloch_from_density(oracle::luders_collapse(rho, axis, beta))));
      row.insert(row.end(), {post_s[0], post_s[1], post_s[2], post[0], post[1], post[2], post[3]});
    } else {
      for (int i = 0; i < 7; ++i) row.emplace_back(std::string());
    }
    r.rows.push_back(std::move(row));
  }
  r.summary = {{"process_min_entry", process.matrix().min_entry()},
               {"process_negativity", process.matrix().negativity()},
               {"output_min_entry", outcome.telemetry.min_entry},
               {"clamped_entries", static_cast<std::int64_t>(outcome.telemetry.clamped)},
               {"max_dev_born", dev_born},
               {"max_dev_collapse", dev_collapse}};
  if (dev_born > kEntryTol || dev_collapse > kDerivedTol) {
    r.ok = false;
    r.failure = "measurement disagrees with the density-matrix oracle";
  }
}

void run_chain(const Params& p, ResultRecord& r, std::uint64_t seed) {
  const BlochVec s = parse_state(p.get("s", "0,0,1"));
  std::vector<Direction> dirs;
  if (p.has("m")) {
    dirs = parse_directions(p.get("m", ""));
  } else {
    const std::int64_t len = p.integer("chain-len", 20);
    if (len < 1) throw ConfigError("chain-len must be >= 1");
    Sampler rng(seed);
    for (std::int64_t i = 0; i < len; ++i) dirs.push_back(Direction::normalized(rng.unit_vector()));
  }
  const bool reset = p.flag("reset-meter");
  r.inputs = {{"s", fmt(s.vec())}, {"chain-len", std::to_string(dirs.size())}, {"reset-meter", reset ? "true" : "false"}};
  r.tolerances = {{"positivity", kPositivityTol}, {"oracle_bloch", kDerivedTol}};

  const meas::Trajectory traj = meas::measure_chain(meas::QubitMeterState::prepare(sic::sic_from_bloch(s)), dirs,
                                                    reset ? meas::MeterPolicy::kReset : meas::MeterPolicy::kKeep);

  r.columns = {"step", "m_x", "m_y", "m_z", "meter_p_plus", "meter_p_minus", "min_entry", "clamped",
               "qubit_sx", "qubit_sy", "qubit_sz", "oracle_sx", "oracle_sy", "oracle_sz"};
  oracle::DensityMat rho = oracle::density_from_bloch(s.vec());
  double dev = 0.0, min_entry = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    // Outcome-averaged Lueders update.
    const oracle::MeasAxis axis(dirs[i].vec());
    oracle::MatXc avg = oracle::MatXc::Zero(2, 2);
    for (int beta : {1, -1}) {
      const double pb = oracle::born_probability(rho, axis, beta);
      if (pb > 1e-12) avg += pb * oracle::luders_collapse(rho, axis, beta).matrix();
    }
    rho = oracle::DensityMat(avg);
    const Vec3 expect = oracle::bloch_from_density(rho);
    const Vec3 got = sic::bloch_from_sic(traj.states[i].qubit_marginal());
    dev = std::max(dev, max_abs_diff(got, expect));
    min_entry = std::min(min_entry, traj.steps[i].min_entry);
    const Vec3& m = dirs[i].vec();
    r.rows.push_back({static_cast<std::int64_t>(i + 1), m[0], m[1], m[2], traj.states[i].outcome_probability(1),
                      traj.states[i].outcome_probability(-1), traj.steps[i].min_entry,
                      static_cast<std::int64_t>(traj.steps[i].clamped), got[0], got[1], got[2], expect[0], expect[1],
                      expect[2]});
  }
  r.summary = {{"steps", static_cast<std::int64_t>(dirs.size())},
               {"all_nonnegative", traj.nonnegative},
               {"min_entry", min_entry},
               {"max_dev_oracle", dev}};
  if (!traj.nonnegative || dev > kDerivedTol) {
    r.ok = false;
    r.failure = !traj.nonnegative ? "qubit-meter distribution became negative" : "qubit marginal disagrees with oracle";
  }
}

struct FamilyPoint {
  double x, y, z;
  double process_min;
  double oneshot_dev;
  double repeat_min;
  std::int64_t first_negative;
};

void run_family_scan(const Params& p, ResultRecord& r, std::uint64_t seed) {
  const Direction m = parse_direction(p.get("m", "0,0,1"));
  const Grid grid = detail::parse_grid(p.get("grid", "-3:3:7"));
  const std::int64_t samples = p.integer("samples", 100);
  const std::int64_t repeats = p.integer("chain-len", 6);
  if (samples < 0 || repeats < 1) throw ConfigError("samples must be >= 0 and chain-len >= 1");
  const bool fixed_state = p.has("s");
  const BlochVec s_fixed = fixed_state ? parse_state(p.get("s", "")) : BlochVec();
  r.inputs = {{"m", fmt(m.vec())}, {"grid", p.get("grid", "-3:3:7")}, {"samples", std::to_string(samples)},
              {"chain-len", std::to_string(repeats)}, {"s", fixed_state ? fmt(s_fixed.vec()) : "random-pure"}};
  r.tolerances = {{"positivity", kPositivityTol}, {"oneshot", kDerivedTol}};

  const std::size_t grid_points = static_cast<std::size_t>(grid.n * grid.n * grid.n);
  const std::size_t total = grid_points + static_cast<std::size_t>(samples);
  const meas::MeasProcess canonical = meas::build_S(m);

  const auto points = parallel_map(total, workers_of(p), [&](std::size_t i) {
    Sampler rng(derive_seed(seed, i));
    meas::FamilyParams xyz;
    if (i < grid_points) {
      const auto n = static_cast<std::size_t>(grid.n);
      xyz = {grid.at(static_cast<std::int64_t>(i / (n * n))), grid.at(static_cast<std::int64_t>((i / n) % n)),
             grid.at(static_cast<std::int64_t>(i % n))};
    } else {
      xyz = {rng.uniform(grid.lo, grid.hi), rng.uniform(grid.lo, grid.hi), rng.uniform(grid.lo, grid.hi)};
    }
    const BlochVec s = fixed_state ? s_fixed : BlochVec(rng.unit_vector());
    const meas::MeasProcess process = meas::build_S(m, xyz);
    const auto state = meas::QubitMeterState::prepare(sic::sic_from_bloch(s));
    const auto one = process.matrix().apply(state.dist().values());
    const auto ref = canonical.matrix().apply(state.dist().values());
    const meas::Trajectory traj = meas::measure_repeat(state, process, static_cast<int>(repeats));
    FamilyPoint pt{xyz.x, xyz.y, xyz.z, process.matrix().min_entry(), max_abs_diff(one, ref),
                   std::numeric_limits<double>::infinity(), 0};
    for (std::size_t k = 0; k < traj.steps.size(); ++k) {
      pt.repeat_min = std::min(pt.repeat_min, traj.steps[k].min_entry);
      if (pt.first_negative == 0 && traj.steps[k].min_entry < -kPositivityTol) pt.first_negative = static_cast<std::int64_t>(k + 1);
    }
    return pt;
  });

  r.columns = {"index", "x", "y", "z", "process_min_entry", "oneshot_max_dev", "repeat_min_entry", "first_negative_step"};
  std::int64_t positive_members = 0, repeat_nonneg = 0;
  double worst_oneshot = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const FamilyPoint& pt = points[i];
    if (pt.process_min >= -kPositivityTol) ++positive_members;
    if (pt.first_negative == 0) ++repeat_nonneg;
    worst_oneshot = std::max(worst_oneshot, pt.oneshot_dev);
    r.rows.push_back({static_cast<std::int64_t>(i), pt.x, pt.y, pt.z, pt.process_min, pt.oneshot_dev, pt.repeat_min,
                      pt.first_negative});
  }
  r.summary = {{"points", static_cast<std::int64_t>(points.size())},
               {"positive_members", positive_members},
               {"repeat_nonnegative_points", repeat_nonneg},
               {"max_oneshot_dev", worst_oneshot}};
  if (worst_oneshot > kDerivedTol) {
    r.ok = false;
    r.failure = "a family member deviates from the canonical one-shot output";
  }
}

void run_uniqueness(const Params& p, ResultRecord& r) {
  const Direction m = parse_direction(p.get("m", "0,0,1"));
  const std::string grid_spec = p.get("grid", "-2:2:41");
  const Grid grid = detail::parse_grid(grid_spec);
  r.inputs = {{"m", fmt(m.vec())}, {"grid", grid_spec}};
  r.tolerances = {{"zero", kDerivedTol}};

  const auto n = static_cast<std::size_t>(grid.n);
  struct Point {
    double x, y, z, residual, correction;
  };
  const auto points = parallel_map(n * n * n, workers_of(p), [&](std::size_t i) {
    const meas::FamilyParams xyz{grid.at(static_cast<std::int64_t>(i / (n * n))),
                                 grid.at(static_cast<std::int64_t>((i / n) % n)),
                                 grid.at(static_cast<std::int64_t>(i % n))};
    return Point{xyz.x, xyz.y, xyz.z, meas::uniqueness_residual(xyz, m), meas::correction_term(xyz, m)};
  });

  r.columns = {"x", "y", "z", "residual", "correction_term"};
  std::int64_t zeros = 0, correction_zeros = 0;
  bool only_canonical = true;
  double min_nonzero = std::numeric_limits<double>::infinity();
  for (const Point& pt : points) {
    if (pt.correction <= kDerivedTol) ++correction_zeros;
    if (pt.residual <= kDerivedTol) {
      ++zeros;
      only_canonical = only_canonical && meas::FamilyParams{pt.x, pt.y, pt.z}.is_canonical();
      r.rows.push_back({pt.x, pt.y, pt.z, pt.residual, pt.correction});
    } else {
      min_nonzero = std::min(min_nonzero, pt.residual);
    }
  }
  r.summary = {{"grid_points", static_cast<std::int64_t>(points.size())},
               {"zero_count", zeros},
               {"zero_set_is_canonical", only_canonical && zeros <= 1},
               {"min_nonzero_residual", min_nonzero},
               {"correction_zero_count", correction_zeros}};
  if (!(only_canonical && zeros <= 1)) {
    r.ok = false;
    r.failure = "uniqueness residual vanishes away from (1,0,0)";
  }
}

void run_entropy(const Params& p, ResultRecord& r) {
  const BlochVec s = parse_state(p.get("s", "0,0,1"));
  const Direction m = parse_direction(p.get("m", "1,0,0"));
  r.inputs = {{"s", fmt(s.vec())}, {"m", fmt(m.vec())}};
  r.tolerances = {{"closed_form", kDerivedTol}};
  const meas::EntropyDelta d = meas::entropy_delta(s, m);
  r.columns = {"h2_before", "h2_after", "delta_direct", "delta_closed_form", "abs_diff"};
  r.rows.push_back({d.before, d.after, d.direct, d.closed_form, std::abs(d.direct - d.closed_form)});
  r.summary = {{"delta_h2_bits", d.direct}};
  if (std::abs(d.direct - d.closed_form) > kDerivedTol) {
    r.ok = false;
    r.failure = "closed-form entropy difference disagrees with direct H2";
  }
}

void run_chsh(const Params& p, ResultRecord& r, std::uint64_t seed) {
  const std::string which = p.get("settings", "tsirelson");
  sic::ChshSettings settings = sic::ChshSettings::tsirelson();
  if (which == "equal") {
    settings = sic::ChshSettings::all_equal(parse_direction(p.get("m", "0,0,1")));
  } else if (which == "random") {
    Sampler rng(seed);
    const auto d = [&] { return Direction::normalized(rng.unit_vector()); };
    settings = {d(), d(), d(), d()};
  } else if (which != "tsirelson") {
    throw ConfigError("settings must be tsirelson, equal or random");
  }
  r.inputs = {{"settings", which}, {"a1", fmt(settings.a1.vec())}, {"a2", fmt(settings.a2.vec())},
              {"b1", fmt(settings.b1.vec())}, {"b2", fmt(settings.b2.vec())}};
  r.tolerances = {{"oracle", kDerivedTol}};

  const sic::SicDist2 singlet = sic::singlet_sic();
  const oracle::DensityMat rho = oracle::singlet_density();
  r.columns = {"pair", "E_frame", "E_oracle"};
  const std::array<std::pair<const char*, std::pair<const Direction*, const Direction*>>, 4> pairs{{
      {"a1b1", {&settings.a1, &settings.b1}},
      {"a1b2", {&settings.a1, &settings.b2}},
      {"a2b1", {&settings.a2, &settings.b1}},
      {"a2b2", {&settings.a2, &settings.b2}},
  }};
  for (const auto& [name, ab] : pairs) {
    r.rows.push_back({std::string(name), sic::correlator_from_sic(singlet, *ab.first, *ab.second),
                      oracle::correlator(rho, oracle::MeasAxis(ab.first->vec()), oracle::MeasAxis(ab.second->vec()))});
  }
  const double frame = sic::chsh_from_sic(singlet, settings);
  const double orc = oracle::chsh_value(rho, oracle::MeasAxis(settings.a1.vec()), oracle::MeasAxis(settings.a2.vec()),
                                        oracle::MeasAxis(settings.b1.vec()), oracle::MeasAxis(settings.b2.vec()));
  const auto& v = singlet.values();
  r.summary = {{"chsh_frame", frame},
               {"chsh_oracle", orc},
               {"abs_diff", std::abs(frame - orc)},
               {"singlet_min_entry", *std::min_element(v.begin(), v.end())},
               {"tsirelson_bound", 2.0 * std::sqrt(2.0)}};
  if (std::abs(frame - orc) > kDerivedTol) {
    r.ok = false;
    r.failure = "frame-side CHSH disagrees with oracle";
  }
}

void run_negativity(const Params& p, ResultRecord& r, std::uint64_t seed) {
  const std::int64_t samples = p.integer("samples", 1000);
  const std::int64_t directions = p.integer("grid", 1000);
  const std::string scales_spec = p.get("scales", "0,1/3,1");
  if (samples < 0 || directions < 1) throw ConfigError("samples must be >= 0 and grid >= 1");
  const std::vector<double> scales = detail::parse_numbers(scales_spec);
  r.inputs = {{"samples", std::to_string(samples)}, {"grid", std::to_string(directions)}, {"scales", scales_spec}};
  r.tolerances = {{"positivity", kPositivityTol}};

  std::vector<Vec3> random_m(static_cast<std::size_t>(samples));
  Sampler rng(seed);
  for (Vec3& v : random_m) v = rng.unit_vector();
  const auto mins = parallel_map(random_m.size(), workers_of(p), [&](std::size_t i) {
    return meas::build_S(Direction::normalized(random_m[i])).matrix().min_entry();
  });
  const double largest_min = mins.empty() ? -std::numeric_limits<double>::infinity() : *std::max_element(mins.begin(), mins.end());
  const bool all_negative = largest_min < -kPositivityTol;

  const auto verdicts = parallel_map(scales.size(), workers_of(p), [&](std::size_t i) {
    return meas::positivity_necessity_check(scales[i], static_cast<std::size_t>(directions));
  });
  r.columns = {"scale", "directions", "min_entry", "negative_directions", "nonnegative_everywhere", "negative_everywhere"};
  bool ok = all_negative;
  for (const auto& v : verdicts) {
    r.rows.push_back({v.scale, static_cast<std::int64_t>(v.directions), v.min_entry,
                      static_cast<std::int64_t>(v.negative_directions), v.nonnegative_everywhere, v.negative_everywhere});
    if (v.scale <= 1.0 / 3.0 + 1e-15) ok = ok && v.nonnegative_everywhere;
    if (v.scale >= 1.0) ok = ok && v.negative_everywhere;
  }
  r.summary = {{"random_directions", samples},
               {"random_largest_min_entry", largest_min},
               {"random_all_negative", all_negative}};
  if (!ok) {
    r.ok = false;
    r.failure = "negativity pattern differs from the |m| <= 1/3 necessity bound";
  }
}

void run_broadcast(const Params& p, ResultRecord& r) {
  const BlochVec s = parse_state(p.get("s", "0,0,1"));
  const Direction m = parse_direction(p.get("m", "0,0,1"));
  const std::int64_t observers = p.integer("observers", 3);
  if (observers < 0 || observers > 9) throw ConfigError("observers must be in [0, 9]");
  r.inputs = {{"s", fmt(s.vec())}, {"m", fmt(m.vec())}, {"observers", std::to_string(observers)}};
  r.tolerances = {{"correlation", kEntryTol}, {"marginal", kEntryTol}};

  const auto state = meas::QubitMeterState::prepare(sic::sic_from_bloch(s));
  const meas::MeasProcess process = meas::build_S(m);
  const gbv::BitDist joint = meas::broadcast(state, process, static_cast<int>(observers));
  const meas::Outcome once = meas::measure_once(state, process);

  r.columns = {"index", "beta", "b", "b2"};
  for (std::int64_t i = 1; i <= observers; ++i) r.columns.push_back("gamma_" + std::to_string(i));
  r.columns.push_back("p");
  const int n_bits = joint.n_bits();
  const std::size_t obs_states = std::size_t{1} << observers;
  double violation = 0.0;
  std::vector<double> marginal(meas::kStates, 0.0);
  for (std::size_t idx = 0; idx < joint.size(); ++idx) {
    const std::vector<int> bits = gbv::config_bits(n_bits, idx);
    std::vector<Value> row{static_cast<std::int64_t>(idx)};
    for (int b : bits) row.emplace_back(std::int64_t{b});
    row.emplace_back(joint[idx]);
    r.rows.push_back(std::move(row));
    marginal[idx / obs_states] += joint[idx];
    for (std::size_t k = 3; k < bits.size(); ++k) {
      if (bits[k] != bits[0]) {
        violation += std::abs(joint[idx]);
        break;
      }
    }
  }
  const double marginal_dev = max_abs_diff(marginal, once.state.dist().values());
  r.summary = {{"observers", observers},
               {"correlation_violation", violation},
               {"marginal_max_dev", marginal_dev},
               {"min_entry", joint.min_entry()}};
  if (violation > kEntryTol || marginal_dev > kEntryTol || joint.min_entry() < -kPositivityTol) {
    r.ok = false;
    r.failure = "broadcast lost the beta-gamma correlation or changed the qubit-meter marginal";
  }
}

// Cross-validation of every frame-side route against the oracle.
void run_oracle_diff(const Params& p, ResultRecord& r, std::uint64_t seed) {
  const std::int64_t samples = p.integer("samples", 1000);
  if (samples < 1) throw ConfigError("samples must be >= 1");
  r.inputs = {{"samples", std::to_string(samples)}};

  struct Category {
    std::string name;
    double tol;
    double worst = 0.0;
    std::string offender;
  };
  std::vector<Category> cats = {{"states", kEntryTol, 0.0, {}},  {"channels", kDerivedTol, 0.0, {}}, {"born", kEntryTol, 0.0, {}},
                                {"collapse", kEntryTol, 0.0, {}}, {"luders", kEntryTol, 0.0, {}}, {"chsh", kDerivedTol, 0.0, {}}};
  const auto note = [](Category& c, double dev, const std::string& inputs) {
    if (dev > c.worst) {
      c.worst = dev;
      if (dev > c.tol && c.offender.empty()) c.offender = inputs;
    }
  };
  const auto oracle_sic = [](const oracle::DensityMat& rho) { return oracle::sic_probabilities(rho); };

  for (std::size_t c = 0; c < cats.size(); ++c) {
    Sampler rng(derive_seed(seed, c));
    Category& cat = cats[c];
    for (std::int64_t i = 0; i < samples; ++i) {
      const Vec3 sv = rng.bloch_in_ball();
      const BlochVec s(sv);
      const oracle::DensityMat rho = oracle::density_from_bloch(sv);
      const std::string tag = "sample=" + std::to_string(i) + " s=" + fmt(sv);
      if (cat.name == "states") {
        note(cat, max_abs_diff(sic::sic_from_bloch(s).values(), oracle_sic(rho)), tag);
      } else if (cat.name == "channels") {
        const Eigen::Matrix2cd u = rng.unitary2();
        const auto frame = sic::apply_channel(sic::channel_from_rotation(sic::rotation_from_unitary(u)), sic::sic_from_bloch(s));
        const auto expect = oracle_sic(oracle::apply_unitary(rho, oracle::Unitary2(u)));
        std::string detail = tag + " U=[";
        for (int k = 0; k < 4; ++k) detail += fmt(u(k / 2, k % 2).real()) + "+" + fmt(u(k / 2, k % 2).imag()) + "i" + (k < 3 ? "," : "]");
        note(cat, max_abs_diff(frame.values(), expect), detail);
      } else {
        const Direction m = Direction::normalized(rng.unit_vector());
        const oracle::MeasAxis axis(m.vec());
        const std::string detail = tag + " m=" + fmt(m.vec());
        if (cat.name == "born" || cat.name == "collapse") {
          const meas::Outcome out = meas::measure_once(meas::QubitMeterState::prepare(sic::sic_from_bloch(s)), meas::build_S(m));
          for (int beta : {1, -1}) {
            const double pb = oracle::born_probability(rho, axis, beta);
            if (cat.name == "born") {
              note(cat, std::abs(out.state.outcome_probability(beta) - pb), detail);
            } else if (pb > 1e-12) {
              note(cat, max_abs_diff(out.state.conditional_qubit(beta).values(),
                                     oracle_sic(oracle::luders_collapse(rho, axis, beta))), detail);
            }
          }
        } else if (cat.name == "luders") {
          const auto frame = sic::apply_channel(meas::marginalize_to_luders(meas::build_S(m)), sic::sic_from_bloch(s));
          oracle::MatXc avg = oracle::MatXc::Zero(2, 2);
          for (int beta : {1, -1}) {
            const double pb = oracle::born_probability(rho, axis, beta);
            if (pb > 1e-12) avg += pb * oracle::luders_collapse(rho, axis, beta).matrix();
          }
          note(cat, max_abs_diff(frame.values(), oracle_sic(oracle::DensityMat(avg))), detail);
        } else {
          const sic::ChshSettings st{m, Direction::normalized(rng.unit_vector()), Direction::normalized(rng.unit_vector()),
                                     Direction::normalized(rng.unit_vector())};
          const double orc = oracle::chsh_value(oracle::singlet_density(), oracle::MeasAxis(st.a1.vec()),
                                                oracle::MeasAxis(st.a2.vec()), oracle::MeasAxis(st.b1.vec()),
                                                oracle::MeasAxis(st.b2.vec()));
          note(cat, std::abs(sic::chsh_from_sic(st) - orc),
               "sample=" + std::to_string(i) + " a1=" + fmt(st.a1.vec()) + " a2=" + fmt(st.a2.vec()) +
                   " b1=" + fmt(st.b1.vec()) + " b2=" + fmt(st.b2.vec()));
        }
      }
    }
  }

  r.columns = {"category", "samples", "max_abs_dev", "tolerance", "pass"};
  for (const Category& c : cats) {
    r.rows.push_back({c.name, samples, c.worst, c.tol, c.worst <= c.tol});
    r.tolerances.emplace_back(c.name, c.tol);
    if (c.worst > c.tol && r.ok) {
      r.ok = false;
      r.failure = "tolerance breach in " + c.name + ": " + c.offender;
    }
  }
}

}  // namespace

ResultRecord run(const ExperimentConfig& config) {
  if (!config.experiment) throw ConfigError("no experiment given");
  const auto start = std::chrono::steady_clock::now();
  ResultRecord r;
  r.experiment = std::string(to_string(*config.experiment));
  r.seed = config.seed;
  const Params p(config);
  switch (*config.experiment) {
    case Experiment::kMeasure: run_measure(p, r); break;
    case Experiment::kChain: run_chain(p, r, config.seed); break;
    case Experiment::kFamilyScan: run_family_scan(p, r, config.seed); break;
    case Experiment::kUniqueness: run_uniqueness(p, r); break;
    case Experiment::kEntropy: run_entropy(p, r); break;
    case Experiment::kChsh: run_chsh(p, r, config.seed); break;
    case Experiment::kNegativity: run_negativity(p, r, config.seed); break;
    case Experiment::kBroadcast: run_broadcast(p, r); break;
    case Experiment::kOracleDiff: run_oracle_diff(p, r, config.seed); break;
  }
  r.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace sicmeas::cli
