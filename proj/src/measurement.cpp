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

#include "sicmeas/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sicmeas::meas {
namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kSqrt7 = std::sqrt(7.0);

void check_sign(int v) {
  if (v != 1 && v != -1) throw DomainError("bit values must be +1 or -1");
}

const std::array<Vec7, kStates>& frame7() {
  static const std::array<Vec7, kStates> vecs = [] {
    std::array<Vec7, kStates> out;
    for (std::size_t i = 0; i < kStates; ++i) out[i] = gbv::frame_vector(3, i);
    return out;
  }();
  return vecs;
}

struct StepResult {
  std::vector<double> p;
  StepTelemetry telemetry;
};

StepResult step(const gbv::BitDist& dist, const QuasiStochastic& s) {
  StepResult r{s.apply(dist.values()), {0.0, 0}};
  r.telemetry.min_entry = *std::min_element(r.p.begin(), r.p.end());
  for (double& v : r.p) {
    if (v < 0.0 && v >= -kPositivityTol) {
      v = 0.0;
      ++r.telemetry.clamped;
    }
  }
  return r;
}

std::string dump(const gbv::BitDist& in, const MeasProcess& s, std::span<const double> out) {
  const Vec3& m = s.direction().vec();
  const std::vector<double> mv{m[0], m[1], m[2]};
  const std::vector<double> params{s.params().x, s.params().y, s.params().z};
  return "negative qubit-meter distribution after measurement: input=" + format_values(in.values()) +
         " m=" + format_values(mv) + " xyz=" + format_values(params) + " output=" + format_values(out);
}

}  // namespace

namespace meter_frame {

Vec7 qubit_block(const Vec3& v) {
  Vec7 out = Vec7::Zero();
  out.head<3>() = v;
  return out;
}

Vec7 correlation_block(const Vec3& v) {
  Vec7 out = Vec7::Zero();
  out.segment<3>(3) = v;
  return out;
}

Vec7 register_axis() {
  Vec7 out = Vec7::Zero();
  out[6] = 1.0;
  return out;
}

Vec7 decomposed_vector(int alpha, int a, int a2) {
  check_sign(alpha);
  const Vec3 n = sic::tetra_vector(a, a2);
  return std::sqrt(3.0 / 7.0) * (qubit_block(n) + alpha * correlation_block(n)) + (alpha / kSqrt7) * register_axis();
}

}  // namespace meter_frame

std::size_t state_index(int alpha, int a, int a2) {
  check_sign(alpha);
  check_sign(a);
  check_sign(a2);
  return (alpha == -1 ? 4u : 0u) + (a == -1 ? 2u : 0u) + (a2 == -1 ? 1u : 0u);
}

Mat7 build_A_unchecked(const Vec3& m, FamilyParams p) {
  using namespace meter_frame;
  const Vec7 m1 = qubit_block(m);
  const Vec7 m2 = correlation_block(m);
  const Vec7 e3 = register_axis();
  const Vec7 r1 = p.x * m1 + (1.0 - p.x) * m2;
  const Vec7 r2 = p.y * (m1 - m2) + e3 / kSqrt3;
  const Vec7 r3 = p.z * m1 + (kSqrt3 - p.z) * m2;
  return m1 * r1.transpose() + m2 * r2.transpose() + e3 * r3.transpose();
}

Mat7 build_A(const Direction& m, FamilyParams params) { return build_A_unchecked(m.vec(), params); }

QuasiStochastic process_from_affine(const Mat7& a) {
  Eigen::MatrixXd s(kStates, kStates);
  for (std::size_t out = 0; out < kStates; ++out) {
    for (std::size_t in = 0; in < kStates; ++in) {
      s(out, in) = (1.0 + 7.0 * frame7()[out].dot(a * frame7()[in])) / 8.0;
    }
  }
  return QuasiStochastic(std::move(s));
}

double family_entry(const Vec3& m, FamilyParams p, int beta, int b, int b2, int alpha, int a, int a2) {
  check_sign(beta);
  check_sign(alpha);
  const double mna = m.dot(sic::tetra_vector(a, a2));
  const double mnb = m.dot(sic::tetra_vector(b, b2));
  const double al = alpha, be = beta;
  const double first = kSqrt3 * be * (p.z + (kSqrt3 - p.z) * al) * mna;
  const double bracket = 3.0 * (p.x + (1.0 - p.x) * al + be * p.y * (1.0 - al));
  return (1.0 + first + al * be * mnb + bracket * mnb * mna) / 8.0;
}

MeasProcess build_S(const Direction& m, FamilyParams params) {
  return MeasProcess(m, params, process_from_affine(build_A(m, params)));
}

QubitMeterState::QubitMeterState(gbv::BitDist dist) : dist_(std::move(dist)) {
  if (dist_.n_bits() != 3) throw DomainError("qubit-meter state must be a 3-bit distribution");
}

QubitMeterState QubitMeterState::prepare(const sic::SicDist& qubit, int meter) {
  check_sign(meter);
  std::vector<double> p(kStates, 0.0);
  for (std::size_t q = 0; q < 4; ++q) p[(meter == -1 ? 4 : 0) + q] = qubit[q];
  return QubitMeterState(gbv::BitDist(3, std::move(p)));
}

sic::SicDist QubitMeterState::qubit_marginal() const {
  std::array<double, 4> q{};
  for (std::size_t i = 0; i < 4; ++i) q[i] = dist_[i] + dist_[4 + i];
  return sic::SicDist(q);
}

double QubitMeterState::outcome_probability(int beta) const {
  check_sign(beta);
  const std::size_t base = beta == 1 ? 0 : 4;
  return dist_[base] + dist_[base + 1] + dist_[base + 2] + dist_[base + 3];
}

double QubitMeterState::meter_mean() const { return outcome_probability(1) - outcome_probability(-1); }

sic::SicDist QubitMeterState::conditional_qubit(int beta) const {
  const double p = outcome_probability(beta);
  if (p <= 1e-12) {
    throw ZeroProbabilityError("conditional qubit state undefined: p(beta=" + std::to_string(beta) +
                               ") = " + std::to_string(p));
  }
  const std::size_t base = beta == 1 ? 0 : 4;
  std::array<double, 4> q{};
  for (std::size_t i = 0; i < 4; ++i) q[i] = dist_[base + i] / p;
  // Renormalize away the division's rounding.
  const double sum = q[0] + q[1] + q[2] + q[3];
  for (double& v : q) v /= sum;
  return sic::SicDist(q);
}

QubitMeterState QubitMeterState::reset_meter(int meter) const { return prepare(qubit_marginal(), meter); }

Outcome measure_once(const QubitMeterState& state, const MeasProcess& s) {
  StepResult r = step(state.dist(), s.matrix());
  if (r.telemetry.min_entry < -kPositivityTol) throw PositivityError(dump(state.dist(), s, r.p));
  QubitMeterState out(gbv::BitDist(3, std::move(r.p)));
  const std::array<double, 2> p_beta{out.outcome_probability(1), out.outcome_probability(-1)};
  return {std::move(out), p_beta, r.telemetry};
}

namespace {

Trajectory run_sequence(const QubitMeterState& state, std::span<const MeasProcess> processes,
                        MeterPolicy policy) {
  Trajectory traj;
  traj.states.reserve(processes.size());
  gbv::BitDist current = state.dist();
  for (std::size_t i = 0; i < processes.size(); ++i) {
    if (i > 0 && policy == MeterPolicy::kReset) current = QubitMeterState(current).reset_meter().dist();
    StepResult r = step(current, processes[i].matrix());
    traj.nonnegative = traj.nonnegative && r.telemetry.min_entry >= -kPositivityTol;
    traj.steps.push_back(r.telemetry);
    current = gbv::BitDist(3, std::move(r.p));
    traj.states.emplace_back(current);
  }
  return traj;
}

}  // namespace

Trajectory measure_repeat(const QubitMeterState& state, const MeasProcess& s, int k, MeterPolicy policy) {
  if (k < 1) throw DomainError("repeat count must be at least 1");
  const std::vector<MeasProcess> processes(static_cast<std::size_t>(k), s);
  return run_sequence(state, processes, policy);
}

Trajectory measure_chain(const QubitMeterState& state, std::span<const Direction> directions,
                         MeterPolicy policy) {
  if (directions.empty()) throw DomainError("measurement chain is empty");
  std::vector<MeasProcess> processes;
  processes.reserve(directions.size());
  for (const Direction& m : directions) processes.push_back(build_S(m));
  return run_sequence(state, processes, policy);
}

double correction_term(FamilyParams p, const Direction& m) {
  double worst = 0.0;
  for (int alpha : {1, -1}) {
    for (int beta : {1, -1}) {
      const double al = alpha, be = beta;
      const double bracket = 3.0 * (p.x + (1.0 - p.x) * al + be * p.y * (1.0 - al)) -
                             kSqrt3 * al * (p.z + (kSqrt3 - p.z) * al);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          const double v = bracket * m.vec().dot(sic::tetra_vector(i)) * m.vec().dot(sic::tetra_vector(j));
          worst = std::max(worst, std::abs(v));
        }
      }
    }
  }
  return worst;
}

double uniqueness_residual(FamilyParams params, const Direction& m) {
  double worst = 0.0;
  for (std::size_t out = 0; out < kStates; ++out) {
    for (std::size_t in = 0; in < kStates; ++in) {
      const auto o = gbv::config_bits(3, out);
      const auto i = gbv::config_bits(3, in);
      const double d = family_entry(m.vec(), params, o[0], o[1], o[2], i[0], i[1], i[2]) -
                       family_entry(m.vec(), FamilyParams::canonical(), o[0], o[1], o[2], i[0], i[1], i[2]);
      worst = std::max(worst, 8.0 * std::abs(d));
    }
  }
  return worst;
}

std::vector<Vec3> sphere_grid(std::size_t count) {
  std::vector<Vec3> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

NecessityVerdict positivity_necessity_check(double scale, std::size_t directions) {
  if (!(scale >= 0.0) || directions == 0) throw DomainError("scale must be >= 0 and the grid non-empty");
  NecessityVerdict v{scale, directions, std::numeric_limits<double>::infinity(), 0, true, true};
  for (const Vec3& u : sphere_grid(directions)) {
    const double min_entry = process_from_affine(build_A_unchecked(scale * u)).min_entry();
    v.min_entry = std::min(v.min_entry, min_entry);
    if (min_entry < -kPositivityTol) ++v.negative_directions;
  }
  v.nonnegative_everywhere = v.min_entry >= -kPositivityTol;
  v.negative_everywhere = v.negative_directions == directions;
  return v;
}

QuasiStochastic classical_convex_process(double r1, double r2, double r3) {
  const std::array<double, 3> r{r1, r2, r3};
  if (std::any_of(r.begin(), r.end(), [](double v) { return !(v >= -kNormTol); }) ||
      std::abs(r1 + r2 + r3 - 1.0) > kNormTol) {
    throw DomainError("mixture weights must be nonnegative and sum to 1");
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(kStates, kStates);
  for (std::size_t in = 0; in < kStates; ++in) {
    const auto bits = gbv::config_bits(3, in);
    const int alpha = bits[0], a = bits[1], a2 = bits[2];
    const std::array<int, 3> copied{a, a2, a * a2};
    for (std::size_t k = 0; k < 3; ++k) t(state_index(alpha * copied[k], a, a2), in) += r[k];
  }
  return QuasiStochastic(std::move(t));
}

QuasiStochastic two_meter_copy_process() {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(16, 16);
  for (std::size_t in = 0; in < 16; ++in) {
    const auto b = gbv::config_bits(4, in);
    const std::array<int, 4> out{b[0], b[1], b[0] * b[2], b[1] * b[3]};
    t(gbv::config_index(out), in) = 1.0;
  }
  return QuasiStochastic(std::move(t));
}

gbv::BitDist two_meter_copy(const gbv::BitDist& state) {
  if (state.n_bits() != 4) throw DomainError("two-meter state must be over (a, a', alpha, alpha')");
  return gbv::BitDist(4, two_meter_copy_process().apply(state.values()));
}

gbv::BitDist two_meter_prepare(const sic::SicDist& qubit) {
  std::vector<double> p(16, 0.0);
  // Meters at +1 occupy the two low index bits = 0.
  for (std::size_t q = 0; q < 4; ++q) p[4 * q] = qubit[q];
  return gbv::BitDist(4, std::move(p));
}

gbv::BitDist broadcast(const QubitMeterState& state, const MeasProcess& s, int observers,
                       std::span<const int> order) {
  if (observers < 0 || observers > gbv::kMaxBits - 3) throw DomainError("observer count out of range");
  std::vector<int> seq(order.begin(), order.end());
  if (seq.empty()) {
    for (int i = 0; i < observers; ++i) seq.push_back(i);
  }
  std::vector<int> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < observers; ++i) {
    if (sorted.size() != static_cast<std::size_t>(observers) || sorted[static_cast<std::size_t>(i)] != i) {
      throw DomainError("observer order must be a permutation of 0..M-1");
    }
  }

  const Outcome measured = measure_once(state, s);
  const std::size_t obs_states = std::size_t{1} << observers;
  // Observers start at gamma = +1 (all low bits clear).
  std::vector<double> joint(kStates * obs_states, 0.0);
  for (std::size_t i = 0; i < kStates; ++i) joint[i * obs_states] = measured.state.dist()[i];

  for (int obs : seq) {
    const std::size_t flip = std::size_t{1} << (observers - 1 - obs);
    std::vector<double> next(joint.size(), 0.0);
    for (std::size_t idx = 0; idx < joint.size(); ++idx) {
      const bool beta_minus = (idx / obs_states) >= 4;
      next[beta_minus ? idx ^ flip : idx] += joint[idx];
    }
    joint = std::move(next);
  }
  return gbv::BitDist(3 + observers, std::move(joint));
}

double entropy_delta_closed_form(const BlochVec& s, const Direction& m) {
  const double ms = m.vec().dot(s.vec());
  return -1.0 + std::log2((3.0 + s.vec().squaredNorm()) / (1.0 + ms * ms));
}

EntropyDelta entropy_delta(const BlochVec& s, const Direction& m) {
  const QubitMeterState before = QubitMeterState::prepare(sic::sic_from_bloch(s));
  const Outcome after = measure_once(before, build_S(m));
  EntropyDelta d{};
  d.before = gbv::collision_entropy(gbv::gbv_from_dist(before.dist()));
  d.after = gbv::collision_entropy(gbv::gbv_from_dist(after.state.dist()));
  d.direct = d.after - d.before;
  d.closed_form = entropy_delta_closed_form(s, m);
  return d;
}

QuasiStochastic marginalize_to_luders(const MeasProcess& s, int meter) {
  check_sign(meter);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
  for (std::size_t out = 0; out < 4; ++out) {
    for (std::size_t in = 0; in < 4; ++in) {
      const auto [b, b2] = sic::bits_of(out);
      const auto [a, a2] = sic::bits_of(in);
      v(out, in) = s(1, b, b2, meter, a, a2) + s(-1, b, b2, meter, a, a2);
    }
  }
  return QuasiStochastic(std::move(v));
}

RealizabilityVerdict meter_realizability_check(double target) {
  const double bound = 1.0 / kSqrt3;
  const bool ok = std::abs(target) <= bound + 1e-12;
  return {target, bound, ok, ok ? std::clamp(kSqrt3 * target, -1.0, 1.0) : kSqrt3 * target};
}

}  // namespace sicmeas::meas
