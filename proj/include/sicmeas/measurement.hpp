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

// Qubit-meter measurement processes.
//
// The joint state lives on three bits (alpha, a, a'): the meter alpha and the
// SIC bits of the qubit. Indices follow gbv::config_index, so the 8 entries
// are ordered (+++, ++-, +-+, +--, -++, -+-, --+, ---) in (alpha, a, a').
// Processes S are 8x8 with rows (beta, b, b') and columns (alpha, a, a').

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

#include "sicmeas/gbv.hpp"
#include "sicmeas/sic_frame.hpp"
#include "sicmeas/types.hpp"

namespace sicmeas::meas {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

inline constexpr std::size_t kStates = 8;

/// Free parameters of the one-shot-correct process family. (1, 0, 0) is the
/// canonical member whose powers cycle with period two.
struct FamilyParams {
  double x = 1.0;
  double y = 0.0;
  double z = 0.0;

  static FamilyParams canonical() { return {}; }
  bool is_canonical() const { return x == 1.0 && y == 0.0 && z == 0.0; }
};

/// The three orthogonal blocks of R^7 under the (alpha, a, a') monomial order:
/// qubit (components 0-2), qubit-meter correlation (3-5), meter register (6).
namespace meter_frame {
Vec7 qubit_block(const Vec3& v);
Vec7 correlation_block(const Vec3& v);
Vec7 register_axis();
/// sqrt(3/7) (n1_{aa'} + alpha n2_{aa'}) + alpha/sqrt7 e3.
Vec7 decomposed_vector(int alpha, int a, int a2);
}  // namespace meter_frame

std::size_t state_index(int alpha, int a, int a2);

/// A = m1 r1(x)^T + m2 r2(y)^T + e3 r3(z)^T with
///   r1 = x m1 + (1-x) m2,  r2 = y (m1 - m2) + e3/sqrt3,  r3 = z m1 + (sqrt3 - z) m2.
Mat7 build_A(const Direction& m, FamilyParams params = {});
/// Same expression for an arbitrary (not necessarily unit) vector.
Mat7 build_A_unchecked(const Vec3& m, FamilyParams params = {});

/// S[beta b b' | alpha a a'] = (1 + 7 n_{beta b b'} . A n_{alpha a a'}) / 8.
QuasiStochastic process_from_affine(const Mat7& a);

/// Expanded closed form of one family entry, independent of build_A.
double family_entry(const Vec3& m, FamilyParams params, int beta, int b, int b2, int alpha, int a, int a2);

class MeasProcess {
 public:
  MeasProcess(Direction m, FamilyParams params, QuasiStochastic s)
      : m_(m), params_(params), s_(std::move(s)) {}

  const Direction& direction() const { return m_; }
  const FamilyParams& params() const { return params_; }
  const QuasiStochastic& matrix() const { return s_; }
  double operator()(int beta, int b, int b2, int alpha, int a, int a2) const {
    return s_(state_index(beta, b, b2), state_index(alpha, a, a2));
  }

 private:
  Direction m_;
  FamilyParams params_;
  QuasiStochastic s_;
};

MeasProcess build_S(const Direction& m, FamilyParams params = {});

class QubitMeterState {
 public:
  explicit QubitMeterState(gbv::BitDist dist);
  /// p(aa') (1 + meter alpha) / 2.
  static QubitMeterState prepare(const sic::SicDist& qubit, int meter = +1);

  const gbv::BitDist& dist() const { return dist_; }
  double operator()(int alpha, int a, int a2) const { return dist_[state_index(alpha, a, a2)]; }

  sic::SicDist qubit_marginal() const;
  double outcome_probability(int beta) const;
  double meter_mean() const;
  /// p(bb' | beta); throws ZeroProbabilityError when p(beta) <= 1e-12.
  sic::SicDist conditional_qubit(int beta) const;
  /// Meter traced out and re-initialized to (1 + meter alpha) / 2.
  QubitMeterState reset_meter(int meter = +1) const;

 private:
  gbv::BitDist dist_;
};

struct StepTelemetry {
  double min_entry;
  /// Entries in [-kPositivityTol, 0) clamped to zero.
  std::size_t clamped;
};

struct Outcome {
  QubitMeterState state;
  std::array<double, 2> p_beta;  // {p(+1), p(-1)}
  StepTelemetry telemetry;
};

/// One application of S. Throws PositivityError (with a full dump) when the
/// output has an entry below -kPositivityTol.
Outcome measure_once(const QubitMeterState& state, const MeasProcess& s);

enum class MeterPolicy {
  kKeep,   // re-apply S to the full joint state
  kReset,  // re-initialize the meter to +1 between shots
};

struct Trajectory {
  std::vector<QubitMeterState> states;  // after each step
  std::vector<StepTelemetry> steps;
  bool nonnegative = true;
  const QubitMeterState& final_state() const { return states.back(); }
};

/// k applications of the same process; negativity is reported in the
/// telemetry, never raised.
Trajectory measure_repeat(const QubitMeterState& state, const MeasProcess& s, int k,
                          MeterPolicy policy = MeterPolicy::kKeep);
/// Canonical processes along each direction in turn.
Trajectory measure_chain(const QubitMeterState& state, std::span<const Direction> directions,
                         MeterPolicy policy = MeterPolicy::kKeep);

/// max |(3(x + (1-x)alpha + beta y (1-alpha)) - sqrt3 alpha (z + (sqrt3 - z) alpha)) (m.n_aa')(m.n_bb')|
/// over all index assignments.
double correction_term(FamilyParams params, const Direction& m);
/// max |8 (S_xyz - S_canonical)| over all entries; zero iff (x, y, z) = (1, 0, 0).
double uniqueness_residual(FamilyParams params, const Direction& m);

/// Fibonacci-lattice directions on the unit sphere.
std::vector<Vec3> sphere_grid(std::size_t count);

struct NecessityVerdict {
  double scale;
  std::size_t directions;
  double min_entry;
  std::size_t negative_directions;
  bool nonnegative_everywhere;
  bool negative_everywhere;
};

/// Canonical process with m replaced by scale * u for every grid direction u.
NecessityVerdict positivity_necessity_check(double scale, std::size_t directions = 1000);

/// Mixture of the meter updates alpha -> a alpha, a' alpha, a a' alpha with
/// weights r1, r2, r3; the qubit bits pass through.
QuasiStochastic classical_convex_process(double r1, double r2, double r3);

/// 16x16 permutation over (a, a', alpha, alpha'): alpha -> a alpha, alpha' -> a' alpha'.
QuasiStochastic two_meter_copy_process();
gbv::BitDist two_meter_copy(const gbv::BitDist& state);
gbv::BitDist two_meter_prepare(const sic::SicDist& qubit);

/// Joint distribution over (beta, b, b', gamma_1..gamma_M) after S followed by
/// the copies gamma_i -> beta gamma_i, applied in `order` (default 0..M-1).
gbv::BitDist broadcast(const QubitMeterState& state, const MeasProcess& s, int observers,
                       std::span<const int> order = {});

struct EntropyDelta {
  double before;       // H2 of the prepared qubit-meter state
  double after;        // H2 after one canonical measurement
  double direct;       // after - before
  double closed_form;  // -1 + log2((3 + |s|^2) / (1 + (m.s)^2))
};

double entropy_delta_closed_form(const BlochVec& s, const Direction& m);
EntropyDelta entropy_delta(const BlochVec& s, const Direction& m);

/// Qubit channel left after discarding the outcome, with the meter prepared at
/// `meter`: V[bb'|aa'] = sum_beta S[beta b b' | meter a a'].
QuasiStochastic marginalize_to_luders(const MeasProcess& s, int meter = +1);

struct RealizabilityVerdict {
  double target;
  double bound;  // 1/sqrt3
  bool realizable;
  double required_sx;  // sqrt3 * target when realizable
};

/// Whether a meter mean <alpha> = target is the first-bit SIC marginal of a
/// physical qubit; <alpha> = s_x / sqrt3 and |s_x| <= 1.
RealizabilityVerdict meter_realizability_check(double target);

}  // namespace sicmeas::meas
