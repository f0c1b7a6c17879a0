// Copyright 2026 The mclari-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Gait signal engine. A trot drives diagonal leg pairs in phase and the
// two pairs in anti-phase; walking direction is selected purely by
// inter-leg phase remapping (the square body symmetry), never by turning.
// Lift leads swing by 90 degrees by default, tracing an elliptical tip
// path whose ground half advances the body.

#ifndef MCLARI_GAIT_HPP_
#define MCLARI_GAIT_HPP_

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mclari/actuator.hpp"
#include "mclari/errors.hpp"
#include "mclari/geometry.hpp"

namespace mclari {

enum class LegId { kFL = 0, kFR = 1, kRL = 2, kRR = 3 };
inline constexpr int kLegCount = 4;

enum class GaitPattern { kTrot };

/// Cardinal walking directions in the body frame.
enum class Direction { kPlusX, kMinusX, kPlusY, kMinusY };

inline Vec2 direction_vector(Direction d) {
  switch (d) {
    case Direction::kPlusX:
      return {1.0, 0.0};
    case Direction::kMinusX:
      return {-1.0, 0.0};
    case Direction::kPlusY:
      return {0.0, 1.0};
    case Direction::kMinusY:
    default:
      return {0.0, -1.0};
  }
}

// Drive band the platform is characterized over.
inline constexpr double kFrequencyMinHz = 1.0;
inline constexpr double kFrequencyMaxHz = 10.0;
// Low-voltage control signals are boosted by this gain before reaching the
// actuators; sampled voltages here are actuator-side (post-gain).
inline constexpr double kSignalAmplifierGain = 100.0;

struct GaitSpec {
  GaitPattern pattern = GaitPattern::kTrot;
  double frequency_hz = 10.0;
  double amplitude_vpp = kVmaxVpp;
  Direction direction = Direction::kPlusX;
  double lift_swing_phase_rad = 0.5 * kPi;
};

inline void validate(const GaitSpec& spec) {
  if (spec.pattern != GaitPattern::kTrot) {
    throw ValidationError("unsupported gait pattern");
  }
  if (spec.frequency_hz < kFrequencyMinHz ||
      spec.frequency_hz > kFrequencyMaxHz) {
    throw RangeError("gait frequency " + std::to_string(spec.frequency_hz) +
                     " Hz outside the characterized band [" +
                     std::to_string(kFrequencyMinHz) + ", " +
                     std::to_string(kFrequencyMaxHz) + "]");
  }
  if (spec.amplitude_vpp < 0.0 || spec.amplitude_vpp > kVmaxVpp) {
    throw RangeError("gait amplitude outside [0, 225] Vpp");
  }
}

/// Per-leg oscillator assignment. swing_sign flips the stride direction of
/// that leg without touching lift.
struct LegPhases {
  double swing_phase_rad = 0.0;
  double lift_phase_rad = 0.0;
  double swing_sign = 1.0;
};

using PhaseTable = std::array<LegPhases, kLegCount>;

/// Builds the trot table for the requested direction. +X puts FL/RR at
/// swing phase 0 and FR/RL at pi; -X negates every swing sign; +Y applies
/// the quarter-turn body symmetry relabeling FL->FR->RR->RL; -Y negates
/// the +Y signs.
inline PhaseTable phase_table(const GaitSpec& spec) {
  validate(spec);
  const double off = spec.lift_swing_phase_rad;
  const PhaseTable plus_x{LegPhases{0.0, off, 1.0},        // FL
                          LegPhases{kPi, kPi + off, 1.0},  // FR
                          LegPhases{kPi, kPi + off, 1.0},  // RL
                          LegPhases{0.0, off, 1.0}};       // RR
  auto negated = [](PhaseTable t) {
    for (LegPhases& p : t) p.swing_sign = -p.swing_sign;
    return t;
  };
  auto quarter_turn = [](const PhaseTable& t) {
    PhaseTable out;
    out[static_cast<int>(LegId::kFR)] = t[static_cast<int>(LegId::kFL)];
    out[static_cast<int>(LegId::kRR)] = t[static_cast<int>(LegId::kFR)];
    out[static_cast<int>(LegId::kRL)] = t[static_cast<int>(LegId::kRR)];
    out[static_cast<int>(LegId::kFL)] = t[static_cast<int>(LegId::kRL)];
    return out;
  };
  switch (spec.direction) {
    case Direction::kPlusX:
      return plus_x;
    case Direction::kMinusX:
      return negated(plus_x);
    case Direction::kPlusY:
      return quarter_turn(plus_x);
    case Direction::kMinusY:
    default:
      return negated(quarter_turn(plus_x));
  }
}

struct LegDrive {
  DriveCommand lift;
  DriveCommand swing;
};

/// Expands a gait spec into the eight drive channels (lift and swing per
/// leg). A negative swing sign folds into a pi phase offset on the swing
/// channel only.
inline std::array<LegDrive, kLegCount> drive_commands(
    const GaitSpec& spec, double v_max_vpp = kVmaxVpp) {
  validate(spec);
  if (spec.amplitude_vpp > v_max_vpp) {
    throw RangeError("gait amplitude exceeds the actuator drive ceiling");
  }
  const PhaseTable table = phase_table(spec);
  std::array<LegDrive, kLegCount> out;
  for (int i = 0; i < kLegCount; ++i) {
    const LegPhases& p = table[static_cast<size_t>(i)];
    const double flip = p.swing_sign < 0.0 ? kPi : 0.0;
    out[static_cast<size_t>(i)].lift = {spec.amplitude_vpp, spec.frequency_hz,
                                        p.lift_phase_rad, 0.5};
    out[static_cast<size_t>(i)].swing = {spec.amplitude_vpp, spec.frequency_hz,
                                         p.swing_phase_rad + flip, 0.5};
  }
  return out;
}

struct GaitSegment {
  double duration_s = 0.0;
  GaitSpec spec;
};

/// Scripted direction/speed sequence. The oscillator phase resets to zero
/// at every segment boundary.
struct GaitSchedule {
  std::vector<GaitSegment> segments;
};

inline void validate(const GaitSchedule& schedule) {
  if (schedule.segments.empty()) {
    throw ValidationError("gait schedule must contain at least one segment");
  }
  for (const GaitSegment& seg : schedule.segments) {
    if (!(seg.duration_s > 0.0)) {
      throw ValidationError("gait segment durations must be positive");
    }
    validate(seg.spec);
  }
}

inline double total_duration(const GaitSchedule& schedule) {
  double total = 0.0;
  for (const GaitSegment& seg : schedule.segments) total += seg.duration_s;
  return total;
}

struct SegmentSample {
  int index = 0;
  double local_t_s = 0.0;
};

// Step-accumulated times land within a rounding hair of segment
// boundaries; classify them into the following segment.
inline constexpr double kSegmentBoundaryTolS = 1e-9;

/// Locates the active segment for 0 <= t < total duration and returns the
/// time elapsed within it.
inline SegmentSample segment_at(const GaitSchedule& schedule, double t_s) {
  validate(schedule);
  if (t_s < 0.0) throw RangeError("sample time before schedule start");
  double start = 0.0;
  for (size_t i = 0; i < schedule.segments.size(); ++i) {
    const double end = start + schedule.segments[i].duration_s;
    if (t_s < end - kSegmentBoundaryTolS) {
      return {static_cast<int>(i), std::max(0.0, t_s - start)};
    }
    start = end;
  }
  throw RangeError("sample time " + std::to_string(t_s) +
                   " s beyond schedule end");
}

/// Samples the eight actuator voltages at time t. Channel order: FL lift,
/// FL swing, FR lift, FR swing, RL lift, RL swing, RR lift, RR swing.
inline std::array<double, 2 * kLegCount> sample_voltages(
    const GaitSchedule& schedule, double t_s, double v_max_vpp = kVmaxVpp) {
  const SegmentSample at = segment_at(schedule, t_s);
  const auto cmds =
      drive_commands(schedule.segments[static_cast<size_t>(at.index)].spec,
                     v_max_vpp);
  std::array<double, 2 * kLegCount> out;
  for (int i = 0; i < kLegCount; ++i) {
    out[static_cast<size_t>(2 * i)] =
        drive_voltage(cmds[static_cast<size_t>(i)].lift, at.local_t_s);
    out[static_cast<size_t>(2 * i + 1)] =
        drive_voltage(cmds[static_cast<size_t>(i)].swing, at.local_t_s);
  }
  return out;
}

}  // namespace mclari

#endif  // MCLARI_GAIT_HPP_
