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

// Quasi-static locomotion simulator. Motion is a sequence of equilibria:
// each step advances the pose by the cycle-averaged stride velocity, then
// re-solves the body shape against the local corridor constraint. Inertia,
// ground slip stochasticity, and leg-ground force resolution are absorbed
// into the calibrated stride efficiency.
//
// Corridors are axis-aligned channels. A channel constrains only the body
// extent perpendicular to its axis; confinement along the travel direction
// is out of scope (walls ahead are handled by the schedule, as on the
// platform). A channel engages when the neutral-shape footprint overlaps
// its span and the pose center lies between its wall lines, and each wall
// side counts only while a clipped wall piece lies beside the footprint,
// so junction openings impose no limit. Engagement is keyed to the
// neutral footprint (capped by the cross channels' wall lines), making
// activation a pure function of pose: traces are deterministic and
// hysteresis-free.

#ifndef MCLARI_SIM_HPP_
#define MCLARI_SIM_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mclari/actuator.hpp"
#include "mclari/body.hpp"
#include "mclari/errors.hpp"
#include "mclari/gait.hpp"
#include "mclari/geometry.hpp"
#include "mclari/transmission.hpp"

namespace mclari {

inline constexpr double kGravityMPerS2 = 9.81;
inline constexpr double kDefaultMassBodyG = 0.976;
inline constexpr double kDefaultMassPayloadG = 0.380;  // tether header
// Ground-stride efficiency calibrated so a 225 Vpp, 10 Hz trot walks at
// 60 mm/s; the kinematic stride 2 * 2.85 mm * 10 Hz = 57 mm/s sits 5%
// below, so the calibration slightly exceeds 1.
inline constexpr double kDefaultEtaGait = 60.0 / 57.0;
inline constexpr double kDefaultDtS = 1e-3;
// Clearance below which a wall is flagged as in contact.
inline constexpr double kContactTolMm = 1e-6;

struct RobotConfig {
  ActuatorParams actuator;
  LegModuleParams legs;
  /// Drive-signal scale per leg (FL, FR, RL, RR); a value below 1 models a
  /// weaker leg. Affects sampled voltages only: the stride abstraction
  /// keeps zero lateral drift.
  std::array<double, kLegCount> leg_amplitude_scale{1.0, 1.0, 1.0, 1.0};
  BodyShapeParams body;
  double mass_body_g = kDefaultMassBodyG;
  double mass_payload_g = kDefaultMassPayloadG;
  double eta_gait = kDefaultEtaGait;
  /// Speed multiplier applied while wall-constrained; drag is not
  /// quantified for the platform, so the default is no slowdown.
  double wall_drag_factor = 1.0;
};

inline double mass_total_g(const RobotConfig& config) {
  return config.mass_body_g + config.mass_payload_g;
}

inline void validate(const RobotConfig& config) {
  validate(config.actuator);
  validate(config.legs);
  validate(config.body);
  if (!(config.eta_gait > 0.0) || config.eta_gait > 1.2) {
    throw ValidationError("eta_gait must lie in (0, 1.2]");
  }
  if (!(config.mass_body_g > 0.0) || config.mass_payload_g < 0.0) {
    throw ValidationError("robot masses must be positive");
  }
  for (double s : config.leg_amplitude_scale) {
    if (!(s > 0.0) || s > 1.0) {
      throw ValidationError("leg amplitude scales must lie in (0, 1]");
    }
  }
  if (!(config.wall_drag_factor > 0.0) || config.wall_drag_factor > 1.0) {
    throw ValidationError("wall drag factor must lie in (0, 1]");
  }
}

enum class Axis { kX, kY };

/// Axis-aligned corridor: two walls at center +/- gap/2 (lateral to the
/// axis), spanning [span_lo, span_hi] along it. Bends are composed from
/// two overlapping channels; wall generation clips each wall against the
/// other channels' free space, which reproduces the L-junction exactly.
struct CorridorRegion {
  Axis axis = Axis::kX;
  double center_mm = 0.0;
  double gap_mm = 0.0;
  double span_lo_mm = 0.0;
  double span_hi_mm = 0.0;
};

inline void validate(const CorridorRegion& region) {
  if (!(region.gap_mm > 0.0)) {
    throw ValidationError("corridor gap must be positive");
  }
  if (!(region.span_lo_mm < region.span_hi_mm)) {
    throw ValidationError("corridor span must be a nonempty interval");
  }
}

namespace detail {

struct Interval {
  double lo;
  double hi;
};

/// Removes the open interval (s_lo, s_hi) from every piece.
inline std::vector<Interval> subtract_open(std::vector<Interval> pieces,
                                           double s_lo, double s_hi) {
  std::vector<Interval> out;
  for (const Interval& p : pieces) {
    if (s_hi <= p.lo || s_lo >= p.hi) {
      out.push_back(p);
      continue;
    }
    if (p.lo < s_lo) out.push_back({p.lo, std::min(s_lo, p.hi)});
    if (s_hi < p.hi) out.push_back({std::max(s_hi, p.lo), p.hi});
  }
  std::vector<Interval> kept;
  for (const Interval& p : out) {
    if (p.hi - p.lo > 1e-12) kept.push_back(p);
  }
  return kept;
}

struct FreeRect {
  Interval x;
  Interval y;
};

inline FreeRect free_rect(const CorridorRegion& r) {
  const double half = 0.5 * r.gap_mm;
  if (r.axis == Axis::kX) {
    return {{r.span_lo_mm, r.span_hi_mm},
            {r.center_mm - half, r.center_mm + half}};
  }
  return {{r.center_mm - half, r.center_mm + half},
          {r.span_lo_mm, r.span_hi_mm}};
}

}  // namespace detail

/// One wall side of a channel: its lateral offset line plus the clipped
/// sub-spans along the channel axis that survive junction openings.
struct WallBand {
  double lateral_mm = 0.0;
  std::vector<detail::Interval> pieces;
};

struct CorridorEnvironment {
  std::vector<CorridorRegion> regions;
  std::vector<Segment2> walls;
  /// Per region: the low and high wall band, parallel to `regions`.
  std::vector<std::array<WallBand, 2>> bands;
};

/// Builds the environment: validates the channels and emits their wall
/// segments, each clipped against the open free space of the other
/// channels so junction openings carry no wall.
inline CorridorEnvironment make_environment(
    std::vector<CorridorRegion> regions) {
  CorridorEnvironment env;
  for (const CorridorRegion& r : regions) validate(r);
  env.regions = std::move(regions);
  for (size_t i = 0; i < env.regions.size(); ++i) {
    const CorridorRegion& r = env.regions[i];
    const double half = 0.5 * r.gap_mm;
    std::array<WallBand, 2> bands;
    int side = 0;
    for (const double lateral : {r.center_mm - half, r.center_mm + half}) {
      std::vector<detail::Interval> pieces{{r.span_lo_mm, r.span_hi_mm}};
      for (size_t j = 0; j < env.regions.size(); ++j) {
        if (j == i) continue;
        const detail::FreeRect o = detail::free_rect(env.regions[j]);
        const detail::Interval lat = r.axis == Axis::kX ? o.y : o.x;
        const detail::Interval along = r.axis == Axis::kX ? o.x : o.y;
        if (lateral > lat.lo && lateral < lat.hi) {
          pieces = detail::subtract_open(pieces, along.lo, along.hi);
        }
      }
      for (const detail::Interval& p : pieces) {
        if (r.axis == Axis::kX) {
          env.walls.push_back({{p.lo, lateral}, {p.hi, lateral}});
        } else {
          env.walls.push_back({{lateral, p.lo}, {lateral, p.hi}});
        }
      }
      bands[side] = WallBand{lateral, std::move(pieces)};
      ++side;
    }
    env.bands.push_back(std::move(bands));
  }
  return env;
}

/// Extent limits imposed on the body at a pose, one per world axis.
struct ActiveLimits {
  std::optional<double> length_limit_mm;  // body extent along x
  std::optional<double> width_limit_mm;   // body extent along y
  std::vector<int> active_regions;
};

/// Evaluates which channels engage at a pose, in two passes. Pass one
/// gates each channel: the neutral footprint interval along its axis must
/// overlap the span (open) and the pose center must sit strictly between
/// its wall lines; the gated channels' line clearances cap the footprint
/// extents used in pass two. Pass two counts a wall side only when one of
/// its clipped pieces lies beside the capped footprint, so a side removed
/// by a junction opening imposes no limit there. Each counted side caps
/// the body extent across the channel at twice its clearance.
inline ActiveLimits active_limits(const CorridorEnvironment& env, Pose2 pose,
                                  const BodyShapeParams& body) {
  std::vector<bool> gated(env.regions.size(), false);
  double cap_len = body.dims_neutral.length_mm;
  double cap_wid = body.dims_neutral.width_mm;
  for (size_t i = 0; i < env.regions.size(); ++i) {
    const CorridorRegion& r = env.regions[i];
    const bool along_x = r.axis == Axis::kX;
    const double p_axis = along_x ? pose.x_mm : pose.y_mm;
    const double p_lat = along_x ? pose.y_mm : pose.x_mm;
    const double half_neutral = 0.5 * (along_x ? body.dims_neutral.length_mm
                                               : body.dims_neutral.width_mm);
    const double half_gap = 0.5 * r.gap_mm;
    const bool span_overlap = p_axis + half_neutral > r.span_lo_mm &&
                              p_axis - half_neutral < r.span_hi_mm;
    const bool between_walls = p_lat > r.center_mm - half_gap &&
                               p_lat < r.center_mm + half_gap;
    if (!span_overlap || !between_walls) continue;
    gated[i] = true;
    const double line_cap =
        2.0 * std::min(r.center_mm + half_gap - p_lat,
                       p_lat - (r.center_mm - half_gap));
    double& cross = along_x ? cap_wid : cap_len;
    cross = std::min(cross, line_cap);
  }
  ActiveLimits out;
  for (size_t i = 0; i < env.regions.size(); ++i) {
    if (!gated[i]) continue;
    const CorridorRegion& r = env.regions[i];
    const bool along_x = r.axis == Axis::kX;
    const double p_axis = along_x ? pose.x_mm : pose.y_mm;
    const double p_lat = along_x ? pose.y_mm : pose.x_mm;
    const double h_eff = 0.5 * (along_x ? cap_len : cap_wid);
    std::optional<double> limit;
    for (const WallBand& band : env.bands[i]) {
      bool beside = false;
      for (const detail::Interval& piece : band.pieces) {
        if (piece.lo < p_axis + h_eff && piece.hi > p_axis - h_eff) {
          beside = true;
          break;
        }
      }
      if (!beside) continue;
      const double side_limit = 2.0 * std::abs(p_lat - band.lateral_mm);
      limit = limit ? std::min(*limit, side_limit) : side_limit;
    }
    if (!limit) continue;
    std::optional<double>& slot =
        along_x ? out.width_limit_mm : out.length_limit_mm;
    slot = slot ? std::min(*slot, *limit) : *limit;
    out.active_regions.push_back(static_cast<int>(i));
  }
  return out;
}

struct SimState {
  Pose2 pose;
  BodyShape shape;
  double time_s = 0.0;
  bool stuck = false;
  int segment_index = 0;
  std::vector<bool> wall_contact;
};

struct SimTrace {
  std::vector<SimState> states;
  double dt_s = kDefaultDtS;
};

/// Cycle-averaged stride velocity in the body frame: one gait cycle
/// advances the body by eta_gait times the peak-to-peak tip swing, with
/// zero lateral component.
inline Vec2 stride_velocity(const GaitSpec& spec, const RobotConfig& config) {
  validate(spec);
  const double stride_mm =
      2.0 * tip_swing_deflection(config.legs, config.actuator,
                                 spec.amplitude_vpp);
  const double speed = config.eta_gait * stride_mm * spec.frequency_hz;
  return direction_vector(spec.direction) * speed;
}

namespace detail {

inline std::vector<bool> wall_contacts(const CorridorEnvironment& env,
                                       const Quad& body_quad) {
  std::vector<bool> contact(env.walls.size(), false);
  for (size_t w = 0; w < env.walls.size(); ++w) {
    contact[w] = signed_clearance(body_quad, env.walls[w]) < kContactTolMm;
  }
  return contact;
}

inline BodyShape shape_at(const CorridorEnvironment& env, Pose2 pose,
                          const BodyShapeParams& body) {
  const ActiveLimits limits = active_limits(env, pose, body);
  return constrained_equilibrium(limits.length_limit_mm,
                                 limits.width_limit_mm, body);
}

}  // namespace detail

/// Advances one time step: move along the active segment's stride, then
/// re-solve the shape at the new pose. An infeasible passage cancels the
/// advance (the commanded axis is blocked) and flags the state stuck; the
/// schedule may still recover by changing direction. Yaw never changes.
inline SimState step(const SimState& state, const CorridorEnvironment& env,
                     const GaitSchedule& schedule, double dt_s,
                     const RobotConfig& config) {
  if (!(dt_s > 0.0)) throw ValidationError("dt must be positive");
  const SegmentSample seg = segment_at(schedule, state.time_s);
  const GaitSpec& spec =
      schedule.segments[static_cast<size_t>(seg.index)].spec;
  const bool constrained_now =
      !active_limits(env, state.pose, config.body).active_regions.empty();
  const double drag = constrained_now ? config.wall_drag_factor : 1.0;
  const Vec2 v_world =
      rotate(stride_velocity(spec, config), state.pose.yaw_rad);

  SimState next = state;
  next.time_s = state.time_s + dt_s;
  next.segment_index = seg.index;
  next.pose.x_mm = state.pose.x_mm + v_world.x * dt_s * drag;
  next.pose.y_mm = state.pose.y_mm + v_world.y * dt_s * drag;
  try {
    next.shape = detail::shape_at(env, next.pose, config.body);
    next.stuck = false;
  } catch (const InfeasiblePassageError&) {
    next.pose = state.pose;
    next.shape = detail::shape_at(env, next.pose, config.body);
    next.stuck = true;
  }
  next.wall_contact = detail::wall_contacts(
      env, footprint(next.shape, next.pose, config.body));
  return next;
}

/// Runs the full schedule from an initial pose, sampling every dt. The
/// trace holds the initial state plus one state per step; timestamps are
/// exact multiples of dt.
inline SimTrace run(const GaitSchedule& schedule,
                    const CorridorEnvironment& env, const RobotConfig& config,
                    double dt_s = kDefaultDtS, Pose2 initial_pose = {}) {
  validate(config);
  validate(schedule);
  if (!(dt_s > 0.0)) throw ValidationError("dt must be positive");
  double f_max = 0.0;
  for (const GaitSegment& seg : schedule.segments) {
    f_max = std::max(f_max, seg.spec.frequency_hz);
  }
  if (dt_s > 0.25 / f_max) {
    throw ValidationError("dt must not exceed a quarter gait period");
  }
  const double total = total_duration(schedule);
  const auto n_steps = static_cast<long long>(std::llround(total / dt_s));
  if (n_steps < 1 || std::abs(n_steps * dt_s - total) > kSegmentBoundaryTolS) {
    throw ValidationError("schedule duration must be a multiple of dt");
  }

  SimTrace trace;
  trace.dt_s = dt_s;
  trace.states.reserve(static_cast<size_t>(n_steps) + 1);
  SimState state;
  state.pose = initial_pose;
  state.shape = detail::shape_at(env, initial_pose, config.body);
  state.wall_contact = detail::wall_contacts(
      env, footprint(state.shape, state.pose, config.body));
  trace.states.push_back(state);
  for (long long k = 1; k <= n_steps; ++k) {
    state = step(state, env, schedule, dt_s, config);
    state.time_s = static_cast<double>(k) * dt_s;
    trace.states.push_back(state);
  }
  return trace;
}

namespace detail {

inline double payload_ratio_for_force(double block_force_mn,
                                      double mass_body_g, int n_support) {
  const double holdable_g = n_support * block_force_mn / kGravityMPerS2;
  return (holdable_g - mass_body_g) / mass_body_g;
}

}  // namespace detail

/// Static payload estimate: how many body masses the supporting legs'
/// blocked lift force can hold beyond the body itself. The support count
/// is an explicit constant (all four legs grounded); a gait-dependent
/// support factor or safety margin would lower the value.
inline double payload_ratio(const RobotConfig& config, int n_support = 4) {
  if (n_support < 1) throw ValidationError("n_support must be at least 1");
  const double force = tip_lift_block_force(config.legs, config.actuator,
                                            config.actuator.v_max_vpp);
  return detail::payload_ratio_for_force(force, config.mass_body_g,
                                         n_support);
}

}  // namespace mclari

#endif  // MCLARI_SIM_HPP_
