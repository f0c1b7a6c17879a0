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

// Pseudo-rigid-body compliance model of the closed kinematic chain formed
// by the four leg modules: a planar rhombus with one joint-angle DOF and a
// compliant side length, plus rigid corner blocks. A rigid-side rhombus
// cannot reconcile the neutral 20x20 mm footprint with the 24x16 mm extreme
// (the closure equation fails); the ~5.4% side strain at the extreme is
// carried by flexure S-bending and modeled by the axial spring.
//
// Outer dimensions with corner half-extent b:
//   L = 2a sin(theta/2) + 2b,  W = 2a cos(theta/2) + 2b
// Elastic energy (four joints, four sides):
//   E = 2 k_theta (theta - theta0)^2 + 2 k_axial (a - a0)^2   [uJ]
// Wall contact is frictionless and rigid; the shape adapts instantaneously
// to the local constraint (quasi-static, no hysteresis).

#ifndef MCLARI_BODY_HPP_
#define MCLARI_BODY_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "mclari/errors.hpp"
#include "mclari/geometry.hpp"

namespace mclari {

/// Outer body dimensions: length along the rhombus long diagonal, width
/// across it (body frame x and y at zero yaw).
struct BodyDims {
  double length_mm = 0.0;
  double width_mm = 0.0;
};

struct ThetaLimits {
  double min_rad = 2.0 * std::atan(0.5);
  double max_rad = 2.0 * std::atan(2.0);
};

/// Rhombus chain parameters. Defaults reproduce the neutral 20x20 mm
/// footprint and reach the 24x16 mm extreme exactly at the angle limit.
/// The stiffness pair is a free calibration (only the ratio shifts how a
/// constrained equilibrium splits between joint rotation and side strain);
/// the axial spring is 10x stiffer per unit strain by default.
struct BodyShapeParams {
  double side_rest_mm = 6.0 * std::numbers::sqrt2_v<double>;
  double corner_offset_mm = 4.0;
  double k_theta_ujoule_per_rad2 = 1.0;   // uN*m/rad torsional, per joint
  double k_axial_ujoule_per_mm2 = 10.0;   // mN/mm axial, per side
  ThetaLimits theta_limits;
  BodyDims dims_neutral{20.0, 20.0};
  BodyDims dims_extreme{24.0, 16.0};
};

/// Rhombus state: joint angle at the width-spanning corners and current
/// side length.
struct BodyShape {
  double theta_rad = 0.0;
  double side_mm = 0.0;
};

inline BodyDims dims_from_shape(const BodyShape& shape,
                                const BodyShapeParams& params) {
  const double b2 = 2.0 * params.corner_offset_mm;
  return {2.0 * shape.side_mm * std::sin(0.5 * shape.theta_rad) + b2,
          2.0 * shape.side_mm * std::cos(0.5 * shape.theta_rad) + b2};
}

/// Inverts dims_from_shape. Throws when the dims are unreachable: outside
/// the angle limits or requiring a non-positive side or corner clearance.
inline BodyShape shape_from_dims(double length_mm, double width_mm,
                                 const BodyShapeParams& params) {
  const double b2 = 2.0 * params.corner_offset_mm;
  const double dl = length_mm - b2;
  const double dw = width_mm - b2;
  if (!(dl > 0.0) || !(dw > 0.0)) {
    throw InfeasibleShapeError("dims " + std::to_string(length_mm) + " x " +
                               std::to_string(width_mm) +
                               " mm collapse onto the corner blocks");
  }
  const double theta = 2.0 * std::atan2(dl, dw);
  if (theta < params.theta_limits.min_rad - 1e-12 ||
      theta > params.theta_limits.max_rad + 1e-12) {
    throw InfeasibleShapeError("dims " + std::to_string(length_mm) + " x " +
                               std::to_string(width_mm) +
                               " mm violate the rhombus angle limits");
  }
  return {theta, 0.5 * std::hypot(dl, dw)};
}

/// Neutral (zero-energy) shape, recovered whenever unconstrained.
inline BodyShape neutral_shape(const BodyShapeParams& params) {
  return shape_from_dims(params.dims_neutral.length_mm,
                         params.dims_neutral.width_mm, params);
}

inline void validate(const BodyShapeParams& params) {
  if (!(params.side_rest_mm > 0.0) || !(params.corner_offset_mm > 0.0) ||
      !(params.k_theta_ujoule_per_rad2 > 0.0) ||
      !(params.k_axial_ujoule_per_mm2 > 0.0)) {
    throw ValidationError("body params must be positive");
  }
  if (!(params.theta_limits.min_rad > 0.0) ||
      !(params.theta_limits.max_rad < kPi) ||
      !(params.theta_limits.min_rad < params.theta_limits.max_rad)) {
    throw ValidationError("body angle limits must satisfy 0 < min < max < pi");
  }
  const BodyShape neutral = neutral_shape(params);
  if (std::abs(neutral.side_mm - params.side_rest_mm) >
      1e-6 * params.side_rest_mm) {
    throw ValidationError("neutral dims disagree with the rest side length");
  }
  shape_from_dims(params.dims_extreme.length_mm, params.dims_extreme.width_mm,
                  params);
  if (!(params.dims_extreme.width_mm < params.dims_neutral.width_mm)) {
    throw ValidationError("extreme width must be below neutral width");
  }
}

/// Elastic energy in uJ: four torsional joints and four axial sides, each
/// carrying half the squared deviation (E = 4 * 1/2 * k * dx^2 per family).
inline double shape_energy(const BodyShape& shape,
                           const BodyShapeParams& params) {
  const BodyShape neutral = neutral_shape(params);
  const double dt = shape.theta_rad - neutral.theta_rad;
  const double da = shape.side_mm - params.side_rest_mm;
  return 2.0 * params.k_theta_ujoule_per_rad2 * dt * dt +
         2.0 * params.k_axial_ujoule_per_mm2 * da * da;
}

/// Narrowest extent the chain can be squeezed to: the calibrated extreme
/// configuration at the angle limit with its matching side stretch. Any
/// corridor tighter than this is an infeasible passage.
inline double min_extent(const BodyShapeParams& params) {
  return params.dims_extreme.width_mm;
}

namespace detail {

/// Minimizes energy over theta along a one-constraint manifold a(theta):
/// coarse scan over the full angle range, then golden-section refinement
/// around the best bracket.
inline BodyShape minimize_on_manifold(
    const std::function<double(double)>& side_of_theta,
    const BodyShapeParams& params) {
  const BodyShape neutral = neutral_shape(params);
  auto energy_at = [&](double theta) {
    const double a = side_of_theta(theta);
    if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
    const double dt = theta - neutral.theta_rad;
    const double da = a - params.side_rest_mm;
    return 2.0 * params.k_theta_ujoule_per_rad2 * dt * dt +
           2.0 * params.k_axial_ujoule_per_mm2 * da * da;
  };
  const double lo = params.theta_limits.min_rad;
  const double hi = params.theta_limits.max_rad;
  constexpr int kScan = 2048;
  int best = 0;
  double best_e = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) {
    const double theta = lo + (hi - lo) * i / kScan;
    const double e = energy_at(theta);
    if (e < best_e) {
      best_e = e;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / kScan;
  double b = lo + (hi - lo) * std::min(best + 1, kScan) / kScan;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double ec = energy_at(c);
  double ed = energy_at(d);
  while (b - a > 1e-12) {
    if (ec < ed) {
      b = d;
      d = c;
      ed = ec;
      c = b - inv_phi * (b - a);
      ec = energy_at(c);
    } else {
      a = c;
      c = d;
      ec = ed;
      d = a + inv_phi * (b - a);
      ed = energy_at(d);
    }
  }
  const double theta = 0.5 * (a + b);
  return {theta, side_of_theta(theta)};
}

inline BodyShape solve_width_equal(double width_mm,
                                   const BodyShapeParams& params) {
  const double dw = width_mm - 2.0 * params.corner_offset_mm;
  return minimize_on_manifold(
      [&](double theta) { return dw / (2.0 * std::cos(0.5 * theta)); },
      params);
}

inline BodyShape solve_length_equal(double length_mm,
                                    const BodyShapeParams& params) {
  const double dl = length_mm - 2.0 * params.corner_offset_mm;
  return minimize_on_manifold(
      [&](double theta) { return dl / (2.0 * std::sin(0.5 * theta)); },
      params);
}

inline void check_passable(double limit_mm, const BodyShapeParams& params) {
  if (limit_mm < min_extent(params) - 1e-12) {
    throw InfeasiblePassageError(
        "passage " + std::to_string(limit_mm) +
        " mm is narrower than the minimum reachable body extent " +
        std::to_string(min_extent(params)) + " mm");
  }
}

}  // namespace detail

/// Minimum-energy shape subject to L <= length_limit and W <= width_limit
/// (either may be absent). Active-set enumeration: the unconstrained
/// minimum is the neutral shape; a single active constraint eliminates the
/// side length and leaves a 1-D minimization; both active pin the dims.
inline BodyShape constrained_equilibrium(std::optional<double> length_limit_mm,
                                         std::optional<double> width_limit_mm,
                                         const BodyShapeParams& params) {
  if (length_limit_mm) detail::check_passable(*length_limit_mm, params);
  if (width_limit_mm) detail::check_passable(*width_limit_mm, params);
  const double slack = 1e-9;
  auto fits = [&](const BodyShape& s) {
    const BodyDims d = dims_from_shape(s, params);
    return (!length_limit_mm || d.length_mm <= *length_limit_mm + slack) &&
           (!width_limit_mm || d.width_mm <= *width_limit_mm + slack);
  };
  const BodyShape neutral = neutral_shape(params);
  if (fits(neutral)) return neutral;

  bool found = false;
  BodyShape best{};
  double best_e = std::numeric_limits<double>::infinity();
  auto consider = [&](const BodyShape& s) {
    if (!fits(s)) return;
    const double e = shape_energy(s, params);
    if (e < best_e) {
      best_e = e;
      best = s;
      found = true;
    }
  };
  if (width_limit_mm) consider(detail::solve_width_equal(*width_limit_mm, params));
  if (length_limit_mm) {
    consider(detail::solve_length_equal(*length_limit_mm, params));
  }
  if (length_limit_mm && width_limit_mm) {
    try {
      consider(shape_from_dims(*length_limit_mm, *width_limit_mm, params));
    } catch (const InfeasibleShapeError&) {
    }
  }
  if (!found) {
    throw InfeasiblePassageError("no feasible shape under the joint limits");
  }
  return best;
}

/// Width-only constrained equilibrium: the corridor-squeeze problem.
/// Returns the neutral shape exactly when unconstrained or when the limit
/// is slack; otherwise the constraint is active and W(result) equals the
/// limit to solver tolerance.
inline BodyShape equilibrium_shape(std::optional<double> width_limit_mm,
                                   const BodyShapeParams& params) {
  return constrained_equilibrium(std::nullopt, width_limit_mm, params);
}

/// World-frame body outline: an L-by-W rectangle centered on the pose.
inline Quad footprint(const BodyShape& shape, Pose2 pose,
                      const BodyShapeParams& params) {
  const BodyDims d = dims_from_shape(shape, params);
  return rect_corners(pose, d.length_mm, d.width_mm);
}

}  // namespace mclari

#endif  // MCLARI_BODY_HPP_
