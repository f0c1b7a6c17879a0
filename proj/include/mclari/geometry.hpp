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

// Planar geometry primitives. Lengths are millimeters, angles radians.

#ifndef MCLARI_GEOMETRY_HPP_
#define MCLARI_GEOMETRY_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace mclari {

inline constexpr double kPi = std::numbers::pi_v<double>;
inline constexpr double kTau = 2.0 * kPi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

/// Counterclockwise rotation by +90 degrees.
constexpr Vec2 rotate90(Vec2 v) { return {-v.y, v.x}; }

inline Vec2 rotate(Vec2 v, double angle_rad) {
  const double c = std::cos(angle_rad);
  const double s = std::sin(angle_rad);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Planar pose: position in mm, heading in radians (CCW from +x).
struct Pose2 {
  double x_mm = 0.0;
  double y_mm = 0.0;
  double yaw_rad = 0.0;
};

struct Segment2 {
  Vec2 a;
  Vec2 b;
};

/// Convex quad, CCW order. Used for the body footprint.
using Quad = std::array<Vec2, 4>;

/// Corners of a w-by-h rectangle centered on `pose`, CCW from (+,+).
inline Quad rect_corners(Pose2 pose, double extent_x_mm, double extent_y_mm) {
  const Vec2 c{pose.x_mm, pose.y_mm};
  const double hx = 0.5 * extent_x_mm;
  const double hy = 0.5 * extent_y_mm;
  const Quad local{Vec2{hx, hy}, Vec2{-hx, hy}, Vec2{-hx, -hy}, Vec2{hx, -hy}};
  Quad out;
  for (int i = 0; i < 4; ++i) out[i] = c + rotate(local[i], pose.yaw_rad);
  return out;
}

inline double point_segment_distance(Vec2 p, Segment2 s) {
  const Vec2 d = s.b - s.a;
  const double len2 = d.dot(d);
  double t = len2 > 0.0 ? (p - s.a).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (s.a + d * t)).norm();
}

namespace detail {

inline bool segments_intersect(Segment2 p, Segment2 q) {
  auto cross = [](Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; };
  auto orient = [&](Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); };
  const double d1 = orient(q.a, q.b, p.a);
  const double d2 = orient(q.a, q.b, p.b);
  const double d3 = orient(p.a, p.b, q.a);
  const double d4 = orient(p.a, p.b, q.b);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
  auto on = [&](Vec2 a, Vec2 b, Vec2 c) {
    return orient(a, b, c) == 0.0 && std::min(a.x, b.x) <= c.x &&
           c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
           c.y <= std::max(a.y, b.y);
  };
  return on(q.a, q.b, p.a) || on(q.a, q.b, p.b) || on(p.a, p.b, q.a) ||
         on(p.a, p.b, q.b);
}

inline double segment_segment_distance(Segment2 p, Segment2 q) {
  if (segments_intersect(p, q)) return 0.0;
  return std::min({point_segment_distance(p.a, q), point_segment_distance(p.b, q),
                   point_segment_distance(q.a, p), point_segment_distance(q.b, p)});
}

/// Interval overlap depth along `axis` between the quad and the segment.
/// Positive means the projections overlap by that much.
inline double axis_overlap(Vec2 axis, const Quad& quad, Segment2 seg) {
  double qlo = std::numeric_limits<double>::infinity();
  double qhi = -qlo;
  for (const Vec2& v : quad) {
    const double p = v.dot(axis);
    qlo = std::min(qlo, p);
    qhi = std::max(qhi, p);
  }
  const double s0 = seg.a.dot(axis);
  const double s1 = seg.b.dot(axis);
  const double slo = std::min(s0, s1);
  const double shi = std::max(s0, s1);
  return std::min(qhi, shi) - std::max(qlo, slo);
}

inline bool point_in_quad(Vec2 p, const Quad& quad) {
  for (int i = 0; i < 4; ++i) {
    const Vec2 a = quad[i];
    const Vec2 b = quad[(i + 1) % 4];
    if ((b - a).x * (p - a).y - (b - a).y * (p - a).x < 0.0) return false;
  }
  return true;
}

}  // namespace detail

/// Signed clearance between a convex quad and a wall segment: the separation
/// distance when disjoint, minus the penetration depth (minimal-translation
/// estimate over the separating axes) when they overlap.
inline double signed_clearance(const Quad& quad, Segment2 wall) {
  bool overlapping = detail::point_in_quad(wall.a, quad) ||
                     detail::point_in_quad(wall.b, quad);
  if (!overlapping) {
    for (int i = 0; i < 4 && !overlapping; ++i) {
      overlapping = detail::segments_intersect(
          {quad[i], quad[(i + 1) % 4]}, wall);
    }
  }
  if (!overlapping) {
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
      d = std::min(d, detail::segment_segment_distance(
                          {quad[i], quad[(i + 1) % 4]}, wall));
    }
    return d;
  }
  // Penetration depth: smallest projected overlap over the quad's two edge
  // normals and the wall normal.
  std::array<Vec2, 3> axes;
  {
    Vec2 e0 = quad[1] - quad[0];
    Vec2 e1 = quad[2] - quad[1];
    Vec2 w = wall.b - wall.a;
    auto unit = [](Vec2 v) {
      const double n = v.norm();
      return n > 0.0 ? Vec2{v.x / n, v.y / n} : Vec2{1.0, 0.0};
    };
    axes = {unit(rotate90(e0)), unit(rotate90(e1)), unit(rotate90(w))};
  }
  double depth = std::numeric_limits<double>::infinity();
  for (const Vec2& ax : axes) {
    depth = std::min(depth, detail::axis_overlap(ax, quad, wall));
  }
  return -std::max(depth, 0.0);
}

}  // namespace mclari

#endif  // MCLARI_GEOMETRY_HPP_
