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

#include "mclari/body.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <optional>

#include "mclari/errors.hpp"
#include "mclari/geometry.hpp"
#include "testing_util.hpp"

namespace mclari {
namespace {

using mclari_test::grid_min_energy_under_width;
using mclari_test::Lcg;

TEST(BodyTest, NeutralShapeMatchesRestDims) {
  const BodyShapeParams p;
  validate(p);
  const BodyShape neutral = neutral_shape(p);
  EXPECT_NEAR(neutral.theta_rad, 0.5 * kPi, 1e-12);
  EXPECT_NEAR(neutral.side_mm, 6.0 * std::sqrt(2.0), 1e-12);
  const BodyDims dims = dims_from_shape(neutral, p);
  EXPECT_NEAR(dims.length_mm, 20.0, 1e-9);
  EXPECT_NEAR(dims.width_mm, 20.0, 1e-9);
  EXPECT_NEAR(shape_energy(neutral, p), 0.0, 1e-18);
}

TEST(BodyTest, ShapeDimsRoundTripIsExact) {
  const BodyShapeParams p;
  Lcg rng(0x5eed0004ULL);
  for (int i = 0; i < 1000; ++i) {
    const BodyShape shape{
        rng.uniform(p.theta_limits.min_rad + 1e-6,
                    p.theta_limits.max_rad - 1e-6),
        rng.uniform(5.0, 11.0)};
    const BodyDims dims = dims_from_shape(shape, p);
    const BodyShape back = shape_from_dims(dims.length_mm, dims.width_mm, p);
    EXPECT_NEAR(back.theta_rad, shape.theta_rad, 1e-9);
    EXPECT_NEAR(back.side_mm, shape.side_mm, 1e-9);
    const BodyDims dims_back = dims_from_shape(back, p);
    EXPECT_NEAR(dims_back.length_mm, dims.length_mm, 1e-9);
    EXPECT_NEAR(dims_back.width_mm, dims.width_mm, 1e-9);
  }
}

TEST(BodyTest, ShapeFromDimsRejectsUnreachableDims) {
  const BodyShapeParams p;
  // Too elongated: the joint angle would exceed its upper limit.
  EXPECT_THROW(shape_from_dims(30.0, 16.0, p), InfeasibleShapeError);
  // Too wide for its length: below the lower angle limit.
  EXPECT_THROW(shape_from_dims(16.0, 28.0, p), InfeasibleShapeError);
  // Collapsed onto the corner blocks.
  EXPECT_THROW(shape_from_dims(8.0, 8.0, p), InfeasibleShapeError);
  EXPECT_THROW(shape_from_dims(20.0, 7.0, p), InfeasibleShapeError);
}

TEST(BodyTest, ExtremeDimsSitAtTheAngleLimit) {
  const BodyShapeParams p;
  const BodyShape extreme =
      shape_from_dims(p.dims_extreme.length_mm, p.dims_extreme.width_mm, p);
  EXPECT_NEAR(extreme.theta_rad, p.theta_limits.max_rad, 1e-12);
  EXPECT_NEAR(extreme.side_mm, 4.0 * std::sqrt(5.0), 1e-12);
  // Energy recomputed from the quadratic definition.
  const double dt = extreme.theta_rad - 0.5 * kPi;
  const double da = extreme.side_mm - 6.0 * std::sqrt(2.0);
  EXPECT_NEAR(shape_energy(extreme, p), 2.0 * dt * dt + 20.0 * da * da,
              1e-12);
  EXPECT_GT(shape_energy(extreme, p), 1.0);
}

TEST(BodyTest, MinExtentIsTheExtremeWidth) {
  const BodyShapeParams p;
  EXPECT_DOUBLE_EQ(min_extent(p), 16.0);
}

TEST(BodyTest, UnconstrainedEquilibriumIsNeutral) {
  const BodyShapeParams p;
  const BodyShape neutral = neutral_shape(p);
  const BodyShape s = equilibrium_shape(std::nullopt, p);
  EXPECT_DOUBLE_EQ(s.theta_rad, neutral.theta_rad);
  EXPECT_DOUBLE_EQ(s.side_mm, neutral.side_mm);
  // A slack limit leaves the neutral shape untouched.
  const BodyShape slack = equilibrium_shape(25.0, p);
  EXPECT_DOUBLE_EQ(slack.theta_rad, neutral.theta_rad);
  EXPECT_DOUBLE_EQ(slack.side_mm, neutral.side_mm);
}

TEST(BodyTest, ActiveWidthConstraintIsMetAndElongates) {
  const BodyShapeParams p;
  for (const double w : {19.0, 18.0, 17.0, 16.5, 16.25}) {
    const BodyShape s = equilibrium_shape(w, p);
    const BodyDims dims = dims_from_shape(s, p);
    EXPECT_NEAR(dims.width_mm, w, 1e-6) << "w=" << w;
    EXPECT_GT(dims.length_mm, 20.0) << "w=" << w;
    EXPECT_GT(s.theta_rad, 0.5 * kPi) << "w=" << w;
    EXPECT_LE(s.theta_rad, p.theta_limits.max_rad + 1e-9) << "w=" << w;
  }
}

TEST(BodyTest, SqueezeFloorIsReachableButNotBelow) {
  const BodyShapeParams p;
  const BodyShape floor_shape = equilibrium_shape(16.0, p);
  EXPECT_NEAR(dims_from_shape(floor_shape, p).width_mm, 16.0, 1e-6);
  EXPECT_THROW(equilibrium_shape(16.0 - 1e-3, p), InfeasiblePassageError);
  EXPECT_THROW(equilibrium_shape(15.0, p), InfeasiblePassageError);
  EXPECT_THROW(equilibrium_shape(1.0, p), InfeasiblePassageError);
}

TEST(BodyTest, CompressionEnergyGrowsMonotonically) {
  const BodyShapeParams p;
  double prev_energy = -1.0;
  double prev_length = 0.0;
  double prev_theta = 0.0;
  for (double w = 19.75; w >= 16.0 - 1e-12; w -= 0.25) {
    const BodyShape s = equilibrium_shape(w, p);
    const double e = shape_energy(s, p);
    const BodyDims dims = dims_from_shape(s, p);
    if (prev_energy >= 0.0) {
      EXPECT_GT(e, prev_energy) << "w=" << w;
      EXPECT_GT(dims.length_mm, prev_length) << "w=" << w;
      EXPECT_GT(s.theta_rad, prev_theta) << "w=" << w;
    }
    prev_energy = e;
    prev_length = dims.length_mm;
    prev_theta = s.theta_rad;
  }
}

TEST(BodyTest, SolverMatchesExhaustiveGridOracle) {
  const BodyShapeParams p;
  Lcg rng(0x5eed0005ULL);
  for (int i = 0; i < 20; ++i) {
    const double w = rng.uniform(16.05, 19.9);
    const BodyShape s = equilibrium_shape(w, p);
    EXPECT_LE(dims_from_shape(s, p).width_mm, w + 1e-9) << "w=" << w;
    const double e_solver = shape_energy(s, p);
    const double e_grid = grid_min_energy_under_width(w, 1e-3, 1e-5, 1e-6);
    // The grid minimum is an upper bound on the true optimum; the solver
    // must not beat it by more than numerical slack nor lag it by more
    // than the acceptance tolerance.
    EXPECT_LE(e_solver, e_grid + 1e-9) << "w=" << w;
    EXPECT_NEAR(e_solver, e_grid, 1e-3 * e_grid) << "w=" << w;
  }
}

TEST(BodyTest, JointConstraintsPinBothDims) {
  const BodyShapeParams p;
  const BodyShape s = constrained_equilibrium(16.5, 16.5, p);
  const BodyDims dims = dims_from_shape(s, p);
  EXPECT_NEAR(dims.length_mm, 16.5, 1e-9);
  EXPECT_NEAR(dims.width_mm, 16.5, 1e-9);
  EXPECT_NEAR(s.theta_rad, 0.5 * kPi, 1e-9);
}

TEST(BodyTest, LengthConstraintMirrorsTheWidthProblem) {
  const BodyShapeParams p;
  const BodyShape by_length = constrained_equilibrium(16.5, std::nullopt, p);
  const BodyDims dims = dims_from_shape(by_length, p);
  EXPECT_NEAR(dims.length_mm, 16.5, 1e-6);
  EXPECT_GT(dims.width_mm, 20.0);
  EXPECT_LT(by_length.theta_rad, 0.5 * kPi);
  // The angle limits are symmetric about the neutral angle, so squeezing
  // length costs exactly as much as squeezing width.
  const BodyShape by_width = constrained_equilibrium(std::nullopt, 16.5, p);
  EXPECT_NEAR(shape_energy(by_length, p), shape_energy(by_width, p), 1e-9);
  EXPECT_NEAR(by_length.theta_rad + by_width.theta_rad, kPi, 1e-6);
}

TEST(BodyTest, JointInfeasibilityIsDetected) {
  const BodyShapeParams p;
  EXPECT_THROW(constrained_equilibrium(15.0, std::nullopt, p),
               InfeasiblePassageError);
  EXPECT_THROW(constrained_equilibrium(std::nullopt, 15.999, p),
               InfeasiblePassageError);
  EXPECT_THROW(constrained_equilibrium(15.0, 18.0, p),
               InfeasiblePassageError);
}

TEST(BodyTest, TightJointLimitsFallBackToTheCornerShape) {
  const BodyShapeParams p;
  // Width squeezed to 16 mm wants a 24 mm length; capping the length at
  // 20 mm pins both dims instead.
  const BodyShape s = constrained_equilibrium(20.0, 16.0, p);
  const BodyDims dims = dims_from_shape(s, p);
  EXPECT_NEAR(dims.length_mm, 20.0, 1e-9);
  EXPECT_NEAR(dims.width_mm, 16.0, 1e-9);
  const BodyShape width_only = constrained_equilibrium(std::nullopt, 16.0, p);
  EXPECT_GT(shape_energy(s, p), shape_energy(width_only, p));
}

TEST(BodyTest, FootprintFollowsThePose) {
  const BodyShapeParams p;
  const BodyShape neutral = neutral_shape(p);
  const Quad q = footprint(neutral, Pose2{1.0, 2.0, 0.0}, p);
  EXPECT_NEAR(q[0].x, 11.0, 1e-9);
  EXPECT_NEAR(q[0].y, 12.0, 1e-9);
  EXPECT_NEAR(q[1].x, -9.0, 1e-9);
  EXPECT_NEAR(q[1].y, 12.0, 1e-9);
  EXPECT_NEAR(q[2].x, -9.0, 1e-9);
  EXPECT_NEAR(q[2].y, -8.0, 1e-9);
  EXPECT_NEAR(q[3].x, 11.0, 1e-9);
  EXPECT_NEAR(q[3].y, -8.0, 1e-9);
}

TEST(BodyTest, ValidateCatchesInconsistentParams) {
  BodyShapeParams p;
  p.side_rest_mm = 6.0;  // disagrees with the neutral dims
  EXPECT_THROW(validate(p), ValidationError);

  p = BodyShapeParams{};
  p.k_theta_ujoule_per_rad2 = 0.0;
  EXPECT_THROW(validate(p), ValidationError);

  p = BodyShapeParams{};
  p.theta_limits.min_rad = 2.0;
  p.theta_limits.max_rad = 1.0;
  EXPECT_THROW(validate(p), ValidationError);

  p = BodyShapeParams{};
  p.dims_extreme = {20.0, 20.0};
  EXPECT_THROW(validate(p), ValidationError);
}

}  // namespace
}  // namespace mclari
