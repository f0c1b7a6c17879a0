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

// Release gate: one test per acceptance criterion, each printing a
// PASS/FAIL line so the gate can be audited from the raw test output.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "mclari/mclari.hpp"
#include "testing_util.hpp"

namespace mclari {
namespace {

using mclari_test::grid_min_energy_under_width;
using mclari_test::Lcg;
using mclari_test::read_file;
using mclari_test::run_command;
using mclari_test::split_csv_row;
using mclari_test::split_lines;
using mclari_test::TempDir;

std::string scenario_path(const std::string& leaf) {
  return std::string(MCLARI_SCENARIO_DIR) + "/" + leaf;
}

class Timer {
 public:
  double elapsed_s() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

class AcceptanceTest : public ::testing::Test {
 protected:
  void Criterion(int index, const char* label) {
    index_ = index;
    label_ = label;
  }

  void TearDown() override {
    std::printf("[criterion %d] %s: %s\n", index_, label_,
                HasFailure() ? "FAIL" : "PASS");
    std::fflush(stdout);
  }

 private:
  int index_ = 0;
  const char* label_ = "";
};

/// Looks up the value column of the characterization CSV row at a voltage.
double csv_value_at(const std::filesystem::path& file,
                    const std::string& voltage, const std::string& unit) {
  for (const std::string& line : split_lines(read_file(file))) {
    const auto cells = split_csv_row(line);
    if (cells.size() == 3 && cells[0] == voltage && cells[2] == unit) {
      return std::stod(cells[1]);
    }
  }
  ADD_FAILURE() << "no row at " << voltage << " " << unit << " in " << file;
  return 0.0;
}

TEST_F(AcceptanceTest, ActuatorCalibrationEndpoints) {
  Criterion(1, "actuator free deflection and blocked force at 225 Vpp");
  const Timer timer;
  TempDir out;
  const auto r = run_command(
      "\"" MCLARI_BENCH_BIN "\" characterize --config \"" +
      scenario_path("charact_full_sweep.json") + "\" --out \"" + out.str() +
      "\"");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const double defl =
      csv_value_at(out.path() / "actuator_deflection.csv", "225.000000", "um");
  const double force =
      csv_value_at(out.path() / "actuator_force.csv", "225.000000", "mN");
  EXPECT_LE(std::abs(defl - 405.0) / 405.0, 1e-6);
  EXPECT_LE(std::abs(force - 287.2) / 287.2, 1e-6);
  EXPECT_LT(timer.elapsed_s(), 1.0);
}

TEST_F(AcceptanceTest, LegTransmissionEndpoints) {
  Criterion(2, "leg swing/lift deflection and lift block force at 225 Vpp");
  const LegModuleParams leg;
  const ActuatorParams act;
  EXPECT_LE(std::abs(tip_swing_deflection(leg, act, 225.0) - 2.85) / 2.85,
            1e-6);
  EXPECT_LE(std::abs(tip_lift_deflection(leg, act, 225.0) - 2.3) / 2.3, 1e-6);
  EXPECT_LE(std::abs(tip_lift_block_force(leg, act, 225.0) - 14.3) / 14.3,
            1e-6);
}

TEST_F(AcceptanceTest, OpenFloorGaitSpeed) {
  Criterion(3, "open-floor trot at 10 Hz walks 60 mm/s (3 body lengths/s)");
  const Timer timer;
  const Scenario scenario =
      load_scenario_file(scenario_path("open_floor_trot10.json"));
  const SimTrace trace = run(scenario.schedule, scenario.environment,
                             scenario.robot, kDefaultDtS,
                             scenario.initial_pose);
  const SummaryMetrics m =
      compute_summary(trace, scenario.environment, scenario.robot);
  EXPECT_NEAR(m.mean_speed_mm_s, 60.0, 0.001 * 60.0);
  EXPECT_NEAR(m.speed_bl_per_s, 3.0, 1e-3);
  // The raw kinematic stride (2 x swing amplitude x rate) sits within 10%
  // of the calibrated ground speed.
  const double stride_mm_s =
      2.0 *
      tip_swing_deflection(scenario.robot.legs, scenario.robot.actuator,
                           225.0) *
      10.0;
  EXPECT_NEAR(stride_mm_s, 57.0, 1e-9);
  EXPECT_LE(std::abs(stride_mm_s - m.mean_speed_mm_s) / m.mean_speed_mm_s,
            0.10);
  EXPECT_LT(timer.elapsed_s(), 5.0);
}

TEST_F(AcceptanceTest, ConfinedGapTransitAndInfeasibleGap) {
  Criterion(4, "16.5 mm gap: squeeze through and recover; 15 mm gap: stuck");
  const Scenario gap = load_scenario_file(scenario_path("gap_16p5.json"));
  const SimTrace trace = run(gap.schedule, gap.environment, gap.robot,
                             kDefaultDtS, gap.initial_pose);
  const SummaryMetrics m = compute_summary(trace, gap.environment, gap.robot);
  EXPECT_LE(std::abs(m.max_compression_width_mm - 16.5), 1e-3);
  EXPECT_FALSE(m.stuck_any);
  for (const SimState& s : trace.states) {
    const BodyDims dims = dims_from_shape(s.shape, gap.robot.body);
    if (dims.width_mm < 20.0 - 1e-6) {
      EXPECT_GT(dims.length_mm, 20.0);
    }
  }
  const BodyDims final_dims =
      dims_from_shape(trace.states.back().shape, gap.robot.body);
  EXPECT_LE(std::abs(final_dims.length_mm - 20.0), 1e-6);
  EXPECT_LE(std::abs(final_dims.width_mm - 20.0), 1e-6);

  const Scenario narrow =
      load_scenario_file(scenario_path("gap_15_stuck.json"));
  const SimTrace stuck_trace = run(narrow.schedule, narrow.environment,
                                   narrow.robot, kDefaultDtS,
                                   narrow.initial_pose);
  EXPECT_TRUE(stuck_trace.states.back().stuck);
}

TEST_F(AcceptanceTest, BendTransitWithoutYaw) {
  Criterion(5, "90 degree bend traversed with yaw fixed at zero");
  const Scenario bend = load_scenario_file(scenario_path("bend_90.json"));
  const SimTrace trace = run(bend.schedule, bend.environment, bend.robot,
                             kDefaultDtS, bend.initial_pose);
  for (const SimState& s : trace.states) {
    EXPECT_EQ(s.pose.yaw_rad, 0.0);
    EXPECT_FALSE(s.stuck);
  }
  const SimState& last = trace.states.back();
  EXPECT_NEAR(last.pose.x_mm, 8.25, 1e-6);
  EXPECT_LT(last.pose.y_mm, 0.0);
}

TEST_F(AcceptanceTest, OmniDirectionalEquivariance) {
  Criterion(6, "square path: each direction change is a 90 degree rotation");
  const Scenario omni = load_scenario_file(scenario_path("omni_square.json"));
  const SimTrace trace = run(omni.schedule, omni.environment, omni.robot,
                             kDefaultDtS, omni.initial_pose);
  ASSERT_EQ(trace.states.size(), 3001u);
  const auto pose_at = [&](size_t k) {
    return Vec2{trace.states[k].pose.x_mm, trace.states[k].pose.y_mm};
  };
  const Vec2 d0 = pose_at(1000) - pose_at(0);
  const Vec2 d1 = pose_at(2000) - pose_at(1000);
  const Vec2 d2 = pose_at(3000) - pose_at(2000);
  EXPECT_NEAR(std::hypot(d0.x, d0.y), 60.0, 1e-6);
  const Vec2 r0 = rotate90(d0);
  EXPECT_NEAR(d1.x, r0.x, 1e-9);
  EXPECT_NEAR(d1.y, r0.y, 1e-9);
  const Vec2 r1 = rotate90(d1);
  EXPECT_NEAR(d2.x, r1.x, 1e-9);
  EXPECT_NEAR(d2.y, r1.y, 1e-9);
  for (const SimState& s : trace.states) {
    EXPECT_EQ(s.pose.yaw_rad, 0.0);
  }
}

TEST_F(AcceptanceTest, PropertySuites) {
  Criterion(7, "property suites: oracle match, round trips, determinism");
  const Timer timer;

  // Constrained equilibrium vs an exhaustive grid oracle.
  {
    const BodyShapeParams body;
    Lcg rng(0x5eedacc7ULL);
    for (int i = 0; i < 20; ++i) {
      const double w = rng.uniform(16.05, 19.9);
      const double e_solver = shape_energy(equilibrium_shape(w, body), body);
      const double e_grid = grid_min_energy_under_width(w, 2e-3, 1e-5, 1e-6);
      EXPECT_NEAR(e_solver, e_grid, 1e-3 * e_grid) << "w=" << w;
    }
  }

  // Shape <-> dims round trip.
  {
    const BodyShapeParams body;
    Lcg rng(0x5eedacc8ULL);
    for (int i = 0; i < 1000; ++i) {
      const BodyShape shape{rng.uniform(body.theta_limits.min_rad + 1e-6,
                                        body.theta_limits.max_rad - 1e-6),
                            rng.uniform(5.0, 11.0)};
      const BodyDims dims = dims_from_shape(shape, body);
      const BodyShape back =
          shape_from_dims(dims.length_mm, dims.width_mm, body);
      EXPECT_NEAR(back.theta_rad, shape.theta_rad, 1e-9);
      EXPECT_NEAR(back.side_mm, shape.side_mm, 1e-9);
    }
  }

  // Actuator endpoint identities.
  {
    const ActuatorParams act;
    EXPECT_LE(std::abs(free_deflection(act, 225.0) - 405.0) / 405.0, 1e-12);
    EXPECT_LE(std::abs(blocked_force(act, 225.0) - 287.2) / 287.2, 1e-12);
    EXPECT_DOUBLE_EQ(deflection_under_load(act, 225.0, 0.0),
                     free_deflection(act, 225.0));
    EXPECT_NEAR(deflection_under_load(act, 225.0, blocked_force(act, 225.0)),
                0.0, 1e-9);
  }

  // Stride speed is linear in drive frequency.
  {
    const RobotConfig config;
    GaitSpec spec;
    const double base =
        stride_velocity(spec, config).x / spec.frequency_hz;
    for (int f = 1; f <= 10; ++f) {
      spec.frequency_hz = f;
      EXPECT_NEAR(stride_velocity(spec, config).x, base * f,
                  1e-9 * base * f);
    }
  }

  // Repeated runs serialize to byte-identical artifacts.
  {
    const Scenario gap = load_scenario_file(scenario_path("gap_16p5.json"));
    TempDir out_a;
    TempDir out_b;
    run_simulate(gap, kDefaultDtS, out_a.path());
    run_simulate(gap, kDefaultDtS, out_b.path());
    EXPECT_EQ(read_file(out_a.path() / "trace.csv"),
              read_file(out_b.path() / "trace.csv"));
    EXPECT_EQ(read_file(out_a.path() / "summary.json"),
              read_file(out_b.path() / "summary.json"));
    EXPECT_FALSE(read_file(out_a.path() / "trace.csv").empty());
  }

  EXPECT_LT(timer.elapsed_s(), 60.0);
}

TEST_F(AcceptanceTest, PayloadCapacityRatio) {
  Criterion(8, "blocked-force payload margin of 4.97 body masses");
  const RobotConfig config;
  const double force =
      tip_lift_block_force(config.legs, config.actuator, 225.0);
  const double expected =
      (4.0 * force / kGravityMPerS2 - config.mass_body_g) / config.mass_body_g;
  const double ratio = payload_ratio(config);
  EXPECT_NEAR(ratio, expected, 1e-12);
  EXPECT_NEAR(ratio, 4.97, 5e-3);
}

}  // namespace
}  // namespace mclari
