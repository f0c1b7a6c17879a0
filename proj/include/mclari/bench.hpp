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

// Bench runners behind the CLI: characterization sweeps, scenario runs
// with trace/summary emission, and parameter sweeps. All file output is
// deterministic (byte-identical across repeated runs of the same inputs).

#ifndef MCLARI_BENCH_HPP_
#define MCLARI_BENCH_HPP_

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mclari/csv.hpp"
#include "mclari/errors.hpp"
#include "mclari/scenario.hpp"
#include "mclari/sim.hpp"

namespace mclari {

struct SummaryMetrics {
  double mean_speed_mm_s = 0.0;
  double speed_bl_per_s = 0.0;
  std::vector<double> transit_time_s;  // per corridor region
  double transit_time_total_s = 0.0;
  double max_compression_width_mm = 0.0;
  std::optional<double> min_clearance_mm;
  bool stuck = false;
  bool stuck_any = false;
  Vec2 net_displacement_mm;
  double duration_s = 0.0;
  size_t samples = 0;
};

/// Derives the summary from a trace. mean_speed is path length over
/// duration (stuck steps contribute zero path); speed_bl_per_s divides by
/// the neutral body length; max_compression_width is the narrowest width
/// reached; transit times measure first-to-last engagement per corridor.
inline SummaryMetrics compute_summary(const SimTrace& trace,
                                      const CorridorEnvironment& env,
                                      const RobotConfig& config) {
  if (trace.states.size() < 2) {
    throw ValidationError("summary needs a trace with at least two samples");
  }
  SummaryMetrics m;
  m.samples = trace.states.size();
  const SimState& first = trace.states.front();
  const SimState& last = trace.states.back();
  m.duration_s = last.time_s - first.time_s;
  m.net_displacement_mm = {last.pose.x_mm - first.pose.x_mm,
                           last.pose.y_mm - first.pose.y_mm};
  double path_mm = 0.0;
  double min_width = std::numeric_limits<double>::infinity();
  std::vector<double> first_active(env.regions.size(), -1.0);
  std::vector<double> last_active(env.regions.size(), -1.0);
  for (size_t k = 0; k < trace.states.size(); ++k) {
    const SimState& s = trace.states[k];
    if (k > 0) {
      const SimState& p = trace.states[k - 1];
      path_mm += std::hypot(s.pose.x_mm - p.pose.x_mm,
                            s.pose.y_mm - p.pose.y_mm);
    }
    min_width = std::min(min_width,
                         dims_from_shape(s.shape, config.body).width_mm);
    m.stuck_any = m.stuck_any || s.stuck;
    const ActiveLimits limits = active_limits(env, s.pose, config.body);
    if (!limits.active_regions.empty() && k > 0) {
      m.transit_time_total_s += trace.dt_s;
    }
    for (int r : limits.active_regions) {
      if (first_active[static_cast<size_t>(r)] < 0.0) {
        first_active[static_cast<size_t>(r)] = s.time_s;
      }
      last_active[static_cast<size_t>(r)] = s.time_s;
    }
    if (!env.walls.empty()) {
      const Quad quad = footprint(s.shape, s.pose, config.body);
      for (const Segment2& wall : env.walls) {
        const double c = signed_clearance(quad, wall);
        if (!m.min_clearance_mm || c < *m.min_clearance_mm) {
          m.min_clearance_mm = c;
        }
      }
    }
  }
  m.mean_speed_mm_s = path_mm / m.duration_s;
  m.speed_bl_per_s = m.mean_speed_mm_s / config.body.dims_neutral.length_mm;
  m.max_compression_width_mm = min_width;
  m.stuck = last.stuck;
  for (size_t r = 0; r < env.regions.size(); ++r) {
    m.transit_time_s.push_back(
        first_active[r] < 0.0 ? 0.0 : last_active[r] - first_active[r]);
  }
  return m;
}

namespace detail {

inline std::vector<double> sweep_voltages(const CharacterizeConfig& config) {
  std::vector<double> voltages;
  if (config.v_end_vpp <= config.v_start_vpp) {
    voltages.push_back(config.v_start_vpp);
    return voltages;
  }
  for (double v = config.v_start_vpp; v <= config.v_end_vpp + 1e-9;
       v += config.v_step_vpp) {
    voltages.push_back(std::min(v, config.v_end_vpp));
  }
  return voltages;
}

inline std::string characterize_csv(
    const std::vector<double>& voltages,
    const std::function<double(double)>& value_of, const char* unit) {
  std::string out = "voltage_vpp,value,unit\n";
  for (double v : voltages) {
    out += format_fixed(v, 6) + "," + format_fixed(value_of(v), 9) + "," +
           unit + "\n";
  }
  return out;
}

}  // namespace detail

/// Emits the four characterization curves as CSV files into out_dir.
/// leg_deflection.csv holds two rows per voltage, unit-tagged mm_swing and
/// mm_lift, so one file covers both leg output axes.
inline void run_characterize(const CharacterizeConfig& config,
                             const std::filesystem::path& out_dir,
                             bool gnuplot_script = false) {
  validate(config.robot);
  ensure_directory(out_dir);
  const std::vector<double> voltages = detail::sweep_voltages(config);
  const ActuatorParams& act = config.robot.actuator;
  const LegModuleParams& legs = config.robot.legs;
  write_text_file(out_dir / "actuator_deflection.csv",
                  detail::characterize_csv(
                      voltages, [&](double v) { return free_deflection(act, v); },
                      "um"));
  write_text_file(out_dir / "actuator_force.csv",
                  detail::characterize_csv(
                      voltages, [&](double v) { return blocked_force(act, v); },
                      "mN"));
  std::string leg_defl = "voltage_vpp,value,unit\n";
  for (double v : voltages) {
    leg_defl += format_fixed(v, 6) + "," +
                format_fixed(tip_swing_deflection(legs, act, v), 9) +
                ",mm_swing\n";
    leg_defl += format_fixed(v, 6) + "," +
                format_fixed(tip_lift_deflection(legs, act, v), 9) +
                ",mm_lift\n";
  }
  write_text_file(out_dir / "leg_deflection.csv", leg_defl);
  write_text_file(
      out_dir / "leg_force.csv",
      detail::characterize_csv(
          voltages,
          [&](double v) { return tip_lift_block_force(legs, act, v); }, "mN"));
  if (gnuplot_script) {
    write_text_file(out_dir / "plot_characterize.gp",
                    "set datafile separator \",\"\n"
                    "set term pngcairo size 900,700\n"
                    "set xlabel \"drive voltage [Vpp]\"\n"
                    "set output \"characterize.png\"\n"
                    "plot \"actuator_deflection.csv\" every ::1 using 1:2 "
                    "with linespoints title \"actuator free deflection "
                    "[um]\", \\\n"
                    "     \"actuator_force.csv\" every ::1 using 1:2 "
                    "with linespoints title \"actuator blocked force [mN]\", "
                    "\\\n"
                    "     \"leg_force.csv\" every ::1 using 1:2 "
                    "with linespoints title \"leg lift block force [mN]\"\n");
  }
}

namespace detail {

inline std::string trace_csv(const SimTrace& trace,
                             const BodyShapeParams& body) {
  std::string out = "t,x,y,yaw,L,W,theta,side,stuck,segment\n";
  for (const SimState& s : trace.states) {
    const BodyDims dims = dims_from_shape(s.shape, body);
    out += format_fixed(s.time_s, 6) + "," + format_fixed(s.pose.x_mm, 9) +
           "," + format_fixed(s.pose.y_mm, 9) + "," +
           format_fixed(s.pose.yaw_rad, 9) + "," +
           format_fixed(dims.length_mm, 9) + "," +
           format_fixed(dims.width_mm, 9) + "," +
           format_fixed(s.shape.theta_rad, 9) + "," +
           format_fixed(s.shape.side_mm, 9) + "," +
           (s.stuck ? "1" : "0") + "," + std::to_string(s.segment_index) +
           "\n";
  }
  return out;
}

inline nlohmann::json summary_json(const std::string& name,
                                   const SummaryMetrics& m, double dt_s) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = name;
  j["dt_s"] = dt_s;
  j["duration_s"] = m.duration_s;
  j["samples"] = m.samples;
  j["mean_speed_mm_s"] = m.mean_speed_mm_s;
  j["speed_bl_per_s"] = m.speed_bl_per_s;
  j["net_displacement_mm"] = {{"x", m.net_displacement_mm.x},
                              {"y", m.net_displacement_mm.y}};
  j["transit_time_s"] = m.transit_time_s;
  j["transit_time_total_s"] = m.transit_time_total_s;
  j["max_compression_width_mm"] = m.max_compression_width_mm;
  if (m.min_clearance_mm) {
    j["min_clearance_mm"] = *m.min_clearance_mm;
  } else {
    j["min_clearance_mm"] = nullptr;
  }
  j["stuck"] = m.stuck;
  j["stuck_any"] = m.stuck_any;
  return j;
}

}  // namespace detail

/// Runs a scenario and writes trace.csv plus summary.json into out_dir.
inline SummaryMetrics run_simulate(const Scenario& scenario, double dt_s,
                                   const std::filesystem::path& out_dir,
                                   bool gnuplot_script = false) {
  ensure_directory(out_dir);
  const SimTrace trace = run(scenario.schedule, scenario.environment,
                             scenario.robot, dt_s, scenario.initial_pose);
  const SummaryMetrics metrics =
      compute_summary(trace, scenario.environment, scenario.robot);
  write_text_file(out_dir / "trace.csv",
                  detail::trace_csv(trace, scenario.robot.body));
  write_text_file(
      out_dir / "summary.json",
      detail::summary_json(scenario.name, metrics, dt_s).dump(2) + "\n");
  if (gnuplot_script) {
    write_text_file(out_dir / "plot_trace.gp",
                    "set datafile separator \",\"\n"
                    "set term pngcairo size 900,700\n"
                    "set output \"trace_path.png\"\n"
                    "set xlabel \"x [mm]\"\nset ylabel \"y [mm]\"\n"
                    "plot \"trace.csv\" every ::1 using 2:3 with lines "
                    "title \"body center\"\n"
                    "set output \"trace_dims.png\"\n"
                    "set xlabel \"t [s]\"\nset ylabel \"[mm]\"\n"
                    "plot \"trace.csv\" every ::1 using 1:5 with lines "
                    "title \"L\", \\\n"
                    "     \"trace.csv\" every ::1 using 1:6 with lines "
                    "title \"W\"\n");
  }
  return metrics;
}

/// Runs the scenario once per parameter value and writes sweep.csv, one
/// row of summary metrics per value. Recognized parameters: frequency_hz
/// and amplitude_vpp (applied to every schedule segment) and eta_gait.
inline void run_sweep(const SweepConfig& config, double dt_s,
                      const std::filesystem::path& out_dir,
                      bool gnuplot_script = false) {
  if (config.parameter != "frequency_hz" &&
      config.parameter != "amplitude_vpp" && config.parameter != "eta_gait") {
    throw ConfigError("unrecognized sweep parameter \"" + config.parameter +
                      "\" (expected frequency_hz, amplitude_vpp, eta_gait)");
  }
  ensure_directory(out_dir);
  std::string csv =
      "parameter,value,mean_speed_mm_s,speed_bl_per_s,transit_time_total_s,"
      "max_compression_width_mm,min_clearance_mm,stuck\n";
  for (double value : config.values) {
    Scenario scenario = config.scenario;
    if (config.parameter == "eta_gait") {
      scenario.robot.eta_gait = value;
      validate(scenario.robot);
    } else {
      for (GaitSegment& seg : scenario.schedule.segments) {
        if (config.parameter == "frequency_hz") {
          seg.spec.frequency_hz = value;
        } else {
          seg.spec.amplitude_vpp = value;
        }
        validate(seg.spec);
      }
    }
    const SimTrace trace = run(scenario.schedule, scenario.environment,
                               scenario.robot, dt_s, scenario.initial_pose);
    const SummaryMetrics m =
        compute_summary(trace, scenario.environment, scenario.robot);
    csv += config.parameter + "," + format_fixed(value, 6) + "," +
           format_fixed(m.mean_speed_mm_s, 9) + "," +
           format_fixed(m.speed_bl_per_s, 9) + "," +
           format_fixed(m.transit_time_total_s, 6) + "," +
           format_fixed(m.max_compression_width_mm, 9) + "," +
           (m.min_clearance_mm ? format_fixed(*m.min_clearance_mm, 9)
                               : std::string("nan")) +
           "," + (m.stuck ? "1" : "0") + "\n";
  }
  write_text_file(out_dir / "sweep.csv", csv);
  if (gnuplot_script) {
    write_text_file(out_dir / "plot_sweep.gp",
                    "set datafile separator \",\"\n"
                    "set term pngcairo size 900,700\n"
                    "set output \"sweep.png\"\n"
                    "set xlabel \"parameter value\"\n"
                    "set ylabel \"mean speed [mm/s]\"\n"
                    "plot \"sweep.csv\" every ::1 using 2:3 with linespoints "
                    "title \"mean speed\"\n");
  }
}

}  // namespace mclari

#endif  // MCLARI_BENCH_HPP_
