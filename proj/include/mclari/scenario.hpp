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

// JSON scenario configs (schema_version 1). Parsing is strict: unknown
// keys, wrong types, and out-of-range values all raise ConfigError so a
// typo cannot silently change an experiment.

#ifndef MCLARI_SCENARIO_HPP_
#define MCLARI_SCENARIO_HPP_

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"
#include "mclari/errors.hpp"
#include "mclari/gait.hpp"
#include "mclari/sim.hpp"

namespace mclari {

inline constexpr int kSchemaVersion = 1;

/// One locomotion experiment: robot overrides, corridor description,
/// scripted gait schedule, and the starting pose.
struct Scenario {
  std::string name;
  RobotConfig robot;
  CorridorEnvironment environment;
  GaitSchedule schedule;
  Pose2 initial_pose;
};

/// Voltage sweep request for the characterization bench.
struct CharacterizeConfig {
  std::string name;
  RobotConfig robot;
  double v_start_vpp = 0.0;
  double v_end_vpp = kVmaxVpp;
  double v_step_vpp = kVmaxVpp;
};

/// Parameter sweep over repeated scenario runs.
struct SweepConfig {
  std::string name;
  std::string parameter;
  std::vector<double> values;
  Scenario scenario;
};

namespace detail {

using Json = nlohmann::json;

inline void check_keys(const Json& j, std::initializer_list<const char*> keys,
                       const std::string& context) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : keys) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key \"" + item.key() + "\" in " + context);
    }
  }
}

inline const Json& require(const Json& j, const char* key,
                           const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError("missing key \"" + std::string(key) + "\" in " +
                      context);
  }
  return *it;
}

inline double number(const Json& j, const std::string& context) {
  if (!j.is_number()) throw ConfigError(context + " must be a number");
  return j.get<double>();
}

inline double number_field(const Json& j, const char* key,
                           const std::string& context) {
  return number(require(j, key, context), context + "." + key);
}

inline double number_or(const Json& j, const char* key, double fallback,
                        const std::string& context) {
  auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, context + "." + key);
}

inline Pose2 parse_pose(const Json& j, const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + " must be an object");
  check_keys(j, {"x_mm", "y_mm", "yaw_rad"}, context);
  return {number_or(j, "x_mm", 0.0, context),
          number_or(j, "y_mm", 0.0, context),
          number_or(j, "yaw_rad", 0.0, context)};
}

inline RobotConfig parse_robot(const Json& j) {
  RobotConfig config;
  if (!j.is_object()) throw ConfigError("robot must be an object");
  check_keys(j,
             {"eta_gait", "mass_body_g", "mass_payload_g", "wall_drag_factor",
              "leg_amplitude_scale"},
             "robot");
  config.eta_gait = number_or(j, "eta_gait", config.eta_gait, "robot");
  config.mass_body_g = number_or(j, "mass_body_g", config.mass_body_g, "robot");
  config.mass_payload_g =
      number_or(j, "mass_payload_g", config.mass_payload_g, "robot");
  config.wall_drag_factor =
      number_or(j, "wall_drag_factor", config.wall_drag_factor, "robot");
  if (auto it = j.find("leg_amplitude_scale"); it != j.end()) {
    if (!it->is_array() || it->size() != kLegCount) {
      throw ConfigError("robot.leg_amplitude_scale must hold 4 numbers");
    }
    for (int i = 0; i < kLegCount; ++i) {
      config.leg_amplitude_scale[static_cast<size_t>(i)] =
          number((*it)[static_cast<size_t>(i)], "robot.leg_amplitude_scale");
    }
  }
  validate(config);
  return config;
}

inline Direction parse_direction(const Json& j, const std::string& context) {
  const std::string s = j.is_string() ? j.get<std::string>() : std::string();
  if (s == "+x") return Direction::kPlusX;
  if (s == "-x") return Direction::kMinusX;
  if (s == "+y") return Direction::kPlusY;
  if (s == "-y") return Direction::kMinusY;
  throw ConfigError(context + " must be one of \"+x\", \"-x\", \"+y\", \"-y\"");
}

inline GaitSpec parse_gait(const Json& j, const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + " must be an object");
  check_keys(j,
             {"pattern", "direction", "frequency_hz", "amplitude_vpp",
              "lift_swing_phase_rad"},
             context);
  GaitSpec spec;
  if (auto it = j.find("pattern"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>() != "trot") {
      throw ConfigError(context + ".pattern must be \"trot\"");
    }
  }
  spec.direction = parse_direction(require(j, "direction", context),
                                   context + ".direction");
  spec.frequency_hz = number_field(j, "frequency_hz", context);
  spec.amplitude_vpp = number_field(j, "amplitude_vpp", context);
  spec.lift_swing_phase_rad = number_or(j, "lift_swing_phase_rad",
                                        spec.lift_swing_phase_rad, context);
  validate(spec);
  return spec;
}

inline GaitSchedule parse_schedule(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError("schedule must be a nonempty array of segments");
  }
  GaitSchedule schedule;
  int index = 0;
  for (const Json& seg : j) {
    const std::string context = "schedule[" + std::to_string(index++) + "]";
    if (!seg.is_object()) throw ConfigError(context + " must be an object");
    check_keys(seg, {"duration_s", "gait"}, context);
    GaitSegment out;
    out.duration_s = number_field(seg, "duration_s", context);
    out.spec = parse_gait(require(seg, "gait", context), context + ".gait");
    schedule.segments.push_back(out);
  }
  validate(schedule);
  return schedule;
}

inline CorridorEnvironment parse_environment(const Json& j) {
  if (!j.is_object()) throw ConfigError("environment must be an object");
  check_keys(j, {"corridors"}, "environment");
  std::vector<CorridorRegion> regions;
  if (auto it = j.find("corridors"); it != j.end()) {
    if (!it->is_array()) {
      throw ConfigError("environment.corridors must be an array");
    }
    int index = 0;
    for (const Json& c : *it) {
      const std::string context =
          "environment.corridors[" + std::to_string(index++) + "]";
      if (!c.is_object()) throw ConfigError(context + " must be an object");
      check_keys(c, {"axis", "center_mm", "gap_mm", "span_mm"}, context);
      CorridorRegion region;
      const Json& axis = require(c, "axis", context);
      const std::string a =
          axis.is_string() ? axis.get<std::string>() : std::string();
      if (a == "x") {
        region.axis = Axis::kX;
      } else if (a == "y") {
        region.axis = Axis::kY;
      } else {
        throw ConfigError(context + ".axis must be \"x\" or \"y\"");
      }
      region.center_mm = number_field(c, "center_mm", context);
      region.gap_mm = number_field(c, "gap_mm", context);
      const Json& span = require(c, "span_mm", context);
      if (!span.is_array() || span.size() != 2) {
        throw ConfigError(context + ".span_mm must be [lo, hi]");
      }
      region.span_lo_mm = number(span[0], context + ".span_mm[0]");
      region.span_hi_mm = number(span[1], context + ".span_mm[1]");
      regions.push_back(region);
    }
  }
  return make_environment(std::move(regions));
}

inline void check_header(const Json& j, const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + " must be a JSON object");
  const Json& version = require(j, "schema_version", context);
  if (!version.is_number_integer() ||
      version.get<int>() != kSchemaVersion) {
    throw ConfigError("unsupported schema_version in " + context +
                      " (expected " + std::to_string(kSchemaVersion) + ")");
  }
}

inline std::string parse_name(const Json& j, const std::string& context) {
  const Json& name = require(j, "name", context);
  if (!name.is_string() || name.get<std::string>().empty()) {
    throw ConfigError(context + ".name must be a nonempty string");
  }
  return name.get<std::string>();
}

}  // namespace detail

inline Scenario parse_scenario(const detail::Json& j) {
  detail::check_header(j, "scenario");
  detail::check_keys(j,
                     {"schema_version", "name", "description", "robot",
                      "initial_pose", "environment", "schedule"},
                     "scenario");
  Scenario scenario;
  scenario.name = detail::parse_name(j, "scenario");
  if (auto it = j.find("robot"); it != j.end()) {
    scenario.robot = detail::parse_robot(*it);
  }
  if (auto it = j.find("initial_pose"); it != j.end()) {
    scenario.initial_pose = detail::parse_pose(*it, "initial_pose");
  }
  if (auto it = j.find("environment"); it != j.end()) {
    scenario.environment = detail::parse_environment(*it);
  }
  scenario.schedule =
      detail::parse_schedule(detail::require(j, "schedule", "scenario"));
  return scenario;
}

inline CharacterizeConfig parse_characterize(const detail::Json& j) {
  detail::check_header(j, "characterize config");
  detail::check_keys(j, {"schema_version", "name", "description", "robot",
                         "sweep"},
                     "characterize config");
  CharacterizeConfig config;
  config.name = detail::parse_name(j, "characterize config");
  if (auto it = j.find("robot"); it != j.end()) {
    config.robot = detail::parse_robot(*it);
  }
  const detail::Json& sweep =
      detail::require(j, "sweep", "characterize config");
  detail::check_keys(sweep, {"v_start_vpp", "v_end_vpp", "v_step_vpp"},
                     "sweep");
  config.v_start_vpp = detail::number_field(sweep, "v_start_vpp", "sweep");
  config.v_end_vpp = detail::number_field(sweep, "v_end_vpp", "sweep");
  config.v_step_vpp = detail::number_or(sweep, "v_step_vpp",
                                        config.v_end_vpp - config.v_start_vpp,
                                        "sweep");
  if (config.v_start_vpp < 0.0 || config.v_end_vpp < config.v_start_vpp ||
      config.v_end_vpp > config.robot.actuator.v_max_vpp) {
    throw RangeError("sweep voltages must satisfy 0 <= start <= end <= " +
                     std::to_string(config.robot.actuator.v_max_vpp));
  }
  if (config.v_end_vpp > config.v_start_vpp && !(config.v_step_vpp > 0.0)) {
    throw RangeError("sweep v_step_vpp must be positive");
  }
  return config;
}

inline SweepConfig parse_sweep(const detail::Json& j) {
  detail::check_header(j, "sweep config");
  detail::check_keys(j,
                     {"schema_version", "name", "description", "parameter",
                      "range", "values", "scenario"},
                     "sweep config");
  SweepConfig config;
  config.name = detail::parse_name(j, "sweep config");
  const detail::Json& parameter =
      detail::require(j, "parameter", "sweep config");
  if (!parameter.is_string()) {
    throw ConfigError("sweep parameter must be a string");
  }
  config.parameter = parameter.get<std::string>();
  if (auto it = j.find("values"); it != j.end()) {
    if (!it->is_array() || it->empty()) {
      throw ConfigError("sweep values must be a nonempty array");
    }
    for (const detail::Json& v : *it) {
      config.values.push_back(detail::number(v, "sweep values"));
    }
  } else {
    const detail::Json& range = detail::require(j, "range", "sweep config");
    detail::check_keys(range, {"start", "end", "step"}, "range");
    const double start = detail::number_field(range, "start", "range");
    const double end = detail::number_field(range, "end", "range");
    const double step = detail::number_field(range, "step", "range");
    if (!(step > 0.0) || end < start) {
      throw ConfigError("sweep range needs end >= start and step > 0");
    }
    for (double v = start; v <= end + 1e-9; v += step) {
      config.values.push_back(v);
    }
  }
  config.scenario =
      parse_scenario(detail::require(j, "scenario", "sweep config"));
  return config;
}

/// Reads and parses a JSON config file; malformed JSON raises ConfigError.
inline detail::Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  try {
    return detail::Json::parse(in);
  } catch (const detail::Json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
}

inline Scenario load_scenario_file(const std::string& path) {
  return parse_scenario(load_json_file(path));
}

inline CharacterizeConfig load_characterize_file(const std::string& path) {
  return parse_characterize(load_json_file(path));
}

inline SweepConfig load_sweep_file(const std::string& path) {
  return parse_sweep(load_json_file(path));
}

}  // namespace mclari

#endif  // MCLARI_SCENARIO_HPP_
