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

// Quasi-static model of the bimorph piezoelectric actuator: free tip
// deflection and blocked force are linear in peak-to-peak drive voltage,
// with a load line interpolating between them. "Amplitude" always means
// peak-to-peak, matching the bench characterization convention.

#ifndef MCLARI_ACTUATOR_HPP_
#define MCLARI_ACTUATOR_HPP_

#include <cassert>
#include <cmath>
#include <string>

#include "mclari/errors.hpp"
#include "mclari/geometry.hpp"

namespace mclari {

// Calibration anchors measured at the 225 Vpp drive ceiling.
inline constexpr double kVmaxVpp = 225.0;
inline constexpr double kFreeDeflectionAt225Um = 405.0;
// Blocked-force anchor: 30x robot body weight (0.976 g at 9.81 m/s^2),
// rounded to the reported precision. Recorded as a calibration constant.
inline constexpr double kBlockedForceAt225Mn = 287.2;
// One actuator out of the 0.544 g set of eight.
inline constexpr double kActuatorMassMg = 68.0;

/// Linear bimorph coefficients. Default-constructed params carry the
/// bench calibration.
struct ActuatorParams {
  double c_defl_um_per_v = kFreeDeflectionAt225Um / kVmaxVpp;
  double c_force_mn_per_v = kBlockedForceAt225Mn / kVmaxVpp;
  double v_max_vpp = kVmaxVpp;
  double mass_mg = kActuatorMassMg;
};

/// One sinusoidal drive channel. The instantaneous voltage is
/// amplitude * (bias_fraction + 0.5 * sin(2*pi*f*t + phase)), so a
/// bias_fraction of 0.5 keeps the dual-rail signal within [0, amplitude].
struct DriveCommand {
  double amplitude_vpp = 0.0;
  double frequency_hz = 0.0;
  double phase_rad = 0.0;
  double bias_fraction = 0.5;
};

inline void validate(const ActuatorParams& p) {
  if (!(p.c_defl_um_per_v > 0.0) || !(p.c_force_mn_per_v > 0.0) ||
      !(p.v_max_vpp > 0.0) || !(p.mass_mg > 0.0)) {
    throw ValidationError("actuator params must be positive");
  }
}

namespace detail {
inline void check_voltage(double v, double v_max) {
  if (!(v >= 0.0) || v > v_max) {
    throw RangeError("drive voltage " + std::to_string(v) +
                     " V outside [0, " + std::to_string(v_max) + "] Vpp");
  }
}
}  // namespace detail

/// Free tip deflection (um) at peak-to-peak voltage v.
inline double free_deflection(const ActuatorParams& p, double v) {
  detail::check_voltage(v, p.v_max_vpp);
  return p.c_defl_um_per_v * v;
}

/// Single-sided blocked force (mN) at peak-to-peak voltage v.
inline double blocked_force(const ActuatorParams& p, double v) {
  detail::check_voltage(v, p.v_max_vpp);
  return p.c_force_mn_per_v * v;
}

/// Output stiffness of the load line, mN per um.
inline double output_stiffness(const ActuatorParams& p) {
  return p.c_force_mn_per_v / p.c_defl_um_per_v;
}

/// Tip deflection (um) under an opposing load, clamped at the blocked
/// condition. f_ext_mn must be non-negative.
inline double deflection_under_load(const ActuatorParams& p, double v,
                                    double f_ext_mn) {
  assert(f_ext_mn >= 0.0);
  const double d = free_deflection(p, v) - f_ext_mn / output_stiffness(p);
  return std::max(0.0, d);
}

struct CalibrationPoint {
  double voltage_vpp = 0.0;
  double value = 0.0;  // um for deflection, mN for force
};

/// Fits the linear model so both characterization points are reproduced
/// exactly.
inline ActuatorParams calibrate_actuator(CalibrationPoint free_point,
                                         CalibrationPoint block_point,
                                         double v_max_vpp, double mass_mg) {
  if (!(free_point.voltage_vpp > 0.0) || !(free_point.value > 0.0) ||
      !(block_point.voltage_vpp > 0.0) || !(block_point.value > 0.0) ||
      !(v_max_vpp > 0.0) || !(mass_mg > 0.0)) {
    throw ValidationError("calibration points, v_max and mass must be positive");
  }
  ActuatorParams p;
  p.c_defl_um_per_v = free_point.value / free_point.voltage_vpp;
  p.c_force_mn_per_v = block_point.value / block_point.voltage_vpp;
  p.v_max_vpp = v_max_vpp;
  p.mass_mg = mass_mg;
  return p;
}

inline void validate(const DriveCommand& cmd, double v_max_vpp) {
  if (!(cmd.amplitude_vpp >= 0.0) || cmd.amplitude_vpp > v_max_vpp) {
    throw RangeError("drive amplitude " + std::to_string(cmd.amplitude_vpp) +
                     " Vpp outside [0, " + std::to_string(v_max_vpp) + "]");
  }
  if (!(cmd.frequency_hz > 0.0)) {
    throw ValidationError("drive frequency must be positive");
  }
  if (!(cmd.bias_fraction >= 0.0 && cmd.bias_fraction <= 1.0)) {
    throw ValidationError("bias fraction must lie in [0, 1]");
  }
}

/// Instantaneous channel voltage at local time t within a segment.
inline double drive_voltage(const DriveCommand& cmd, double t_s) {
  return cmd.amplitude_vpp *
         (cmd.bias_fraction +
          0.5 * std::sin(kTau * cmd.frequency_hz * t_s + cmd.phase_rad));
}

}  // namespace mclari

#endif  // MCLARI_ACTUATOR_HPP_
