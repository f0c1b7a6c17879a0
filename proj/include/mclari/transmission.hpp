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

// Spherical five-bar leg transmission, linearized around neutral: the two
// actuator inputs (lift, swing) map to leg-tip displacement and force
// through the design lever-arm ratios, with constant efficiency factors
// absorbing flexure losses. Lift and swing are treated as decoupled.

#ifndef MCLARI_TRANSMISSION_HPP_
#define MCLARI_TRANSMISSION_HPP_

#include <cmath>
#include <vector>

#include "mclari/actuator.hpp"
#include "mclari/errors.hpp"

namespace mclari {

// Leg-tip endpoints measured at 225 Vpp.
inline constexpr double kTipSwingAt225Mm = 2.85;     // peak-to-peak
inline constexpr double kTipLiftAt225Mm = 2.3;       // peak-to-peak, no load
inline constexpr double kLiftBlockForceAt225Mn = 14.3;

inline constexpr double kLiftRatio = 12.5;   // tip drop 6.25 mm over l_i 500 um
inline constexpr double kSwingRatio = 10.0;  // leg length 4.5 mm over s_i 450 um

/// Transmission geometry plus calibrated efficiency constants. Defaults
/// reproduce the 225 Vpp endpoints exactly.
struct LegModuleParams {
  double t_ratio_lift = kLiftRatio;
  double t_ratio_swing = kSwingRatio;
  double l_i_um = 500.0;        // lift input lever arm
  double s_i_um = 450.0;        // swing input lever arm
  double tip_drop_mm = 6.25;    // center joint to tip, lift leverage
  double leg_length_mm = 4.5;   // center joint to tip, swing leverage
  double eta_disp_lift =
      kTipLiftAt225Mm / (kLiftRatio * kFreeDeflectionAt225Um * 1e-3);
  double eta_disp_swing =
      kTipSwingAt225Mm / (kSwingRatio * kFreeDeflectionAt225Um * 1e-3);
  double eta_force_lift =
      kLiftBlockForceAt225Mn * kLiftRatio / kBlockedForceAt225Mn;
};

/// Leg-tip displacement from neutral, body frame.
struct LegTipState {
  double swing_mm = 0.0;
  double lift_mm = 0.0;
};

inline void validate(const LegModuleParams& leg) {
  auto in_unit = [](double eta) { return eta > 0.0 && eta <= 1.0; };
  if (!in_unit(leg.eta_disp_lift) || !in_unit(leg.eta_disp_swing) ||
      !in_unit(leg.eta_force_lift)) {
    throw ValidationError("transmission efficiencies must lie in (0, 1]");
  }
  if (!(leg.l_i_um > 0.0) || !(leg.s_i_um > 0.0) || !(leg.tip_drop_mm > 0.0) ||
      !(leg.leg_length_mm > 0.0)) {
    throw ValidationError("transmission lever arms must be positive");
  }
  // The ratios are the lever-arm quotients; reject inconsistent overrides.
  const double lift_ratio = leg.tip_drop_mm / (leg.l_i_um * 1e-3);
  const double swing_ratio = leg.leg_length_mm / (leg.s_i_um * 1e-3);
  if (std::abs(leg.t_ratio_lift - lift_ratio) > 1e-6 * lift_ratio ||
      std::abs(leg.t_ratio_swing - swing_ratio) > 1e-6 * swing_ratio) {
    throw ValidationError(
        "transmission ratios disagree with lever-arm geometry");
  }
}

/// Peak-to-peak tip swing deflection (mm) at drive voltage v.
inline double tip_swing_deflection(const LegModuleParams& leg,
                                   const ActuatorParams& act, double v) {
  return leg.eta_disp_swing * leg.t_ratio_swing *
         free_deflection(act, v) * 1e-3;
}

/// Peak-to-peak tip lift deflection (mm) at drive voltage v, no load.
inline double tip_lift_deflection(const LegModuleParams& leg,
                                  const ActuatorParams& act, double v) {
  return leg.eta_disp_lift * leg.t_ratio_lift * free_deflection(act, v) * 1e-3;
}

/// Blocked force at the tip in the lift direction (mN). The transmission
/// attenuates actuator force by the lift ratio.
inline double tip_lift_block_force(const LegModuleParams& leg,
                                   const ActuatorParams& act, double v) {
  return leg.eta_force_lift * blocked_force(act, v) / leg.t_ratio_lift;
}

/// Samples the quasi-static tip path over one drive cycle. Each channel
/// traces half its peak-to-peak range around neutral:
///   swing(t) = (S/2) sin(2*pi*f*t + phase_swing), likewise for lift.
/// With a 90 degree lift/swing offset the samples lie on an axis-aligned
/// ellipse.
inline std::vector<LegTipState> tip_trajectory(const LegModuleParams& leg,
                                               const ActuatorParams& act,
                                               const DriveCommand& lift_cmd,
                                               const DriveCommand& swing_cmd,
                                               int n_samples) {
  if (lift_cmd.frequency_hz != swing_cmd.frequency_hz) {
    throw ValidationError("lift and swing commands must share one frequency");
  }
  if (n_samples < 4) {
    throw ValidationError("tip trajectory needs at least 4 samples");
  }
  const double half_swing =
      0.5 * tip_swing_deflection(leg, act, swing_cmd.amplitude_vpp);
  const double half_lift =
      0.5 * tip_lift_deflection(leg, act, lift_cmd.amplitude_vpp);
  std::vector<LegTipState> states(static_cast<size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    const double cycle_phase = kTau * k / n_samples;
    states[static_cast<size_t>(k)] = {
        half_swing * std::sin(cycle_phase + swing_cmd.phase_rad),
        half_lift * std::sin(cycle_phase + lift_cmd.phase_rad)};
  }
  return states;
}

}  // namespace mclari

#endif  // MCLARI_TRANSMISSION_HPP_
