#pragma once

#include "tricopter/harness/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tricopter::harness {

/// Scenario files are flat `key = value` text with dotted keys. `#` starts a
/// comment. Vector values are three numbers separated by spaces or commas.
/// Omitted keys keep the values of `base`; unknown and duplicate keys are
/// rejected. Errors are Errc::invalid_config and name the source line and key.
///
///   scenario.name / mode / duration / dt / throttle / initial_attitude / slew_rate
///   setpoint.<n> = <t> <roll> <pitch> <yaw>     (n = 0, 1, ...; sorted by n)
///   noise.gyro_bias / gyro_white_sigma / vibration_amp / vibration_freq /
///         accel_white_sigma / seed / gyro_polarity
///   filter.alpha
///   pid.<roll|pitch|yaw>.kp / ki / kd / i_limit / out_limit
///   mixer.pitch_gain_front / pitch_gain_tail / servo_gain / pwm_min / pwm_max / servo_limit
///   plant.inertia / arm_length / thrust_coeff / pwm_min / motor_tau / servo_tau /
///         disturbance_torque
Scenario parse_config_text(std::string_view text, const Scenario& base = {},
                           const std::string& source = "<text>");

/// Throws Errc::io_error if the file cannot be read.
Scenario parse_config(const std::filesystem::path& path, const Scenario& base = {});

/// Built-in scenarios. Names: hover, step-roll, step-pitch, step-yaw,
/// yaw-180, sweep-roll, sweep-pitch, sweep-yaw.
std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

/// Closed-loop step of `degrees` on one axis at t = 1 s, 20 s long.
Scenario step_scenario(Axis axis, double degrees);

/// Open-loop hold sweep through 30, 60, 90, 120, 160 deg on one axis, one hold
/// every 3 s, 30 s long.
Scenario sweep_scenario(Axis axis);

inline constexpr double kSweepAngles[] = {30.0, 60.0, 90.0, 120.0, 160.0};
inline constexpr double kSweepHoldPeriod = 3.0;

}  // namespace tricopter::harness
