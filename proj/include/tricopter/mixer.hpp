#pragma once

#include "tricopter/types.hpp"

#include <algorithm>
#include <cmath>

namespace tricopter {

template <typename Scalar>
struct ActuatorCommand {
  Scalar pwm_front_left = Scalar(1000);   // us
  Scalar pwm_front_right = Scalar(1000);  // us
  Scalar pwm_tail = Scalar(1000);         // us
  Scalar servo_angle = Scalar(0);         // deg, tail tilt

  Vec3<Scalar> pwm() const { return {pwm_front_left, pwm_front_right, pwm_tail}; }

  bool operator==(const ActuatorCommand&) const = default;
};

/// Y-frame mix. Front rotors share the pitch demand, the tail rotor opposes
/// it, and yaw is taken entirely by tilting the tail rotor on its servo.
template <typename Scalar>
struct MixerConfig {
  Scalar pitch_gain_front = Scalar(0.5);
  Scalar pitch_gain_tail = Scalar(1.0);
  Scalar servo_gain = Scalar(0.1);  // deg per output unit
  Scalar pwm_min = Scalar(1000);
  Scalar pwm_max = Scalar(2000);
  Scalar servo_limit = Scalar(45);  // deg

  void validate() const {
    if (!std::isfinite(pitch_gain_front) || !std::isfinite(pitch_gain_tail) || !std::isfinite(servo_gain))
      throw Error(Errc::out_of_range, "mixer: gains must be finite");
    if (!std::isfinite(pwm_min) || !std::isfinite(pwm_max) || !(pwm_min < pwm_max))
      throw Error(Errc::out_of_range, "mixer.pwm_min: must be below mixer.pwm_max");
    if (!(servo_limit >= Scalar(0)) || !std::isfinite(servo_limit))
      throw Error(Errc::out_of_range, "mixer.servo_limit: must be >= 0");
  }
};

using ActuatorCommandd = ActuatorCommand<double>;
using MixerConfigd = MixerConfig<double>;

template <typename Scalar>
ActuatorCommand<Scalar> saturate(const ActuatorCommand<Scalar>& cmd, const MixerConfig<Scalar>& cfg) {
  auto pwm = [&](Scalar v) { return std::clamp(v, cfg.pwm_min, cfg.pwm_max); };
  return {pwm(cmd.pwm_front_left), pwm(cmd.pwm_front_right), pwm(cmd.pwm_tail),
          std::clamp(cmd.servo_angle, -cfg.servo_limit, cfg.servo_limit)};
}

/// Adds the per-axis PID outputs (PWM offsets in us) to the throttle and
/// saturates every channel:
///
///   front_left  = throttle + roll - pitch_gain_front * pitch
///   front_right = throttle - roll - pitch_gain_front * pitch
///   tail        = throttle + pitch_gain_tail * pitch
///   servo       = servo_gain * yaw
template <typename Scalar>
ActuatorCommand<Scalar> mix(Scalar throttle, Scalar roll_out, Scalar pitch_out, Scalar yaw_out,
                            const MixerConfig<Scalar>& cfg) {
  if (!(throttle >= cfg.pwm_min && throttle <= cfg.pwm_max))
    throw Error(Errc::invalid_throttle, "invalid throttle");
  const ActuatorCommand<Scalar> raw{
      throttle + roll_out - cfg.pitch_gain_front * pitch_out,
      throttle - roll_out - cfg.pitch_gain_front * pitch_out,
      throttle + cfg.pitch_gain_tail * pitch_out,
      cfg.servo_gain * yaw_out,
  };
  return saturate(raw, cfg);
}

/// Linear map of a normalized command onto the pulse-width range,
/// 0 -> pwm_min and 1 -> pwm_max.
template <typename Scalar>
Scalar pwm_encode(Scalar normalized, const MixerConfig<Scalar>& cfg = {}) {
  if (!(normalized >= Scalar(0) && normalized <= Scalar(1)))
    throw Error(Errc::out_of_range, "pwm_encode: input must lie in [0, 1]");
  return cfg.pwm_min + normalized * (cfg.pwm_max - cfg.pwm_min);
}

}  // namespace tricopter
