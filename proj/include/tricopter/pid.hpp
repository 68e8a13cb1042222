#pragma once

#include "tricopter/types.hpp"

#include <algorithm>
#include <cmath>

namespace tricopter {

/// Output units are PWM microsecond offsets; the error is in degrees.
template <typename Scalar>
struct PidGains {
  Scalar kp = Scalar(1.41);
  Scalar ki = Scalar(0.91);
  Scalar kd = Scalar(1.31);

  void validate() const {
    auto ok = [](Scalar g) { return std::isfinite(g) && g >= Scalar(0); };
    if (!ok(kp)) throw Error(Errc::out_of_range, "kp: must be finite and >= 0");
    if (!ok(ki)) throw Error(Errc::out_of_range, "ki: must be finite and >= 0");
    if (!ok(kd)) throw Error(Errc::out_of_range, "kd: must be finite and >= 0");
  }
};

template <typename Scalar>
struct PidState {
  Scalar integral = Scalar(0);    // degree-seconds
  Scalar prev_error = Scalar(0);  // degrees
  bool initialized = false;
  Scalar i_limit = Scalar(250);    // bound on |ki * integral|
  Scalar out_limit = Scalar(400);  // bound on |output|

  void validate() const {
    if (!(i_limit >= Scalar(0)) || !std::isfinite(i_limit))
      throw Error(Errc::out_of_range, "i_limit: must be finite and >= 0");
    if (!(out_limit >= Scalar(0)) || !std::isfinite(out_limit))
      throw Error(Errc::out_of_range, "out_limit: must be finite and >= 0");
  }
};

template <typename Scalar>
struct PidStep {
  Scalar output;
  Scalar p;
  Scalar i;
  Scalar d;
  PidState<Scalar> state;
};

using PidGainsd = PidGains<double>;
using PidStated = PidState<double>;

/// Shortest signed angle from `measured` to `setpoint`, in (-180, 180].
template <typename Scalar>
Scalar compute_error(Scalar setpoint, Scalar measured) {
  return wrap_degrees(setpoint - measured);
}

/// One discrete PID update at a fixed period:
///
///   P = kp * e
///   integral += e * dt, clamped so that |ki * integral| <= i_limit
///   D = kd * (e - prev_error) / dt, and 0 on the first call after reset
///   output = clamp(P + ki * integral + D, +-out_limit)
///
/// The derivative acts on the error, so setpoint steps produce a one-sample
/// kick (bounded by out_limit). A non-finite error throws
/// Errc::invalid_error_input and the caller's state is left as it was.
template <typename Scalar>
PidStep<Scalar> pid_step(const PidState<Scalar>& state, const PidGains<Scalar>& gains, Scalar error,
                         Scalar dt) {
  if (!std::isfinite(error)) throw Error(Errc::invalid_error_input, "invalid error input");
  if (!(dt > Scalar(0))) throw Error(Errc::out_of_range, "pid_step: dt must be > 0");

  PidState<Scalar> next = state;

  next.integral += error * dt;
  if (gains.ki > Scalar(0)) {
    const Scalar bound = state.i_limit / gains.ki;
    next.integral = std::clamp(next.integral, -bound, bound);
  }

  const Scalar previous = state.initialized ? state.prev_error : error;
  const Scalar p = gains.kp * error;
  const Scalar i = gains.ki * next.integral;
  const Scalar d = gains.kd * (error - previous) / dt;

  next.prev_error = error;
  next.initialized = true;

  const Scalar output = std::clamp(p + i + d, -state.out_limit, state.out_limit);
  return {output, p, i, d, next};
}

template <typename Scalar>
PidState<Scalar> pid_reset(const PidState<Scalar>& state) {
  PidState<Scalar> fresh;
  fresh.i_limit = state.i_limit;
  fresh.out_limit = state.out_limit;
  return fresh;
}

}  // namespace tricopter
