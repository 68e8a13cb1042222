#include "tricopter/harness/scenario.hpp"

#include <cmath>
#include <string>

namespace tricopter::harness {

namespace {

[[noreturn]] void invalid(const std::string& message) { throw Error(Errc::invalid_config, message); }

template <typename F>
void rethrow_as_config(const std::string& prefix, F&& check) {
  try {
    check();
  } catch (const Error& e) {
    invalid(prefix + e.what());
  }
}

}  // namespace

const char* mode_name(Mode mode) {
  return mode == Mode::closed_loop ? "closed_loop" : "open_loop_sweep";
}

std::size_t Scenario::step_count() const {
  const double ratio = duration / dt;
  return static_cast<std::size_t>(std::floor(ratio * (1.0 + 1e-9)));
}

Vec3d Scenario::setpoint_at(double t) const {
  Vec3d sp = wrap_degrees(initial_attitude);
  for (const SetpointEntry& entry : schedule) {
    if (entry.t > t) break;
    sp = wrap_degrees(entry.attitude);
  }
  return sp;
}

void Scenario::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) invalid("scenario.duration: must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) invalid("scenario.dt: must be > 0");
  if (!(slew_rate > 0.0) || !std::isfinite(slew_rate)) invalid("scenario.slew_rate: must be > 0");
  if (!initial_attitude.allFinite()) invalid("scenario.initial_attitude: must be finite");

  double previous = 0.0;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const std::string path = "setpoint." + std::to_string(i);
    const SetpointEntry& entry = schedule[i];
    if (!std::isfinite(entry.t) || entry.t < 0.0 || entry.t > duration)
      invalid(path + ": time must lie within [0, scenario.duration]");
    if (entry.t < previous) invalid(path + ": times must be non-decreasing");
    if (!entry.attitude.allFinite()) invalid(path + ": angles must be finite");
    previous = entry.t;
  }

  rethrow_as_config("", [&] { filter().validate(); });
  rethrow_as_config("", [&] { noise.validate(); });
  for (Axis axis : kAxes) {
    const AxisController& c = pid[index(axis)];
    const std::string prefix = std::string("pid.") + axis_name(axis) + ".";
    rethrow_as_config(prefix, [&] { c.gains.validate(); });
    rethrow_as_config(prefix, [&] { PidStated{0.0, 0.0, false, c.i_limit, c.out_limit}.validate(); });
  }
  rethrow_as_config("", [&] { mixer.validate(); });
  rethrow_as_config("", [&] { plant.validate(); });

  if (!(throttle >= mixer.pwm_min && throttle <= mixer.pwm_max))
    invalid("scenario.throttle: must lie within [mixer.pwm_min, mixer.pwm_max]");
}

}  // namespace tricopter::harness
