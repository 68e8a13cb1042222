#include "tricopter/harness/run.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace tricopter::harness {

namespace {

[[noreturn]] void abort_at(std::size_t step, const std::string& why) {
  throw Error(Errc::runtime_abort, "aborted at step " + std::to_string(step) + ": " + why);
}

/// Moves the true attitude toward the setpoint at a bounded rate. The body
/// rate is the rate actually applied over the step, so a noise-free gyro
/// integrates back to the true attitude.
RigidBodyStated slew_toward(const RigidBodyStated& state, const Vec3d& target, double max_rate, double dt) {
  RigidBodyStated next = state;
  const double max_move = max_rate * dt;
  for (int i = 0; i < 3; ++i) {
    const double move = std::clamp(wrap_degrees(target[i] - state.attitude[i]), -max_move, max_move);
    next.body_rate[i] = move / dt;
    next.attitude[i] = wrap_degrees(state.attitude[i] + move);
  }
  next.t = state.t + dt;
  return next;
}

}  // namespace

std::vector<TraceRow> run_scenario(const Scenario& scenario, const StageObserver& observer) {
  scenario.validate();
  auto notify = [&](Stage stage, std::size_t step) {
    if (observer) observer(stage, step);
  };

  const bool closed_loop = scenario.mode == Mode::closed_loop;
  const FilterConfigd filter = scenario.filter();
  const double dt = scenario.dt;
  const std::size_t steps = scenario.step_count();

  ImuModel<double> imu(scenario.noise);
  RigidBodyStated truth = trimmed_state(scenario.plant, scenario.throttle, scenario.initial_attitude);
  AttitudeEstimated estimate{wrap_degrees(scenario.initial_attitude), 0.0};

  std::array<PidStated, 3> pid;
  for (Axis axis : kAxes) {
    pid[index(axis)].i_limit = scenario.pid[index(axis)].i_limit;
    pid[index(axis)].out_limit = scenario.pid[index(axis)].out_limit;
  }

  std::vector<TraceRow> rows;
  rows.reserve(steps);

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    truth.t = t;
    TraceRow row;
    try {
      const Vec3d setpoint = scenario.setpoint_at(t);

      const auto reading = imu.sample(truth, t);
      notify(Stage::sense, k);

      const Tilt<double> tilt = tilt_near(reading.sample.accel, Tilt<double>{estimate.angle.x(), estimate.angle.y()});
      const Vec3d acc_angle(tilt.roll, tilt.pitch, reading.sample.yaw_reference);
      for (Axis axis : kAxes) {
        estimate = complementary_update(estimate, reading.sample.gyro[index(axis)], acc_angle[index(axis)],
                                        filter, axis);
      }
      estimate.t = t;
      notify(Stage::fuse, k);

      Vec3d error;
      Vec3d output = Vec3d::Zero();
      for (Axis axis : kAxes) {
        const int i = index(axis);
        error[i] = compute_error(setpoint[i], estimate.angle[i]);
        if (closed_loop) {
          const PidStep<double> step = pid_step(pid[i], scenario.pid[i].gains, error[i], dt);
          output[i] = step.output;
          pid[i] = step.state;
        }
      }
      notify(Stage::control, k);

      const ActuatorCommandd cmd = mix(scenario.throttle, output.x(), output.y(), output.z(), scenario.mixer);
      notify(Stage::mix, k);

      row.t = t;
      row.true_attitude = truth.attitude;
      row.gyro_raw = reading.gyro_raw;
      row.acc_angle = acc_angle;
      row.estimate = estimate.angle;
      row.error = error;
      row.pid_output = output;
      row.pwm = cmd.pwm();
      row.servo_deg = cmd.servo_angle;
      if (!row.finite()) abort_at(k, "non-finite value in trace row");
      rows.push_back(row);
      notify(Stage::record, k);

      truth = closed_loop ? step_dynamics(truth, cmd, scenario.plant, dt)
                          : slew_toward(truth, setpoint, scenario.slew_rate, dt);
      notify(Stage::plant, k);
    } catch (const Error& e) {
      if (e.code() == Errc::runtime_abort) throw;
      abort_at(k, e.what());
    }
  }
  return rows;
}

}  // namespace tricopter::harness
