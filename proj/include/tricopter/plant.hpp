#pragma once

#include "tricopter/mixer.hpp"
#include "tricopter/state.hpp"
#include "tricopter/types.hpp"

#include <algorithm>
#include <cmath>

namespace tricopter {

/// Decoupled rotational model of a Y-frame tricopter. Front rotors sit at
/// +-60 deg from the nose on arms of `arm_length`; the tail rotor sits on the
/// rear arm and is tilted by the yaw servo.
template <typename Scalar>
struct PlantConfig {
  Vec3<Scalar> inertia = Vec3<Scalar>(Scalar(0.02), Scalar(0.02), Scalar(0.04));  // kg m^2
  Scalar arm_length = Scalar(0.3);                                                // m
  Scalar thrust_coeff = Scalar(0.006);  // N per us above pwm_min
  Scalar pwm_min = Scalar(1000);        // us, zero-thrust pulse width
  Scalar motor_tau = Scalar(0.05);      // s
  Scalar servo_tau = Scalar(0.1);       // s
  Vec3<Scalar> disturbance_torque = Vec3<Scalar>::Zero();  // N m

  void validate() const {
    if (!inertia.allFinite() || (inertia.array() <= Scalar(0)).any())
      throw Error(Errc::out_of_range, "plant.inertia: each axis must be > 0");
    if (!(arm_length > Scalar(0)) || !std::isfinite(arm_length))
      throw Error(Errc::out_of_range, "plant.arm_length: must be > 0");
    if (!(thrust_coeff >= Scalar(0)) || !std::isfinite(thrust_coeff))
      throw Error(Errc::out_of_range, "plant.thrust_coeff: must be >= 0");
    if (!std::isfinite(pwm_min)) throw Error(Errc::out_of_range, "plant.pwm_min: must be finite");
    if (!(motor_tau > Scalar(0)) || !std::isfinite(motor_tau))
      throw Error(Errc::out_of_range, "plant.motor_tau: must be > 0");
    if (!(servo_tau > Scalar(0)) || !std::isfinite(servo_tau))
      throw Error(Errc::out_of_range, "plant.servo_tau: must be > 0");
    if (!disturbance_torque.allFinite())
      throw Error(Errc::out_of_range, "plant.disturbance_torque: must be finite");
  }
};

using PlantConfigd = PlantConfig<double>;

/// Steady-state thrust for a pulse width.
template <typename Scalar>
Scalar thrust_for_pwm(Scalar pwm, const PlantConfig<Scalar>& cfg) {
  return cfg.thrust_coeff * std::max(pwm - cfg.pwm_min, Scalar(0));
}

/// Exact first-order step toward `target` with time constant `tau`.
template <typename Scalar>
Scalar first_order_lag(Scalar current, Scalar target, Scalar tau, Scalar dt) {
  return current + (target - current) * (Scalar(1) - std::exp(-dt / tau));
}

template <typename Scalar>
Scalar motor_lag(Scalar current_thrust, Scalar commanded_pwm, const PlantConfig<Scalar>& cfg, Scalar dt) {
  return first_order_lag(current_thrust, thrust_for_pwm(commanded_pwm, cfg), cfg.motor_tau, dt);
}

/// Body torques in N m from rotor thrusts and tail tilt, disturbance included.
template <typename Scalar>
Vec3<Scalar> body_torque(const Vec3<Scalar>& thrust, Scalar servo_deg, const PlantConfig<Scalar>& cfg) {
  // sin and cos of 60 deg, written so that balanced thrusts cancel exactly
  const Scalar lateral = cfg.arm_length * std::sqrt(Scalar(3)) / Scalar(2);
  const Scalar forward = cfg.arm_length / Scalar(2);
  const Scalar fl = thrust[0], fr = thrust[1], tail = thrust[2];
  return Vec3<Scalar>((fl - fr) * lateral, tail * cfg.arm_length - (fl + fr) * forward,
                      tail * std::sin(deg2rad(servo_deg)) * cfg.arm_length) +
         cfg.disturbance_torque;
}

/// Rotor thrusts that hold a given throttle in steady state; a level state
/// built this way is an equilibrium of step_dynamics.
template <typename Scalar>
RigidBodyState<Scalar> trimmed_state(const PlantConfig<Scalar>& cfg, Scalar throttle,
                                     const Vec3<Scalar>& attitude = Vec3<Scalar>::Zero()) {
  RigidBodyState<Scalar> s;
  s.attitude = wrap_degrees(attitude);
  s.motor_thrust.setConstant(thrust_for_pwm(throttle, cfg));
  return s;
}

/// Advances the airframe by dt.
///
/// Rotor thrusts and the servo angle advance through their exact first-order
/// lags. Angular acceleration (torque / inertia, per axis) and then attitude
/// are integrated with the trapezoidal rule over the step, which is
/// second-order accurate and exact for constant torque.
template <typename Scalar>
RigidBodyState<Scalar> step_dynamics(const RigidBodyState<Scalar>& state, const ActuatorCommand<Scalar>& cmd,
                                     const PlantConfig<Scalar>& cfg, Scalar dt) {
  if (!(dt > Scalar(0))) throw Error(Errc::out_of_range, "step_dynamics: dt must be > 0");
  const bool cmd_finite = cmd.pwm().allFinite() && std::isfinite(cmd.servo_angle);
  if (!state.finite() || !cmd_finite) throw Error(Errc::plant_state_corrupt, "plant state corrupt");

  RigidBodyState<Scalar> next = state;
  const Vec3<Scalar> pwm = cmd.pwm();
  for (int i = 0; i < 3; ++i) next.motor_thrust[i] = motor_lag(state.motor_thrust[i], pwm[i], cfg, dt);
  next.servo_angle_actual = first_order_lag(state.servo_angle_actual, cmd.servo_angle, cfg.servo_tau, dt);

  const Vec3<Scalar> torque_start = body_torque(state.motor_thrust, state.servo_angle_actual, cfg);
  const Vec3<Scalar> torque_end = body_torque(next.motor_thrust, next.servo_angle_actual, cfg);
  const Vec3<Scalar> accel_deg =
      (Scalar(0.5) * (torque_start + torque_end)).cwiseQuotient(cfg.inertia) * (Scalar(180) / Scalar(EIGEN_PI));

  next.body_rate = state.body_rate + accel_deg * dt;
  next.attitude = wrap_degrees(Vec3<Scalar>(state.attitude + Scalar(0.5) * (state.body_rate + next.body_rate) * dt));
  next.t = state.t + dt;

  if (!next.finite()) throw Error(Errc::plant_state_corrupt, "plant state corrupt");
  return next;
}

}  // namespace tricopter
