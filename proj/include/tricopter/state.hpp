#pragma once

#include "tricopter/types.hpp"

namespace tricopter {

/// Ground truth of the simulated airframe. Angles in degrees, rates in deg/s.
template <typename Scalar>
struct RigidBodyState {
  Vec3<Scalar> attitude = Vec3<Scalar>::Zero();
  Vec3<Scalar> body_rate = Vec3<Scalar>::Zero();
  /// Front-left, front-right, tail rotor thrust in newtons.
  Vec3<Scalar> motor_thrust = Vec3<Scalar>::Zero();
  Scalar servo_angle_actual = Scalar(0);
  Scalar t = Scalar(0);

  bool finite() const {
    return attitude.allFinite() && body_rate.allFinite() && motor_thrust.allFinite() &&
           std::isfinite(servo_angle_actual) && std::isfinite(t);
  }
};

using RigidBodyStated = RigidBodyState<double>;

}  // namespace tricopter
