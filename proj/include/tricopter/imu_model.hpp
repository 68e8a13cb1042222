#pragma once

#include "tricopter/noise.hpp"
#include "tricopter/state.hpp"
#include "tricopter/types.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <cstdint>
#include <string>

namespace tricopter {

/// One IMU reading. `gyro` is the body-frame rate after mounting-polarity
/// correction; `accel` is specific force in g. `yaw_reference` carries the
/// reference-angle stand-in for the yaw channel, which an accelerometer
/// cannot observe.
template <typename Scalar>
struct ImuSample {
  Scalar t = Scalar(0);
  Vec3<Scalar> gyro = Vec3<Scalar>::Zero();
  Vec3<Scalar> accel = Vec3<Scalar>(Scalar(0), Scalar(0), Scalar(1));
  Scalar yaw_reference = Scalar(0);
};

/// Sensor imperfections. Member defaults are the simulator's typical flight
/// noise; `ideal()` turns every source off.
template <typename Scalar>
struct SensorNoiseConfig {
  Vec3<Scalar> gyro_bias = Vec3<Scalar>::Constant(Scalar(0.5));  // deg/s
  Scalar gyro_white_sigma = Scalar(0.05);                          // deg/s
  Scalar vibration_amp = Scalar(0.1);                              // g, along body z
  Scalar vibration_freq = Scalar(45);                              // Hz
  Scalar accel_white_sigma = Scalar(0.003);                        // g
  std::uint64_t seed = 1;
  /// Per-axis mounting sign of the gyro, +1 or -1.
  Vec3<Scalar> gyro_polarity = Vec3<Scalar>::Ones();

  static SensorNoiseConfig ideal() {
    SensorNoiseConfig cfg;
    cfg.gyro_bias.setZero();
    cfg.gyro_white_sigma = Scalar(0);
    cfg.vibration_amp = Scalar(0);
    cfg.accel_white_sigma = Scalar(0);
    return cfg;
  }

  /// Throws Errc::out_of_range naming the first offending field.
  void validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
      throw Error(Errc::out_of_range, "noise." + field + ": " + why);
    };
    if (!gyro_bias.allFinite()) fail("gyro_bias", "must be finite");
    if (!(gyro_white_sigma >= 0) || !std::isfinite(gyro_white_sigma))
      fail("gyro_white_sigma", "must be >= 0");
    if (!(vibration_amp >= 0) || !std::isfinite(vibration_amp))
      fail("vibration_amp", "must be >= 0");
    if (!(vibration_freq >= 0) || !std::isfinite(vibration_freq))
      fail("vibration_freq", "must be >= 0");
    if (!(accel_white_sigma >= 0) || !std::isfinite(accel_white_sigma))
      fail("accel_white_sigma", "must be >= 0");
    for (int i = 0; i < 3; ++i) {
      if (gyro_polarity[i] != Scalar(1) && gyro_polarity[i] != Scalar(-1))
        fail("gyro_polarity", "each entry must be +1 or -1");
    }
  }
};

/// Independent noise streams per sensor. Each sampling call consumes a fixed
/// number of draws, so the n-th call yields the same noise for a given seed
/// regardless of configuration magnitudes.
struct ImuNoiseStreams {
  explicit ImuNoiseStreams(std::uint64_t seed)
      : gyro(stream_seed(seed, 1)), accel(stream_seed(seed, 2)), reference(stream_seed(seed, 3)) {}

  GaussianStream gyro;
  GaussianStream accel;
  GaussianStream reference;
};

/// Gravity reaction expressed in body axes for a ZYX (yaw-pitch-roll) attitude,
/// in g. Level and at rest gives (0, 0, 1).
template <typename Scalar>
Vec3<Scalar> gravity_in_body(const Vec3<Scalar>& attitude_deg) {
  using AngleAxis = Eigen::AngleAxis<Scalar>;
  const Eigen::Matrix<Scalar, 3, 3> body_to_world =
      (AngleAxis(deg2rad(attitude_deg.z()), Vec3<Scalar>::UnitZ()) *
       AngleAxis(deg2rad(attitude_deg.y()), Vec3<Scalar>::UnitY()) *
       AngleAxis(deg2rad(attitude_deg.x()), Vec3<Scalar>::UnitX()))
          .toRotationMatrix();
  return body_to_world.transpose() * Vec3<Scalar>::UnitZ();
}

/// Raw gyro output: polarity * body rate + bias + white noise. Always draws
/// three normals from `rng`.
template <typename Scalar>
Vec3<Scalar> sample_gyro(const RigidBodyState<Scalar>& state, const SensorNoiseConfig<Scalar>& cfg,
                         GaussianStream& rng) {
  Vec3<Scalar> out;
  for (int i = 0; i < 3; ++i) {
    const Scalar n = static_cast<Scalar>(rng());
    out[i] = cfg.gyro_polarity[i] * state.body_rate[i] + cfg.gyro_bias[i] + cfg.gyro_white_sigma * n;
  }
  return out;
}

/// Undo the mounting polarity of a raw gyro reading.
template <typename Scalar>
Vec3<Scalar> mount_correct(const Vec3<Scalar>& raw, const SensorNoiseConfig<Scalar>& cfg) {
  return raw.cwiseProduct(cfg.gyro_polarity);
}

/// Accelerometer output in g: gravity in body axes, plus a sinusoidal motor
/// vibration along body z, plus white noise on every axis.
template <typename Scalar>
Vec3<Scalar> sample_accel(const RigidBodyState<Scalar>& state, const SensorNoiseConfig<Scalar>& cfg,
                          Scalar t, GaussianStream& rng) {
  Vec3<Scalar> out = gravity_in_body(state.attitude);
  out.z() += cfg.vibration_amp * std::sin(Scalar(2) * Scalar(EIGEN_PI) * cfg.vibration_freq * t);
  for (int i = 0; i < 3; ++i) out[i] += cfg.accel_white_sigma * static_cast<Scalar>(rng());
  return out;
}

/// Stand-in absolute angle sensor: true angle plus accelerometer-grade noise
/// mapped to degrees. Used for yaw only; it is a modeling convenience, not a
/// physical accelerometer measurement.
template <typename Scalar>
Scalar sample_reference_angle(const RigidBodyState<Scalar>& state, const SensorNoiseConfig<Scalar>& cfg,
                              Axis axis, GaussianStream& rng) {
  const Scalar n = cfg.accel_white_sigma * static_cast<Scalar>(rng());
  return wrap_degrees(state.attitude[index(axis)] + rad2deg(std::atan(n)));
}

/// Inclination from a specific-force vector:
///   roll  = atan2(a_y, a_z)
///   pitch = atan2(-a_x, sqrt(a_y^2 + a_z^2))
/// Throws Errc::indeterminate_inclination for a zero vector. Yaw is not
/// observable and is rejected with Errc::out_of_range.
template <typename Scalar>
Scalar accel_to_angle(const Vec3<Scalar>& accel, Axis axis) {
  if (!accel.allFinite() || accel.squaredNorm() == Scalar(0))
    throw Error(Errc::indeterminate_inclination, "indeterminate inclination");
  switch (axis) {
    case Axis::roll:
      return wrap_degrees(rad2deg(std::atan2(accel.y(), accel.z())));
    case Axis::pitch:
      return wrap_degrees(rad2deg(std::atan2(-accel.x(), std::hypot(accel.y(), accel.z()))));
    case Axis::yaw:
      break;
  }
  throw Error(Errc::out_of_range, "yaw is not observable from the accelerometer");
}

template <typename Scalar>
struct Tilt {
  Scalar roll;
  Scalar pitch;
};

/// Roll/pitch from the accelerometer, choosing between the two equivalent
/// Euler branches (roll, pitch) and (roll + 180, 180 - pitch) the one closest
/// to `hint`. The canonical branch confines pitch to [-90, 90]; the alternate
/// one lets a tracked attitude continue past vertical.
template <typename Scalar>
Tilt<Scalar> tilt_near(const Vec3<Scalar>& accel, const Tilt<Scalar>& hint) {
  const Tilt<Scalar> canonical{accel_to_angle(accel, Axis::roll), accel_to_angle(accel, Axis::pitch)};
  const Tilt<Scalar> alternate{wrap_degrees(canonical.roll + Scalar(180)),
                               wrap_degrees(Scalar(180) - canonical.pitch)};
  auto distance = [&](const Tilt<Scalar>& t) {
    return std::abs(wrap_degrees(t.roll - hint.roll)) + std::abs(wrap_degrees(t.pitch - hint.pitch));
  };
  return distance(alternate) < distance(canonical) ? alternate : canonical;
}

/// Stateful convenience wrapper that owns the noise streams and produces
/// complete samples.
template <typename Scalar>
class ImuModel {
 public:
  explicit ImuModel(const SensorNoiseConfig<Scalar>& cfg) : cfg_(cfg), streams_(cfg.seed) {
    cfg_.validate();
  }

  struct Reading {
    ImuSample<Scalar> sample;  // mount-corrected
    Vec3<Scalar> gyro_raw;
  };

  Reading sample(const RigidBodyState<Scalar>& state, Scalar t) {
    Reading r;
    r.gyro_raw = sample_gyro(state, cfg_, streams_.gyro);
    r.sample.t = t;
    r.sample.gyro = mount_correct(r.gyro_raw, cfg_);
    r.sample.accel = sample_accel(state, cfg_, t, streams_.accel);
    r.sample.yaw_reference = sample_reference_angle(state, cfg_, Axis::yaw, streams_.reference);
    return r;
  }

  const SensorNoiseConfig<Scalar>& config() const { return cfg_; }

 private:
  SensorNoiseConfig<Scalar> cfg_;
  ImuNoiseStreams streams_;
};

}  // namespace tricopter
