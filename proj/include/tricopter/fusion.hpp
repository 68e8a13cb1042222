#pragma once

#include "tricopter/imu_model.hpp"
#include "tricopter/types.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace tricopter {

template <typename Scalar>
struct FilterConfig {
  /// Weight on the gyro-propagated angle; 1 - alpha goes to the absolute sensor.
  Scalar alpha = Scalar(0.93);
  /// Sample period in seconds.
  Scalar dt = Scalar(0.01);

  void validate() const {
    if (!(alpha >= Scalar(0) && alpha <= Scalar(1)))
      throw Error(Errc::out_of_range, "filter.alpha: must lie in [0, 1]");
    if (!(dt > Scalar(0)) || !std::isfinite(dt))
      throw Error(Errc::out_of_range, "filter.dt: must be > 0");
  }
};

/// Fused attitude in degrees (x = roll, y = pitch, z = yaw).
template <typename Scalar>
struct AttitudeEstimate {
  Vec3<Scalar> angle = Vec3<Scalar>::Zero();
  Scalar t = Scalar(0);
};

using FilterConfigd = FilterConfig<double>;
using AttitudeEstimated = AttitudeEstimate<double>;

namespace detail {

/// Shifts `target` by a multiple of 360 so it lies within 180 deg of `ref`.
template <typename Scalar>
Scalar unwrap_near(Scalar target, Scalar ref) {
  const Scalar diff = target - ref;
  if (diff > Scalar(180) || diff <= Scalar(-180)) return ref + wrap_degrees(diff);
  return target;
}

}  // namespace detail

/// Rectangular gyro integration, wrapped to (-180, 180].
template <typename Scalar>
Scalar integrate_gyro(Scalar angle, Scalar rate, Scalar dt) {
  return wrap_degrees(angle + rate * dt);
}

/// Low-pass pull of `angle` toward `acc_angle`: (1 - beta) * angle + beta * acc.
/// The blend takes the short way around the +-180 seam.
template <typename Scalar>
Scalar lowpass_blend(Scalar angle, Scalar acc_angle, Scalar beta) {
  if (!(beta >= Scalar(0) && beta <= Scalar(1)))
    throw Error(Errc::out_of_range, "lowpass_blend: beta must lie in [0, 1]");
  const Scalar acc = detail::unwrap_near(acc_angle, angle);
  return wrap_degrees((Scalar(1) - beta) * angle + beta * acc);
}

/// One complementary-filter step on a single axis:
///
///   angle <- alpha * (angle + gyro_rate * dt) + (1 - alpha) * acc_angle
///
/// Other axes are copied through; `t` advances by dt.
template <typename Scalar>
AttitudeEstimate<Scalar> complementary_update(const AttitudeEstimate<Scalar>& est, Scalar gyro_rate,
                                              Scalar acc_angle, const FilterConfig<Scalar>& cfg,
                                              Axis axis) {
  const int i = index(axis);
  if (!std::isfinite(gyro_rate) || !std::isfinite(acc_angle) || !std::isfinite(est.angle[i]))
    throw Error(Errc::invalid_sample, "invalid sample");

  const Scalar propagated = est.angle[i] + gyro_rate * cfg.dt;
  const Scalar acc = detail::unwrap_near(acc_angle, propagated);

  AttitudeEstimate<Scalar> next = est;
  next.angle[i] = wrap_degrees(cfg.alpha * propagated + (Scalar(1) - cfg.alpha) * acc);
  next.t = est.t + cfg.dt;
  return next;
}

/// Runs the filter over a recorded sample sequence, all three axes per sample.
/// Roll and pitch come from the accelerometer (branch chosen near the running
/// estimate), yaw from the sample's reference angle. Element k of the result
/// is the estimate after consuming sample k.
///
/// Samples must be strictly increasing in time and spaced within 10% of
/// cfg.dt; otherwise Errc::non_monotonic_input / Errc::irregular_spacing.
template <typename Scalar>
std::vector<AttitudeEstimate<Scalar>> batch_estimate(std::span<const ImuSample<Scalar>> samples,
                                                     const FilterConfig<Scalar>& cfg,
                                                     const AttitudeEstimate<Scalar>& initial) {
  cfg.validate();
  std::vector<AttitudeEstimate<Scalar>> out;
  out.reserve(samples.size());

  AttitudeEstimate<Scalar> est = initial;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const ImuSample<Scalar>& s = samples[k];
    if (k > 0) {
      const Scalar spacing = s.t - samples[k - 1].t;
      if (!(spacing > Scalar(0)))
        throw Error(Errc::non_monotonic_input, "non-monotonic input at sample " + std::to_string(k));
      if (std::abs(spacing - cfg.dt) > Scalar(0.1) * cfg.dt)
        throw Error(Errc::irregular_spacing, "irregular sample spacing at sample " + std::to_string(k));
    }

    const Tilt<Scalar> tilt = tilt_near(s.accel, Tilt<Scalar>{est.angle.x(), est.angle.y()});
    est = complementary_update(est, s.gyro.x(), tilt.roll, cfg, Axis::roll);
    est = complementary_update(est, s.gyro.y(), tilt.pitch, cfg, Axis::pitch);
    est = complementary_update(est, s.gyro.z(), s.yaw_reference, cfg, Axis::yaw);
    est.t = s.t;
    out.push_back(est);
  }
  return out;
}

}  // namespace tricopter
