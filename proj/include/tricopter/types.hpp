#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>

namespace tricopter {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

using Vec3d = Vec3<double>;

/// Body axes; roll about X, pitch about Y, yaw about Z.
enum class Axis { roll = 0, pitch = 1, yaw = 2 };

inline constexpr int index(Axis axis) { return static_cast<int>(axis); }

inline constexpr const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::roll: return "roll";
    case Axis::pitch: return "pitch";
    case Axis::yaw: return "yaw";
  }
  return "?";
}

inline constexpr Axis kAxes[] = {Axis::roll, Axis::pitch, Axis::yaw};

enum class Errc {
  indeterminate_inclination,
  invalid_sample,
  non_monotonic_input,
  irregular_spacing,
  invalid_error_input,
  invalid_throttle,
  out_of_range,
  plant_state_corrupt,
  invalid_config,
  runtime_abort,
  io_error,
  no_step_event,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Wraps an angle in degrees into (-180, 180]. Values already inside the
/// range are returned untouched.
template <typename Scalar>
Scalar wrap_degrees(Scalar angle) {
  if (angle > Scalar(-180) && angle <= Scalar(180)) return angle;
  Scalar r = std::fmod(angle + Scalar(180), Scalar(360));
  if (r <= Scalar(0)) r += Scalar(360);
  return r - Scalar(180);
}

template <typename Scalar>
Vec3<Scalar> wrap_degrees(const Vec3<Scalar>& angles) {
  return angles.unaryExpr([](Scalar a) { return wrap_degrees(a); });
}

template <typename Scalar>
constexpr Scalar deg2rad(Scalar deg) {
  return deg * Scalar(EIGEN_PI) / Scalar(180);
}

template <typename Scalar>
constexpr Scalar rad2deg(Scalar rad) {
  return rad * Scalar(180) / Scalar(EIGEN_PI);
}

}  // namespace tricopter
