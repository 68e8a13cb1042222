#pragma once

#include "tricopter/fusion.hpp"
#include "tricopter/imu_model.hpp"
#include "tricopter/mixer.hpp"
#include "tricopter/pid.hpp"
#include "tricopter/plant.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace tricopter::harness {

enum class Mode { closed_loop, open_loop_sweep };

struct SetpointEntry {
  double t = 0.0;
  Vec3d attitude = Vec3d::Zero();  // roll, pitch, yaw in degrees
};

struct AxisController {
  PidGainsd gains;
  double i_limit = 250.0;
  double out_limit = 400.0;
};

/// Everything needed to reproduce one simulation run.
struct Scenario {
  std::string name = "default";
  Mode mode = Mode::closed_loop;
  double duration = 20.0;  // s
  double dt = 0.01;        // s, control and sample period
  double throttle = 1500.0;
  Vec3d initial_attitude = Vec3d::Zero();
  /// Piecewise-constant setpoints; before the first entry the setpoint is the
  /// initial attitude.
  std::vector<SetpointEntry> schedule;
  /// Open-loop sweeps slew the true attitude toward the setpoint at this rate.
  double slew_rate = 90.0;  // deg/s

  SensorNoiseConfig<double> noise;
  double alpha = 0.93;
  std::array<AxisController, 3> pid;
  MixerConfigd mixer;
  PlantConfigd plant;

  FilterConfigd filter() const { return {alpha, dt}; }

  /// Rows produced by run_scenario: floor(duration / dt), with a relative
  /// tolerance of 1e-9 so that e.g. 0.35 / 0.01 counts 35 steps.
  std::size_t step_count() const;

  Vec3d setpoint_at(double t) const;

  /// Throws Errc::invalid_config with the dotted field path of the first
  /// violated invariant.
  void validate() const;
};

const char* mode_name(Mode mode);

}  // namespace tricopter::harness
