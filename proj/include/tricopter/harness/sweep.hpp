#pragma once

#include "tricopter/harness/trace.hpp"

#include <vector>

namespace tricopter::harness {

/// Sensor and filter readings taken while the airframe is held at a known
/// angle, one per hold of an open-loop sweep.
struct HoldReading {
  double angle = 0.0;  // commanded hold angle, deg
  double t = 0.0;      // time of the reading
  double truth = 0.0;
  double accel = 0.0;
  double gyro_raw = 0.0;
  double fused = 0.0;
};

/// For each angle in `hold_angles`, finds the first row where the true
/// attitude on `axis` reaches it and reports the row `settle` seconds later.
/// Throws Errc::out_of_range if a hold is never reached or the trace ends first.
std::vector<HoldReading> hold_readings(const std::vector<TraceRow>& rows, Axis axis,
                                       const std::vector<double>& hold_angles, double settle = 2.0);

}  // namespace tricopter::harness
