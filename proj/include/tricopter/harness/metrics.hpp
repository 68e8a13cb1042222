#pragma once

#include "tricopter/harness/trace.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tricopter::harness {

/// Step-response figures for one axis, measured on the fused estimate from
/// the first setpoint change. Times are relative to the step. NaN marks a
/// figure that was never reached (no 90% crossing, or not settled by the end).
struct AxisMetrics {
  double step_time = 0.0;
  double step_size = 0.0;          // deg, signed
  double rise_time = 0.0;          // first crossing of 90% of the step
  double overshoot_pct = 0.0;      // (peak - target) / |step| * 100, >= 0
  double settling_time = 0.0;      // entry into the +-2% band for good
  double steady_state_error = 0.0; // |target - mean of final 10% of the window|
};

struct MetricsReport {
  std::array<std::optional<AxisMetrics>, 3> axis;
};

inline constexpr double kSettlingBand = 0.02;

/// The setpoint of a row, recovered as estimate + error.
Vec3d setpoint_of(const TraceRow& row);

/// Throws Errc::no_step_event when no axis sees a setpoint change.
MetricsReport report_metrics(const std::vector<TraceRow>& rows);

std::string format_metrics(const MetricsReport& report);

}  // namespace tricopter::harness
