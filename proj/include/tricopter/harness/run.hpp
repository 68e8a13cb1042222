#pragma once

#include "tricopter/harness/scenario.hpp"
#include "tricopter/harness/trace.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace tricopter::harness {

/// Pipeline stages, in the order they run within one control step.
enum class Stage { sense, fuse, control, mix, record, plant };

/// Called after each stage of each step; used to instrument loop ordering.
using StageObserver = std::function<void(Stage, std::size_t step)>;

/// Executes a scenario and returns one row per control step.
///
/// Closed loop, per step: sample IMU -> inclination -> complementary update
/// -> error -> PID -> mix -> record -> plant step. Open-loop sweeps slew the
/// true attitude toward the scheduled angles and run only sensing and fusion;
/// PID outputs stay 0 and the rotors sit at throttle.
///
/// Throws Errc::invalid_config for an invalid scenario and Errc::runtime_abort
/// (message carries the step index) if any value turns non-finite.
std::vector<TraceRow> run_scenario(const Scenario& scenario, const StageObserver& observer = {});

}  // namespace tricopter::harness
