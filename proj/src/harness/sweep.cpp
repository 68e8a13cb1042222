#include "tricopter/harness/sweep.hpp"

#include <cmath>
#include <string>

namespace tricopter::harness {

std::vector<HoldReading> hold_readings(const std::vector<TraceRow>& rows, Axis axis,
                                       const std::vector<double>& hold_angles, double settle) {
  const int i = index(axis);
  std::vector<HoldReading> out;
  std::size_t cursor = 0;
  for (double angle : hold_angles) {
    const double target = wrap_degrees(angle);
    while (cursor < rows.size() && std::abs(wrap_degrees(rows[cursor].true_attitude[i] - target)) > 1e-9) ++cursor;
    if (cursor == rows.size())
      throw Error(Errc::out_of_range, "hold at " + std::to_string(angle) + " deg never reached");

    const double t_read = rows[cursor].t + settle;
    std::size_t k = cursor;
    while (k < rows.size() && rows[k].t < t_read - 1e-9) ++k;
    if (k == rows.size())
      throw Error(Errc::out_of_range, "trace ends before the hold at " + std::to_string(angle) + " deg settles");

    const TraceRow& r = rows[k];
    out.push_back({angle, r.t, r.true_attitude[i], r.acc_angle[i], r.gyro_raw[i], r.estimate[i]});
    cursor = k;
  }
  return out;
}

}  // namespace tricopter::harness
