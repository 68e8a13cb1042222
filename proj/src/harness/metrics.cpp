#include "tricopter/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace tricopter::harness {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Setpoint changes below this are CSV rounding, not steps.
constexpr double kStepThreshold = 1e-3;

bool is_step(double before, double after) { return std::abs(wrap_degrees(after - before)) > kStepThreshold; }

std::optional<AxisMetrics> axis_metrics(const std::vector<TraceRow>& rows, int axis) {
  const std::size_t n = rows.size();
  std::vector<double> sp(n);
  for (std::size_t k = 0; k < n; ++k) sp[k] = setpoint_of(rows[k])[axis];

  std::size_t start = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (is_step(sp[k - 1], sp[k])) {
      start = k;
      break;
    }
  }
  if (start == 0) return std::nullopt;

  std::size_t end = n;
  for (std::size_t k = start + 1; k < n; ++k) {
    if (is_step(sp[k - 1], sp[k])) {
      end = k;
      break;
    }
  }

  AxisMetrics m;
  const double before = sp[start - 1];
  m.step_time = rows[start].t;
  m.step_size = wrap_degrees(sp[start] - before);
  const double target = before + m.step_size;
  const double magnitude = std::abs(m.step_size);

  // Continuous estimate through the window, in the frame of the old setpoint.
  std::vector<double> y(end - start);
  y[0] = before + wrap_degrees(rows[start].estimate[axis] - before);
  for (std::size_t k = start + 1; k < end; ++k) {
    y[k - start] = y[k - start - 1] + wrap_degrees(rows[k].estimate[axis] - rows[k - 1].estimate[axis]);
  }

  auto progress = [&](double v) { return (v - before) / m.step_size; };
  auto t_rel = [&](std::size_t i) { return rows[start + i].t - m.step_time; };

  m.rise_time = kNaN;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (progress(y[i]) >= 0.9) {
      m.rise_time = t_rel(i);
      break;
    }
  }

  double peak = 0.0;
  for (double v : y) peak = std::max(peak, progress(v));
  m.overshoot_pct = std::max(0.0, peak - 1.0) * 100.0;

  const double band = kSettlingBand * magnitude;
  std::optional<std::size_t> last_outside;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (std::abs(y[i] - target) > band) last_outside = i;
  if (!last_outside) {
    m.settling_time = 0.0;
  } else if (*last_outside + 1 >= y.size()) {
    m.settling_time = kNaN;
  } else {
    m.settling_time = t_rel(*last_outside + 1);
  }

  const std::size_t tail = std::max<std::size_t>(1, y.size() / 10);
  double sum = 0.0;
  for (std::size_t i = y.size() - tail; i < y.size(); ++i) sum += y[i];
  m.steady_state_error = std::abs(target - sum / static_cast<double>(tail));
  return m;
}

}  // namespace

Vec3d setpoint_of(const TraceRow& row) { return wrap_degrees(Vec3d(row.estimate + row.error)); }

MetricsReport report_metrics(const std::vector<TraceRow>& rows) {
  MetricsReport report;
  bool any = false;
  for (Axis axis : kAxes) {
    report.axis[index(axis)] = axis_metrics(rows, index(axis));
    any = any || report.axis[index(axis)].has_value();
  }
  if (!any) throw Error(Errc::no_step_event, "no step event");
  return report;
}

std::string format_metrics(const MetricsReport& report) {
  std::string out = "axis   step_t   step_deg  rise_s   overshoot_%  settle_s  ss_err_deg\n";
  char buf[160];
  for (Axis axis : kAxes) {
    const auto& m = report.axis[index(axis)];
    if (!m) continue;
    std::snprintf(buf, sizeof buf, "%-6s %7.3f  %8.3f  %7.3f  %11.3f  %8.3f  %10.4f\n", axis_name(axis), m->step_time,
                  m->step_size, m->rise_time, m->overshoot_pct, m->settling_time, m->steady_state_error);
    out += buf;
  }
  return out;
}

}  // namespace tricopter::harness
