#include "tricopter/harness/trace.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tricopter::harness {

namespace {

constexpr std::string_view kHeader =
    "t,true_roll,true_pitch,true_yaw,gyro_x,gyro_y,gyro_z,acc_roll,acc_pitch,acc_yaw,"
    "est_roll,est_pitch,est_yaw,err_roll,err_pitch,err_yaw,pid_roll,pid_pitch,pid_yaw,"
    "pwm_fl,pwm_fr,pwm_tail,servo_deg";

std::array<double, kTraceColumns> flatten(const TraceRow& r) {
  return {r.t,
          r.true_attitude[0], r.true_attitude[1], r.true_attitude[2],
          r.gyro_raw[0], r.gyro_raw[1], r.gyro_raw[2],
          r.acc_angle[0], r.acc_angle[1], r.acc_angle[2],
          r.estimate[0], r.estimate[1], r.estimate[2],
          r.error[0], r.error[1], r.error[2],
          r.pid_output[0], r.pid_output[1], r.pid_output[2],
          r.pwm[0], r.pwm[1], r.pwm[2],
          r.servo_deg};
}

TraceRow unflatten(const std::array<double, kTraceColumns>& v) {
  TraceRow r;
  r.t = v[0];
  r.true_attitude = {v[1], v[2], v[3]};
  r.gyro_raw = {v[4], v[5], v[6]};
  r.acc_angle = {v[7], v[8], v[9]};
  r.estimate = {v[10], v[11], v[12]};
  r.error = {v[13], v[14], v[15]};
  r.pid_output = {v[16], v[17], v[18]};
  r.pwm = {v[19], v[20], v[21]};
  r.servo_deg = v[22];
  return r;
}

// Fixed six-decimal formatting; a value that rounds to zero prints unsigned.
void append_fixed(std::string& line, double value) {
  char buf[64];
  int n = std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string_view text(buf, static_cast<std::size_t>(n));
  if (text == "-0.000000") text = "0.000000";
  line.append(text);
}

}  // namespace

bool TraceRow::finite() const {
  for (double v : flatten(*this))
    if (!std::isfinite(v)) return false;
  return true;
}

std::string_view csv_header() { return kHeader; }

std::size_t emit_csv(const std::vector<TraceRow>& rows, std::ostream& out) {
  std::size_t bytes = 0;
  std::string line(kHeader);
  line.push_back('\n');
  out << line;
  bytes += line.size();
  for (const TraceRow& row : rows) {
    line.clear();
    const auto values = flatten(row);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line.push_back(',');
      append_fixed(line, values[i]);
    }
    line.push_back('\n');
    out << line;
    bytes += line.size();
  }
  return bytes;
}

std::size_t emit_csv(const std::vector<TraceRow>& rows, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::io_error, "cannot write " + path.string());
  const std::size_t bytes = emit_csv(rows, file);
  file.flush();
  if (!file) throw Error(Errc::io_error, "cannot write " + path.string());
  return bytes;
}

std::vector<TraceRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw Error(Errc::io_error, "trace: unexpected CSV header");

  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream split(line);
    for (std::string field; std::getline(split, field, ',');) fields.push_back(field);
    if (fields.size() != kTraceColumns)
      throw Error(Errc::io_error, "trace line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(kTraceColumns) + " columns");

    std::array<double, kTraceColumns> values{};
    for (std::size_t i = 0; i < kTraceColumns; ++i) {
      char* end = nullptr;
      values[i] = std::strtod(fields[i].c_str(), &end);
      if (end == fields[i].c_str() || *end != '\0')
        throw Error(Errc::io_error, "trace line " + std::to_string(line_no) + ": bad number '" + fields[i] + "'");
    }
    rows.push_back(unflatten(values));
  }
  return rows;
}

std::vector<TraceRow> read_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::io_error, "cannot read " + path.string());
  return read_csv(file);
}

}  // namespace tricopter::harness
