#pragma once

#include "tricopter/types.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tricopter::harness {

/// One control step of a run. Angle triples are (roll, pitch, yaw).
struct TraceRow {
  double t = 0.0;
  Vec3d true_attitude = Vec3d::Zero();
  Vec3d gyro_raw = Vec3d::Zero();
  Vec3d acc_angle = Vec3d::Zero();
  Vec3d estimate = Vec3d::Zero();
  Vec3d error = Vec3d::Zero();
  Vec3d pid_output = Vec3d::Zero();
  Vec3d pwm = Vec3d::Zero();  // front-left, front-right, tail
  double servo_deg = 0.0;

  bool finite() const;
};

inline constexpr std::size_t kTraceColumns = 23;

std::string_view csv_header();

/// Writes the header and one line per row, six decimals, '\n' endings.
/// Returns the number of bytes written.
std::size_t emit_csv(const std::vector<TraceRow>& rows, std::ostream& out);

/// Throws Errc::io_error when the file cannot be written.
std::size_t emit_csv(const std::vector<TraceRow>& rows, const std::filesystem::path& path);

/// Parses a trace written by emit_csv. Throws Errc::io_error on a malformed
/// header or row.
std::vector<TraceRow> read_csv(std::istream& in);
std::vector<TraceRow> read_csv(const std::filesystem::path& path);

}  // namespace tricopter::harness
