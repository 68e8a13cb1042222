#include "tricopter/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tricopter::harness {

namespace {

struct Entry {
  std::string value;
  std::size_t line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Reader {
 public:
  Reader(std::string source, std::string key, const Entry& entry)
      : source_(std::move(source)), key_(std::move(key)), entry_(entry) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::invalid_config,
                source_ + ":" + std::to_string(entry_.line) + ": " + key_ + ": " + why);
  }

  std::vector<double> numbers() const {
    std::string text = entry_.value;
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::vector<double> out;
    for (std::string token; in >> token;) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || ptr != token.data() + token.size()) fail("'" + token + "' is not a number");
      if (!std::isfinite(v)) fail("value must be finite");
      out.push_back(v);
    }
    return out;
  }

  double number() const {
    const auto v = numbers();
    if (v.size() != 1) fail("expected one number");
    return v[0];
  }

  Vec3d vec3() const {
    const auto v = numbers();
    if (v.size() == 1) return Vec3d::Constant(v[0]);
    if (v.size() != 3) fail("expected one or three numbers");
    return {v[0], v[1], v[2]};
  }

  std::uint64_t unsigned_integer() const {
    const std::string& text = entry_.value;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) fail("expected an unsigned integer");
    return v;
  }

  const std::string& text() const { return entry_.value; }

 private:
  std::string source_;
  std::string key_;
  const Entry& entry_;
};

using Setter = std::function<void(Scenario&, const Reader&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> m;
    m["scenario.name"] = [](Scenario& s, const Reader& r) { s.name = r.text(); };
    m["scenario.mode"] = [](Scenario& s, const Reader& r) {
      if (r.text() == "closed_loop") s.mode = Mode::closed_loop;
      else if (r.text() == "open_loop_sweep") s.mode = Mode::open_loop_sweep;
      else r.fail("expected closed_loop or open_loop_sweep");
    };
    m["scenario.duration"] = [](Scenario& s, const Reader& r) { s.duration = r.number(); };
    m["scenario.dt"] = [](Scenario& s, const Reader& r) { s.dt = r.number(); };
    m["scenario.throttle"] = [](Scenario& s, const Reader& r) { s.throttle = r.number(); };
    m["scenario.initial_attitude"] = [](Scenario& s, const Reader& r) { s.initial_attitude = r.vec3(); };
    m["scenario.slew_rate"] = [](Scenario& s, const Reader& r) { s.slew_rate = r.number(); };

    m["noise.gyro_bias"] = [](Scenario& s, const Reader& r) { s.noise.gyro_bias = r.vec3(); };
    m["noise.gyro_white_sigma"] = [](Scenario& s, const Reader& r) { s.noise.gyro_white_sigma = r.number(); };
    m["noise.vibration_amp"] = [](Scenario& s, const Reader& r) { s.noise.vibration_amp = r.number(); };
    m["noise.vibration_freq"] = [](Scenario& s, const Reader& r) { s.noise.vibration_freq = r.number(); };
    m["noise.accel_white_sigma"] = [](Scenario& s, const Reader& r) { s.noise.accel_white_sigma = r.number(); };
    m["noise.seed"] = [](Scenario& s, const Reader& r) { s.noise.seed = r.unsigned_integer(); };
    m["noise.gyro_polarity"] = [](Scenario& s, const Reader& r) { s.noise.gyro_polarity = r.vec3(); };

    m["filter.alpha"] = [](Scenario& s, const Reader& r) { s.alpha = r.number(); };

    for (Axis axis : kAxes) {
      const std::string p = std::string("pid.") + axis_name(axis) + ".";
      const int i = index(axis);
      m[p + "kp"] = [i](Scenario& s, const Reader& r) { s.pid[i].gains.kp = r.number(); };
      m[p + "ki"] = [i](Scenario& s, const Reader& r) { s.pid[i].gains.ki = r.number(); };
      m[p + "kd"] = [i](Scenario& s, const Reader& r) { s.pid[i].gains.kd = r.number(); };
      m[p + "i_limit"] = [i](Scenario& s, const Reader& r) { s.pid[i].i_limit = r.number(); };
      m[p + "out_limit"] = [i](Scenario& s, const Reader& r) { s.pid[i].out_limit = r.number(); };
    }

    m["mixer.pitch_gain_front"] = [](Scenario& s, const Reader& r) { s.mixer.pitch_gain_front = r.number(); };
    m["mixer.pitch_gain_tail"] = [](Scenario& s, const Reader& r) { s.mixer.pitch_gain_tail = r.number(); };
    m["mixer.servo_gain"] = [](Scenario& s, const Reader& r) { s.mixer.servo_gain = r.number(); };
    m["mixer.pwm_min"] = [](Scenario& s, const Reader& r) { s.mixer.pwm_min = r.number(); };
    m["mixer.pwm_max"] = [](Scenario& s, const Reader& r) { s.mixer.pwm_max = r.number(); };
    m["mixer.servo_limit"] = [](Scenario& s, const Reader& r) { s.mixer.servo_limit = r.number(); };

    m["plant.inertia"] = [](Scenario& s, const Reader& r) { s.plant.inertia = r.vec3(); };
    m["plant.arm_length"] = [](Scenario& s, const Reader& r) { s.plant.arm_length = r.number(); };
    m["plant.thrust_coeff"] = [](Scenario& s, const Reader& r) { s.plant.thrust_coeff = r.number(); };
    m["plant.pwm_min"] = [](Scenario& s, const Reader& r) { s.plant.pwm_min = r.number(); };
    m["plant.motor_tau"] = [](Scenario& s, const Reader& r) { s.plant.motor_tau = r.number(); };
    m["plant.servo_tau"] = [](Scenario& s, const Reader& r) { s.plant.servo_tau = r.number(); };
    m["plant.disturbance_torque"] = [](Scenario& s, const Reader& r) { s.plant.disturbance_torque = r.vec3(); };
    return m;
  }();
  return table;
}

constexpr std::string_view kSetpointPrefix = "setpoint.";

}  // namespace

Scenario parse_config_text(std::string_view text, const Scenario& base, const std::string& source) {
  std::map<std::string, Entry, std::less<>> entries;
  std::map<std::size_t, std::pair<std::string, Entry>> setpoints;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    auto where = [&] { return source + ":" + std::to_string(line_no) + ": "; };
    if (eq == std::string_view::npos) throw Error(Errc::invalid_config, where() + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(Errc::invalid_config, where() + "missing key");
    if (value.empty()) throw Error(Errc::invalid_config, where() + key + ": missing value");

    if (key.starts_with(kSetpointPrefix)) {
      const std::string_view digits = std::string_view(key).substr(kSetpointPrefix.size());
      std::size_t n = 0;
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
        throw Error(Errc::invalid_config, where() + "unknown key " + key);
      if (setpoints.contains(n)) throw Error(Errc::invalid_config, where() + "duplicate key " + key);
      setpoints.emplace(n, std::make_pair(key, Entry{value, line_no}));
      continue;
    }

    if (!setters().contains(key)) throw Error(Errc::invalid_config, where() + "unknown key " + key);
    if (entries.contains(key)) throw Error(Errc::invalid_config, where() + "duplicate key " + key);
    entries.emplace(key, Entry{value, line_no});
  }

  Scenario scenario = base;
  for (const auto& [key, entry] : entries) setters().find(key)->second(scenario, Reader(source, key, entry));

  if (!setpoints.empty()) {
    scenario.schedule.clear();
    for (const auto& [n, item] : setpoints) {
      const Reader r(source, item.first, item.second);
      const auto v = r.numbers();
      if (v.size() != 4) r.fail("expected '<t> <roll> <pitch> <yaw>'");
      scenario.schedule.push_back({v[0], Vec3d(v[1], v[2], v[3])});
    }
  }

  try {
    scenario.validate();
  } catch (const Error& e) {
    throw Error(Errc::invalid_config, source + ": " + e.what());
  }
  return scenario;
}

Scenario parse_config(const std::filesystem::path& path, const Scenario& base) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::io_error, "cannot read " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config_text(text.str(), base, path.string());
}

Scenario step_scenario(Axis axis, double degrees) {
  Scenario s;
  s.name = std::string("step-") + axis_name(axis);
  s.mode = Mode::closed_loop;
  s.duration = 20.0;
  Vec3d target = Vec3d::Zero();
  target[index(axis)] = degrees;
  s.schedule = {{1.0, target}};
  return s;
}

Scenario sweep_scenario(Axis axis) {
  Scenario s;
  s.name = std::string("sweep-") + axis_name(axis);
  s.mode = Mode::open_loop_sweep;
  s.duration = 30.0;
  double t = 0.0;
  for (double angle : kSweepAngles) {
    Vec3d target = Vec3d::Zero();
    target[index(axis)] = angle;
    s.schedule.push_back({t, target});
    t += kSweepHoldPeriod;
  }
  return s;
}

std::vector<std::string> preset_names() {
  return {"hover", "step-roll", "step-pitch", "step-yaw", "yaw-180", "sweep-roll", "sweep-pitch", "sweep-yaw"};
}

Scenario preset(const std::string& name) {
  if (name == "hover") {
    Scenario s;
    s.name = "hover";
    s.duration = 10.0;
    return s;
  }
  if (name == "yaw-180") {
    Scenario s = step_scenario(Axis::yaw, 180.0);
    s.name = "yaw-180";
    return s;
  }
  for (Axis axis : kAxes) {
    if (name == std::string("step-") + axis_name(axis)) return step_scenario(axis, 10.0);
    if (name == std::string("sweep-") + axis_name(axis)) return sweep_scenario(axis);
  }
  throw Error(Errc::invalid_config, "unknown scenario '" + name + "'");
}

}  // namespace tricopter::harness
