#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sitcov {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mine geometry. All lengths in meters. The layout is: a 10x10 safe zone
// centered on the origin, a corridor leaving its east wall at y=0, and an
// optional corner where the corridor turns +y for the corner missions.
struct WorldConfig {
  double safe_zone_half = 5.0;
  double corridor_width = 3.0;
  double corridor_length = 15.0;     // entrance (5,0) to end wall x=20
  double vertical_leg_length = 10.0;  // corner leg extent in +y
  double wall_height = 3.0;
  double cruise_altitude = 1.65;
  double drone_radius = 0.3;
  double obstacle_half_x = 0.15;  // dropped crate, 0.3 x 0.3 footprint
  double obstacle_half_y = 0.15;
  double obstacle_height = 1.8;
  double bar_length = 1.7;  // roof bar across the corner leg
  double bar_thickness = 0.1;
  double bar_center_z = 1.6;
  double bar_past_apex = 1.5;  // distance beyond the corner apex
  double human_x = 5.0;
  double human_y = 1.2;
  double human_radius = 0.25;
  double human_height = 1.8;
  double near_wall_offset = 0.5;  // waypoint-to-wall gap in near-wall rows
};

struct SensorConfig {
  double fov_deg = 90.0;
  int ray_count = 64;
  double range_light = 6.0;
  double range_dark = 1.5;
  // A thin suspended rod is a weak rangefinder target: past these distances
  // the bar returns nothing and rays read whatever lies behind it.
  double bar_range_light = 2.2;
  double bar_range_dark = 0.8;
};

struct ControlConfig {
  double dt = 0.05;
  double max_speed = 1.0;
  double accel_along = 3.0;    // braking/accel authority along velocity
  double accel_lateral = 1.2;  // turn authority perpendicular to velocity
  double avoid_distance = 2.0;  // start steering around obstacles here
  double person_slow_distance = 4.0;
  double person_slow_speed = 0.4;
  double goal_threshold = 0.3;
  double max_episode_time = 300.0;
  double reflex_duration = 1.0;  // blind reverse after a collision signal
};

// Ground-truth requirement parameters; deliberately separate from the
// controller's own copies so that platform faults never move the goalposts.
struct MonitorConfig {
  double sr2_distance = 4.0;
  double sr2_speed = 0.4;
  double sr2_grace = 0.5;
};

struct SimConfig {
  WorldConfig world;
  SensorConfig sensor;
  ControlConfig control;
  MonitorConfig monitor;
};

namespace detail {

struct FieldRef {
  const char* name;
  double* d = nullptr;
  int* i = nullptr;
};

inline std::vector<FieldRef> config_fields(SimConfig& c) {
  return {
      {"world.safe_zone_half", &c.world.safe_zone_half},
      {"world.corridor_width", &c.world.corridor_width},
      {"world.corridor_length", &c.world.corridor_length},
      {"world.vertical_leg_length", &c.world.vertical_leg_length},
      {"world.wall_height", &c.world.wall_height},
      {"world.cruise_altitude", &c.world.cruise_altitude},
      {"world.drone_radius", &c.world.drone_radius},
      {"world.obstacle_half_x", &c.world.obstacle_half_x},
      {"world.obstacle_half_y", &c.world.obstacle_half_y},
      {"world.obstacle_height", &c.world.obstacle_height},
      {"world.bar_length", &c.world.bar_length},
      {"world.bar_thickness", &c.world.bar_thickness},
      {"world.bar_center_z", &c.world.bar_center_z},
      {"world.bar_past_apex", &c.world.bar_past_apex},
      {"world.human_x", &c.world.human_x},
      {"world.human_y", &c.world.human_y},
      {"world.human_radius", &c.world.human_radius},
      {"world.human_height", &c.world.human_height},
      {"world.near_wall_offset", &c.world.near_wall_offset},
      {"sensor.fov_deg", &c.sensor.fov_deg},
      {"sensor.ray_count", nullptr, &c.sensor.ray_count},
      {"sensor.range_light", &c.sensor.range_light},
      {"sensor.range_dark", &c.sensor.range_dark},
      {"sensor.bar_range_light", &c.sensor.bar_range_light},
      {"sensor.bar_range_dark", &c.sensor.bar_range_dark},
      {"control.dt", &c.control.dt},
      {"control.max_speed", &c.control.max_speed},
      {"control.accel_along", &c.control.accel_along},
      {"control.accel_lateral", &c.control.accel_lateral},
      {"control.avoid_distance", &c.control.avoid_distance},
      {"control.person_slow_distance", &c.control.person_slow_distance},
      {"control.person_slow_speed", &c.control.person_slow_speed},
      {"control.goal_threshold", &c.control.goal_threshold},
      {"control.max_episode_time", &c.control.max_episode_time},
      {"control.reflex_duration", &c.control.reflex_duration},
      {"monitor.sr2_distance", &c.monitor.sr2_distance},
      {"monitor.sr2_speed", &c.monitor.sr2_speed},
      {"monitor.sr2_grace", &c.monitor.sr2_grace},
  };
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline void validate(const SimConfig& c) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0))
      throw ConfigError(std::string(what) + " must be positive");
  };
  positive(c.world.safe_zone_half, "world.safe_zone_half");
  positive(c.world.corridor_width, "world.corridor_width");
  positive(c.world.corridor_length, "world.corridor_length");
  positive(c.world.vertical_leg_length, "world.vertical_leg_length");
  positive(c.world.wall_height, "world.wall_height");
  positive(c.world.cruise_altitude, "world.cruise_altitude");
  positive(c.world.drone_radius, "world.drone_radius");
  positive(c.control.dt, "control.dt");
  positive(c.control.max_speed, "control.max_speed");
  positive(c.control.accel_along, "control.accel_along");
  positive(c.control.accel_lateral, "control.accel_lateral");
  positive(c.control.goal_threshold, "control.goal_threshold");
  positive(c.control.max_episode_time, "control.max_episode_time");
  positive(c.sensor.range_light, "sensor.range_light");
  positive(c.sensor.range_dark, "sensor.range_dark");
  positive(c.sensor.bar_range_light, "sensor.bar_range_light");
  positive(c.sensor.bar_range_dark, "sensor.bar_range_dark");
  positive(c.monitor.sr2_grace, "monitor.sr2_grace");
  positive(c.monitor.sr2_distance, "monitor.sr2_distance");
  if (c.monitor.sr2_speed < 0.0)
    throw ConfigError("monitor.sr2_speed must not be negative");
  if (c.sensor.ray_count < 2)
    throw ConfigError("sensor.ray_count must be at least 2");
  if (!(c.sensor.fov_deg > 0.0 && c.sensor.fov_deg <= 180.0))
    throw ConfigError("sensor.fov_deg must be in (0, 180]");
  if (!(c.world.drone_radius < c.world.corridor_width / 2.0))
    throw ConfigError("drone radius must fit the corridor half-width");
  if (!(c.world.cruise_altitude < c.world.wall_height))
    throw ConfigError("cruise altitude must stay below the wall height");
  if (!(c.world.obstacle_half_y <
        c.world.corridor_width / 2.0 - c.world.drone_radius))
    throw ConfigError("the dropped obstacle must leave a passable gap");
}

// Overlay key=value lines (# comments, blank lines allowed) onto defaults.
inline SimConfig parse_config(const std::string& text) {
  SimConfig cfg;
  auto fields = detail::config_fields(cfg);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string val = detail::trim(line.substr(eq + 1));
    bool found = false;
    for (auto& f : fields) {
      if (key != f.name) continue;
      found = true;
      try {
        std::size_t used = 0;
        if (f.d) {
          *f.d = std::stod(val, &used);
        } else {
          *f.i = std::stoi(val, &used);
        }
        if (used != val.size()) throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": bad value for " + key + ": '" + val + "'");
      }
      break;
    }
    if (!found)
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
  }
  validate(cfg);
  return cfg;
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

// Canonical text form: every field, declared order, shortest round-trip
// float formatting.  The digest below is computed over this text.
inline std::string serialize_config(const SimConfig& cfg) {
  SimConfig copy = cfg;
  std::string out;
  char num[64];
  for (auto& f : detail::config_fields(copy)) {
    out += f.name;
    out += " = ";
    if (f.d) {
      std::snprintf(num, sizeof num, "%.17g", *f.d);
      out += num;
    } else {
      out += std::to_string(*f.i);
    }
    out += "\n";
  }
  return out;
}

// FNV-1a 64-bit over the canonical serialization, as 16 hex digits
inline std::string config_digest(const SimConfig& cfg) {
  std::string text = serialize_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace sitcov
