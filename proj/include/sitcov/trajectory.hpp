#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sitcov/sim.hpp"

namespace sitcov {

// CSV export: header + one row per trajectory sample.  Numbers use %.17g so
// the text round-trips bit-exactly; the event column carries the events
// stamped on that sample as kind[:detail], ';'-joined.
inline std::string trajectory_to_csv(const EpisodeResult& ep) {
  std::string out = "time,x,y,z,vx,vy,vz,event\n";
  char row[256];
  std::size_t next_event = 0;
  for (std::size_t i = 0; i < ep.trajectory.size(); ++i) {
    const DroneState& s = ep.trajectory[i];
    std::snprintf(row, sizeof row,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,", s.time,
                  s.position.x, s.position.y, s.position.z, s.velocity.x,
                  s.velocity.y, s.velocity.z);
    out += row;
    bool first = true;
    while (next_event < ep.events.size() &&
           ep.events[next_event].sample_index == static_cast<int>(i)) {
      const Event& e = ep.events[next_event++];
      if (!first) out += ';';
      first = false;
      out += to_string(e.kind);
      if (!e.detail.empty()) {
        out += ':';
        out += e.detail;
      }
    }
    out += '\n';
  }
  return out;
}

struct TrajectoryRow {
  double time, x, y, z, vx, vy, vz;
  std::string event;
};

// Strict parser for the CSV above (used by replay and the post-hoc scan).
inline std::vector<TrajectoryRow> parse_trajectory_csv(
    const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "time,x,y,z,vx,vy,vz,event")
    throw std::runtime_error("bad trajectory CSV header");
  std::vector<TrajectoryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TrajectoryRow r;
    double* nums[7] = {&r.time, &r.x, &r.y, &r.z, &r.vx, &r.vy, &r.vz};
    std::size_t pos = 0;
    for (int i = 0; i < 7; ++i) {
      auto comma = line.find(',', pos);
      if (comma == std::string::npos)
        throw std::runtime_error("short trajectory CSV row");
      std::string field = line.substr(pos, comma - pos);
      std::size_t used = 0;
      try {
        *nums[i] = std::stod(field, &used);
      } catch (const std::exception&) {
        used = std::string::npos;
      }
      if (used != field.size())
        throw std::runtime_error("bad number in trajectory CSV row: '" +
                                 field + "'");
      pos = comma + 1;
    }
    r.event = line.substr(pos);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace sitcov
