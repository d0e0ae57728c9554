#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sitcov/config.hpp"
#include "sitcov/geometry.hpp"
#include "sitcov/scene.hpp"

namespace sitcov {

// What the depth camera reports for one control tick.  Bearings are relative
// to the drone's heading; ranges are along the ray, all within the
// lighting-dependent effective range.
struct SensorFrame {
  std::vector<std::pair<double, double>> obstacle_hits;  // (range m, bearing rad)
  std::optional<double> human_range;
  std::optional<double> human_bearing;  // relative, set together with range
  double effective_range = 0.0;
};

inline double effective_sensor_range(const Scene& sc, const SensorConfig& cfg) {
  return sc.ambient == AmbientLight::TotalDarkness ? cfg.range_dark
                                                   : cfg.range_light;
}

inline double bar_detect_range(const Scene& sc, const SensorConfig& cfg) {
  return sc.ambient == AmbientLight::TotalDarkness ? cfg.bar_range_dark
                                                    : cfg.bar_range_light;
}

// Cast one horizontal ray from origin at world angle `ang` against all scene
// solids; returns the nearest hit distance or nullopt.  The suspended bar is
// a weak target: beyond `bar_cap` it returns nothing and the ray reads
// whatever lies behind it.
inline std::optional<double> cast_ray(const Vec3& origin, double ang,
                                      const Scene& sc, double bar_cap) {
  double dx = std::cos(ang), dy = std::sin(ang);
  std::optional<double> best;
  auto consider = [&](std::optional<double> t) {
    if (t && (!best || *t < *best)) best = t;
  };
  for (const auto& w : sc.walls) consider(ray_wall(origin, dx, dy, w));
  for (const auto& b : sc.obstacles) consider(ray_box(origin, dx, dy, b));
  if (sc.corner_bar) {
    auto t = ray_box(origin, dx, dy, *sc.corner_bar);
    if (t && *t <= bar_cap) consider(t);
  }
  return best;
}

// Fan of cfg.ray_count rays over cfg.fov_deg centered on `heading`, cast in
// the horizontal plane at the drone's altitude.  Human detection is a simple
// cone-and-range check against the person's cylinder axis.
inline SensorFrame sense_at(const Vec3& position, double heading,
                            const Scene& sc, const SensorConfig& cfg) {
  SensorFrame frame;
  frame.effective_range = effective_sensor_range(sc, cfg);
  const double bar_cap = bar_detect_range(sc, cfg);
  const double fov = deg2rad(cfg.fov_deg);
  const int n = cfg.ray_count;
  frame.obstacle_hits.reserve(8);
  for (int i = 0; i < n; ++i) {
    double rel = -fov / 2.0 + fov * i / (n - 1);
    auto t = cast_ray(position, heading + rel, sc, bar_cap);
    if (t && *t <= frame.effective_range)
      frame.obstacle_hits.emplace_back(std::max(*t, 1e-9), rel);
  }
  if (sc.human) {
    double hx = sc.human->x - position.x, hy = sc.human->y - position.y;
    double dist = std::hypot(hx, hy);
    double rel = wrap_angle(std::atan2(hy, hx) - heading);
    if (dist <= frame.effective_range && std::abs(rel) <= fov / 2.0) {
      frame.human_range = dist;
      frame.human_bearing = rel;
    }
  }
  return frame;
}

}  // namespace sitcov
