#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sitcov/config.hpp"
#include "sitcov/geometry.hpp"
#include "sitcov/situation.hpp"

namespace sitcov {

enum class AmbientLight { Default, TotalDarkness };

// Concrete world built from one Situation.  The mine layout itself is fixed:
// a square safe zone around the origin, a corridor leaving its east side at
// y=0, and a survey leg turning +y at the corridor end.  Situations vary the
// mission (waypoints), the dropped obstacle, the human, and the lighting.
struct Scene {
  std::vector<WallSegment> walls;
  std::vector<Vec3> waypoints;
  std::vector<BoxPrism> obstacles;
  std::optional<Vec2> human;
  double human_radius = 0.25;
  double human_height = 1.8;
  AmbientLight ambient = AmbientLight::Default;
  std::optional<BoxPrism> corner_bar;  // roof bar across the survey leg
  int situation_id = 0;
};

struct MissionPlan {
  std::vector<int> waypoint_sequence;  // indices into Scene.waypoints
  std::vector<Vec3> route;             // the same sequence, resolved
  double cruise_altitude = 1.65;
};

struct SceneBundle {
  Scene scene;
  MissionPlan plan;
};

namespace detail {

inline void check_waypoint_free(const Scene& sc, const Vec3& wp,
                                double radius) {
  for (const auto& w : sc.walls)
    if (distance_to_wall(wp, w) < radius)
      throw ConfigError("waypoint inside wall clearance");
  for (const auto& b : sc.obstacles)
    if (distance_to_box(wp, b) < radius)
      throw ConfigError("waypoint inside obstacle clearance");
  if (sc.corner_bar && distance_to_box(wp, *sc.corner_bar) < radius)
    throw ConfigError("waypoint inside bar clearance");
}

}  // namespace detail

// Deterministic pure mapping Situation -> world.  Axis semantics:
//   turning_corner     adds the post-corner survey leg and WP3
//   obstacle_on_path   drops a box on the WP1->WP2 segment midpoint
//   waypoint_near_wall moves WP3 (or WP2 without a corner) to within
//                      near_wall_offset of the end wall
//   darkness           switches ambient light to TotalDarkness
//   human_present      places a person just inside the mine entrance
inline SceneBundle build_scene(const Situation& s, const WorldConfig& w) {
  const double H = w.safe_zone_half;
  const double cw = w.corridor_width / 2.0;  // corridor half-width
  const double x_end = H + w.corridor_length;  // end wall of the corridor
  const double x_leg = x_end - w.corridor_width;  // survey leg west wall
  const double y_leg = cw + w.vertical_leg_length;  // leg end wall
  const double wh = w.wall_height;

  Scene sc;
  sc.situation_id = situation_id(s);
  sc.walls = {
      {{-H, -H}, {-H, H}, wh},        // safe zone west
      {{-H, H}, {H, H}, wh},          // safe zone north
      {{-H, -H}, {H, -H}, wh},        // safe zone south
      {{H, cw}, {H, H}, wh},          // east wall above the entrance
      {{H, -H}, {H, -cw}, wh},        // east wall below the entrance
      {{H, cw}, {x_leg, cw}, wh},     // corridor north, stops at the apex
      {{H, -cw}, {x_end, -cw}, wh},   // corridor south, runs to the corner
      {{x_end, -cw}, {x_end, y_leg}, wh},  // end wall / leg east
      {{x_leg, cw}, {x_leg, y_leg}, wh},   // leg west, starts at the apex
      {{x_leg, y_leg}, {x_end, y_leg}, wh},  // leg north cap
  };

  const double z = w.cruise_altitude;
  Vec3 wp1{0.0, 0.0, z};
  // The corner mission's WP2 sits half a corridor-width past the apex line
  // so the WP2->WP3 diagonal clears the apex by more than the drone radius.
  Vec3 wp2 = s.turning_corner ? Vec3{x_leg + 0.5, 0.0, z} : Vec3{x_leg, 0.0, z};
  if (s.waypoint_near_wall && !s.turning_corner)
    wp2 = {x_end - w.near_wall_offset, 0.0, z};
  sc.waypoints = {wp1, wp2};

  MissionPlan plan;
  plan.cruise_altitude = z;
  if (s.turning_corner) {
    double wp3_x = s.waypoint_near_wall ? x_end - w.near_wall_offset
                                        : x_leg + w.corridor_width / 2.0;
    sc.waypoints.push_back({wp3_x, cw + 0.65 * w.vertical_leg_length, z});
    // The return leg rejoins the corridor through a wide-swing point by the
    // outer wall rather than cutting back across the survey leg diagonally.
    sc.waypoints.push_back({x_end - 0.8, 0.0, z});
    plan.waypoint_sequence = {0, 1, 2, 3, 0};
  } else {
    plan.waypoint_sequence = {0, 1, 0};
  }

  if (s.obstacle_on_path) {
    Vec2 mid{(wp1.x + wp2.x) / 2.0, (wp1.y + wp2.y) / 2.0};
    sc.obstacles.push_back(
        {mid, w.obstacle_half_x, w.obstacle_half_y, 0.0, w.obstacle_height});
    if (w.obstacle_half_y >= cw - w.drone_radius)
      throw ConfigError("obstacle blocks the corridor entirely");
  }

  if (s.turning_corner) {
    // Thin horizontal bar across the leg, anchored on the inner wall, its
    // near face bar_past_apex beyond the apex.  It overlaps the cruise
    // altitude, so the drone must thread the gap it leaves at the outer wall.
    double bar_y = cw + w.bar_past_apex + w.bar_thickness / 2.0;
    sc.corner_bar = BoxPrism{{x_leg + w.bar_length / 2.0, bar_y},
                             w.bar_length / 2.0,
                             w.bar_thickness / 2.0,
                             w.bar_center_z - w.bar_thickness / 2.0,
                             w.bar_center_z + w.bar_thickness / 2.0};
  }

  if (s.human_present) sc.human = Vec2{w.human_x, w.human_y};
  sc.human_radius = w.human_radius;
  sc.human_height = w.human_height;
  sc.ambient =
      s.darkness ? AmbientLight::TotalDarkness : AmbientLight::Default;

  for (const auto& wp : sc.waypoints)
    detail::check_waypoint_free(sc, wp, w.drone_radius);

  plan.route.reserve(plan.waypoint_sequence.size());
  for (int idx : plan.waypoint_sequence) plan.route.push_back(sc.waypoints[idx]);
  return {sc, plan};
}

}  // namespace sitcov
