#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sitcov/config.hpp"
#include "sitcov/fault.hpp"
#include "sitcov/geometry.hpp"
#include "sitcov/scene.hpp"
#include "sitcov/sensor.hpp"

namespace sitcov {

enum class EventKind {
  WaypointReached,
  HumanDetected,
  Collision,
  FalseCollisionSignal,
};

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::WaypointReached: return "waypoint_reached";
    case EventKind::HumanDetected: return "human_detected";
    case EventKind::Collision: return "collision";
    case EventKind::FalseCollisionSignal: return "false_collision_signal";
  }
  return "?";
}

struct Event {
  EventKind kind;
  double time = 0.0;
  Vec3 position;
  std::string detail;    // collision object, waypoint number, ...
  int sample_index = 0;  // trajectory sample this event belongs to
};

struct DroneState {
  Vec3 position;
  Vec3 velocity;
  double heading = 0.0;  // last direction of travel, radians
  double time = 0.0;
  int mission_index = 1;  // current target: index into MissionPlan.route
  std::optional<double> human_detected_at;  // awareness timestamp (post-delay)

  // controller memory (deterministic, never serialized)
  std::optional<double> human_first_seen;  // first geometric sighting
  std::optional<Vec2> human_memory;        // last known person position
  double reflex_until = 0.0;               // blind backoff active before this
  Vec3 reflex_dir;
  // recent fan returns, quantized to world grid cells -> expiry time; keeps
  // a threat in play for a short while after it slides out of the fan
  std::map<std::pair<long, long>, double> seen_cells;
  // steering decision latency: the chosen travel direction is held in the
  // world frame and re-planned only when the hold lapses or on the tick the
  // avoidance layer first engages
  double steer_hold_dir = 0.0;
  double steer_hold_until = 0.0;
  bool was_engaged = false;
};

struct CommandedVelocity {
  Vec3 velocity;
  bool reflex = false;  // backoff maneuver: navigation fully overridden
};

namespace ctl {

// Tuning constants for the reactive layer.  These are deliberately not
// config: they are the shape of the controller, not of the experiment.
inline constexpr double kHeadroom = 1.0;        // look window past engage range
inline constexpr double kClearance = 0.15;      // lateral margin beyond radius
inline constexpr double kStopMargin = 0.15;     // full-slow distance offset
inline constexpr double kSpeedFloor = 0.55;     // never slow below this factor
inline constexpr double kBrakeFrac = 0.8;       // usable fraction of accel_along
inline constexpr double kHeadingMinSpeed = 0.1; // update heading above this
inline constexpr double kMemorySec = 2.0;       // obstruction memory horizon
inline constexpr double kMemoryCell = 0.15;     // memory grid pitch, metres
inline constexpr double kReplanSec = 1.0;       // steering decision hold time

// Ray ranges indexed across the fan; rays with no return read as unbounded.
inline std::vector<double> ray_ranges(const SensorFrame& frame,
                                      const SensorConfig& scfg) {
  const double fov = deg2rad(scfg.fov_deg);
  const int n = scfg.ray_count;
  const double spacing = fov / (n - 1);
  std::vector<double> range(n, std::numeric_limits<double>::infinity());
  for (auto& [r, b] : frame.obstacle_hits) {
    int i = static_cast<int>(std::lround((b + fov / 2.0) / spacing));
    if (i >= 0 && i < n) range[i] = std::min(range[i], r);
  }
  return range;
}

// Choose a travel bearing (relative to heading) from the ray fan.  Every fan
// direction is scored by how far the protect disc — hull plus clearance plus
// steering lag — could slide along it before brushing a threat point
// (circle-line intersection against each one), clipped to the look window
// and the goal distance, then discounted by misalignment with the goal
// bearing.  `hits` is the live fan merged with short-term memory, so a
// threat just out of view still caps travel; directions with nothing inside
// the window read as fully open — under short-range sensing that optimism is
// exactly what makes unlit hazards dangerous.  Returns nothing when every
// direction scores zero (fan blocked solid, or nothing useful toward goal).
inline std::optional<double> pick_bearing(
    const std::vector<std::pair<double, double>>& hits, double goal_ref,
    double look, double protect, double goal_dist, const SensorConfig& scfg) {
  const double fov = deg2rad(scfg.fov_deg);
  const int n = scfg.ray_count;
  const double spacing = fov / (n - 1);

  std::optional<double> best;
  double best_score = 0.0;
  for (int i = 0; i < n; ++i) {
    double b = -fov / 2.0 + i * spacing;
    double align = std::cos(b - goal_ref);
    if (align <= 0.0) continue;
    double travel = look;
    for (const auto& [r, br] : hits) {
      double d = br - b;
      if (std::cos(d) <= 0.0) continue;  // behind this direction
      double lat = r * std::abs(std::sin(d));
      if (lat >= protect) continue;  // passes outside the disc
      double cap = r * std::cos(d) - std::sqrt(protect * protect - lat * lat);
      travel = std::min(travel, std::max(0.0, cap));
    }
    double score = std::min(travel, goal_dist) * align;
    if (score > best_score) {
      best_score = score;
      best = b;
    }
  }
  return best;
}

// Panic direction: the longest ray, however short.
inline double widest_bearing(const SensorFrame& frame,
                             const SensorConfig& scfg) {
  const double fov = deg2rad(scfg.fov_deg);
  const double spacing = fov / (scfg.ray_count - 1);
  const std::vector<double> range = ray_ranges(frame, scfg);
  int arg = 0;
  for (int k = 1; k < scfg.ray_count; ++k)
    if (range[k] > range[arg]) arg = k;
  return -fov / 2.0 + arg * spacing;
}

// Would a straight line along `bearing` brush any threat point inside the
// look window?  Collision-cone test, one point at a time.
inline bool line_blocked(const std::vector<std::pair<double, double>>& hits,
                         double bearing, double look, double protect) {
  for (const auto& [r, b] : hits) {
    if (r >= look) continue;
    double cone = std::asin(std::min(1.0, protect / std::max(r, protect)));
    if (std::abs(b - bearing) <= cone) return true;
  }
  return false;
}

}  // namespace ctl

// One control decision.  Mutates the state's bookkeeping fields (mission
// index, human awareness/memory, reflex window) and returns the commanded
// velocity for this tick.
inline CommandedVelocity controller_step(DroneState& st,
                                         const SensorFrame& frame,
                                         const MissionPlan& plan,
                                         const ControlConfig& cfg,
                                         const SensorConfig& scfg,
                                         double drone_radius,
                                         const FaultEffects& fx) {
  // collision signal (real or injected): blind reverse, overrides everything
  if (fx.inject_false_collision_now && st.time >= st.reflex_until) {
    st.reflex_until = st.time + cfg.reflex_duration;
    st.reflex_dir = {-std::cos(st.heading), -std::sin(st.heading), 0.0};
  }
  if (st.time < st.reflex_until)
    return {st.reflex_dir * cfg.max_speed, true};

  // human bookkeeping: geometric sighting now, awareness after any LATE delay
  if (frame.human_range && !st.human_first_seen) st.human_first_seen = st.time;
  bool aware = st.human_first_seen &&
               st.time + 1e-12 >= *st.human_first_seen + fx.human_detection_delay;
  if (aware && !st.human_detected_at) st.human_detected_at = st.time;
  if (aware && frame.human_range) {
    double a = st.heading + *frame.human_bearing;
    st.human_memory = Vec2{st.position.x + *frame.human_range * std::cos(a),
                           st.position.y + *frame.human_range * std::sin(a)};
  }

  // Obstruction memory: fold this tick's returns in as coarse world cells,
  // age out stale ones.  A threat rotating out of the field of view during a
  // tight manoeuvre keeps constraining steering for a short while — you
  // cannot un-see a wall, but you can never remember one you never lit up.
  for (const auto& [r, b] : frame.obstacle_hits) {
    double a = st.heading + b;
    long cx = std::lround((st.position.x + r * std::cos(a)) / ctl::kMemoryCell);
    long cy = std::lround((st.position.y + r * std::sin(a)) / ctl::kMemoryCell);
    st.seen_cells[{cx, cy}] = st.time + ctl::kMemorySec;
  }
  std::erase_if(st.seen_cells,
                [&](const auto& kv) { return kv.second < st.time; });

  if (st.mission_index >= static_cast<int>(plan.route.size()))
    return {{0.0, 0.0, 0.0}, false};
  const Vec3 target = plan.route[st.mission_index];

  // arrival: hover this tick, head for the next waypoint from the next one
  double threshold = fx.goal_threshold_override.value_or(cfg.goal_threshold);
  if ((target - st.position).norm() <= threshold) {
    ++st.mission_index;
    st.steer_hold_until = st.time;  // new leg, stale steering decision
    return {{0.0, 0.0, 0.0}, false};
  }

  Vec3 goal_vec = target - st.position;
  double goal_dist = goal_vec.norm_xy();
  double goal_rel = wrap_angle(std::atan2(goal_vec.y, goal_vec.x) - st.heading);

  double nearest = std::numeric_limits<double>::infinity();
  for (auto& [r, b] : frame.obstacle_hits) nearest = std::min(nearest, r);

  // Steering sees live returns plus remembered cells re-expressed as polar
  // hits from the current pose.  The caution scale below stays on live data
  // only: memory steers, it does not spook.
  std::vector<std::pair<double, double>> threats = frame.obstacle_hits;
  threats.reserve(threats.size() + st.seen_cells.size());
  for (const auto& [cell, expiry] : st.seen_cells) {
    double dx = cell.first * ctl::kMemoryCell - st.position.x;
    double dy = cell.second * ctl::kMemoryCell - st.position.y;
    threats.emplace_back(std::max(std::hypot(dx, dy), 1e-9),
                         wrap_angle(std::atan2(dy, dx) - st.heading));
  }

  double travel_rel = goal_rel;
  double speed = cfg.max_speed;
  // The radius to defend grows with speed: a sidestep costs v^2/(2a) of
  // lateral distance before the turn even takes hold.
  double v_now = st.velocity.norm_xy();
  double protect = drone_radius + ctl::kClearance +
                   0.5 * v_now * v_now / cfg.accel_lateral;
  double look = std::min(frame.effective_range,
                         cfg.avoid_distance + drone_radius + ctl::kHeadroom);
  double half_cone = deg2rad(scfg.fov_deg) / 2.0;
  // Obstruction handling engages when something returns inside the engage
  // distance and the goal lies beyond it, or when the direct line to the
  // goal brushes a return anywhere in the look window (an obstruction past
  // the goal is nobody's business either way).
  bool engaged = (nearest < cfg.avoid_distance && goal_dist > nearest) ||
                 ctl::line_blocked(threats, goal_rel,
                                   std::min(look, goal_dist), protect);
  if (engaged) {
    if (std::abs(goal_rel) <= 2.0 * half_cone) {
      // Goal in the front half-plane: steer around.  The decision is taken
      // on the engagement edge and then at most once per kReplanSec, held as
      // a world-frame direction in between.  With a long sensing horizon the
      // hold is a rounding error; with a short one the drone is committed to
      // a metre of chord chosen at arm's length.
      if (!st.was_engaged || st.time >= st.steer_hold_until) {
        // A goal outside the fan is clamped to its edge as the steering
        // anchor, so a detour stays committed even while the heading swings
        // away from the goal.
        double goal_ref = std::clamp(goal_rel, -half_cone, half_cone);
        auto steer = ctl::pick_bearing(threats, goal_ref, look, protect,
                                       goal_dist, scfg);
        double rel;
        if (steer)
          rel = *steer;
        else if (std::abs(goal_rel) <= half_cone)
          rel = ctl::widest_bearing(frame, scfg);
        else
          rel = goal_rel;  // fan blocked solid, goal off to the side
        st.steer_hold_dir = st.heading + rel;
        st.steer_hold_until = st.time + ctl::kReplanSec;
      }
      travel_rel = wrap_angle(st.steer_hold_dir - st.heading);
    }
    // Goal behind: fly at it directly — the commanded velocity reverses and
    // the acceleration limiter backs the drone straight out.
    double stop = drone_radius + ctl::kStopMargin;
    double scale = std::clamp((nearest - stop) / (cfg.avoid_distance - stop),
                              ctl::kSpeedFloor, 1.0);
    speed *= scale;
  }
  st.was_engaged = engaged;

  // person nearby: hard cap inside the slow zone, anticipatory braking above
  if (aware) {
    std::optional<double> dist;
    if (st.human_memory)
      dist = Vec2{st.position.x - st.human_memory->x,
                  st.position.y - st.human_memory->y}
                 .norm();
    else if (frame.human_range)
      dist = *frame.human_range;
    if (dist) {
      double cap;
      if (*dist <= cfg.person_slow_distance) {
        cap = cfg.person_slow_speed;
      } else {
        double margin = *dist - cfg.person_slow_distance;
        cap = std::sqrt(cfg.person_slow_speed * cfg.person_slow_speed +
                        2.0 * ctl::kBrakeFrac * cfg.accel_along * margin);
      }
      speed = std::min(speed, cap);
    }
  }

  double ang = st.heading + travel_rel;
  double vz = std::clamp(2.0 * (target.z - st.position.z), -0.5, 0.5);
  return {{speed * std::cos(ang), speed * std::sin(ang), vz}, false};
}

// Acceleration-limited velocity tracking: strong authority along the current
// velocity, weak authority across it.  This is what turns "saw it late" into
// "could not get out of the way".
inline Vec3 rate_limit(const Vec3& v, const Vec3& cmd, const ControlConfig& cfg,
                       double dt) {
  Vec3 dv = cmd - v;
  double speed = v.norm();
  Vec3 out;
  if (speed < 1e-6) {
    // at rest there is no track direction; treat all change as longitudinal
    double max_dv = cfg.accel_along * dt;
    double n = dv.norm();
    out = n <= max_dv ? cmd : v + dv * (max_dv / n);
  } else {
    Vec3 t = v * (1.0 / speed);
    double along = dv.dot(t);
    Vec3 perp = dv - t * along;
    double perp_n = perp.norm();
    double along_lim = std::clamp(along, -cfg.accel_along * dt,
                                  cfg.accel_along * dt);
    double perp_lim = std::min(perp_n, cfg.accel_lateral * dt);
    out = v + t * along_lim +
          (perp_n > 1e-12 ? perp * (perp_lim / perp_n) : Vec3{});
  }
  double n = out.norm();
  if (n > cfg.max_speed) out = out * (cfg.max_speed / n);
  return out;
}

}  // namespace sitcov
