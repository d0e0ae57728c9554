#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sitcov/config.hpp"
#include "sitcov/drone.hpp"
#include "sitcov/fault.hpp"
#include "sitcov/geometry.hpp"
#include "sitcov/scene.hpp"
#include "sitcov/sensor.hpp"
#include "sitcov/situation.hpp"

namespace sitcov {

enum class Outcome { completed, collision, timeout };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::completed: return "completed";
    case Outcome::collision: return "collision";
    case Outcome::timeout: return "timeout";
  }
  return "?";
}

struct EpisodeResult {
  std::vector<DroneState> trajectory;  // sample 0 is the initial state
  std::vector<Event> events;
  bool completed = false;
  Outcome outcome = Outcome::timeout;
  int situation_id = 0;
};

// Name of the first scene solid the drone's bounding sphere touches, if any.
inline std::optional<std::string> collide(const Vec3& pos, const Scene& sc,
                                          double radius) {
  double best = std::numeric_limits<double>::infinity();
  const char* what = nullptr;
  auto consider = [&](double d, const char* name) {
    if (d < best) {
      best = d;
      what = name;
    }
  };
  for (const auto& w : sc.walls) consider(distance_to_wall(pos, w), "wall");
  for (const auto& b : sc.obstacles)
    consider(distance_to_box(pos, b), "obstacle");
  if (sc.corner_bar)
    consider(distance_to_box(pos, *sc.corner_bar), "corner_bar");
  if (sc.human)
    consider(distance_to_cylinder(
                 pos, Cylinder{*sc.human, sc.human_radius, sc.human_height}),
             "human");
  if (what && best <= radius) return std::string(what);
  return std::nullopt;
}

// Advance the world by one control tick: sense, decide, integrate, detect.
// All events are stamped with the post-step time and sample index.
struct StepResult {
  DroneState state;
  std::vector<Event> events;
  bool collided = false;
};

inline StepResult step_with_effects(const DroneState& prev, const Scene& scene,
                                    const MissionPlan& plan,
                                    const SimConfig& cfg,
                                    const FaultEffects& fx, double dt,
                                    long step_index) {
  StepResult out;
  DroneState st = prev;

  SensorFrame frame = sense_at(st.position, st.heading, scene, cfg.sensor);
  int mission_before = st.mission_index;
  bool aware_before = st.human_detected_at.has_value();
  CommandedVelocity cmd = controller_step(st, frame, plan, cfg.control,
                                          cfg.sensor, cfg.world.drone_radius, fx);

  Vec3 v = rate_limit(prev.velocity, cmd.velocity, cfg.control, dt);
  st.velocity = v;
  st.position = prev.position + v * dt;
  if (v.norm_xy() > ctl::kHeadingMinSpeed)
    st.heading = std::atan2(v.y, v.x);
  st.time = (step_index + 1) * dt;

  int sample = static_cast<int>(step_index) + 1;
  auto emit = [&](EventKind k, std::string detail) {
    out.events.push_back({k, st.time, st.position, std::move(detail), sample});
  };
  if (st.reflex_until != prev.reflex_until)
    emit(EventKind::FalseCollisionSignal, "");
  if (!aware_before && st.human_detected_at)
    emit(EventKind::HumanDetected, "");
  if (st.mission_index != mission_before)
    emit(EventKind::WaypointReached,
         std::to_string(plan.waypoint_sequence[mission_before] + 1));

  if (auto hit = collide(st.position, scene, cfg.world.drone_radius)) {
    emit(EventKind::Collision, *hit);
    out.collided = true;
  }
  out.state = st;
  return out;
}

inline StepResult step(const DroneState& prev, const Scene& scene,
                       const MissionPlan& plan, const SimConfig& cfg,
                       const std::vector<FaultSpec>& faults, double dt) {
  long k = std::lround(prev.time / dt);
  FaultEffects fx = effects_at(faults, prev.time, dt);
  return step_with_effects(prev, scene, plan, cfg, fx, dt, k);
}

// Run one full mission.  The simulation itself is noise-free; `seed` is part
// of the interface for reproducibility bookkeeping and future stochastic
// extensions, and never changes the dynamics.  With fault_layer_enabled =
// false the fault machinery is bypassed entirely (neutral effects inline).
inline EpisodeResult run_episode(const Situation& s, const SimConfig& cfg,
                                 const std::vector<FaultSpec>& faults,
                                 std::uint64_t /*seed*/,
                                 bool fault_layer_enabled = true) {
  for (const auto& f : faults) validate_fault(f);
  SceneBundle bundle = build_scene(s, cfg.world);
  const Scene& scene = bundle.scene;
  const MissionPlan& plan = bundle.plan;

  EpisodeResult res;
  res.situation_id = scene.situation_id;

  DroneState st;
  st.position = plan.route.front();
  st.mission_index = 1;
  res.trajectory.push_back(st);

  const double dt = cfg.control.dt;
  const long max_steps =
      std::lround(cfg.control.max_episode_time / dt);
  for (long k = 0; k < max_steps; ++k) {
    FaultEffects fx;
    if (fault_layer_enabled) fx = effects_at(faults, st.time, dt);
    StepResult sr = step_with_effects(st, scene, plan, cfg, fx, dt, k);
    st = sr.state;
    res.trajectory.push_back(st);
    for (auto& e : sr.events) res.events.push_back(std::move(e));
    if (sr.collided) {
      res.outcome = Outcome::collision;
      return res;
    }
    if (st.mission_index >= static_cast<int>(plan.route.size())) {
      res.completed = true;
      res.outcome = Outcome::completed;
      return res;
    }
  }
  res.outcome = Outcome::timeout;
  return res;
}

}  // namespace sitcov
