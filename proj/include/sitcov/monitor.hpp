#pragma once

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sitcov/config.hpp"
#include "sitcov/drone.hpp"
#include "sitcov/scene.hpp"
#include "sitcov/sim.hpp"

namespace sitcov {

enum class Requirement { SR1, SR2 };

inline const char* to_string(Requirement r) {
  return r == Requirement::SR1 ? "SR1" : "SR2";
}

struct ViolationRecord {
  std::string id;  // "<situation_id>-SR<n>-<seq>", unique per campaign
  Requirement requirement;
  double time = 0.0;
  Vec3 position;
  int situation_id = 0;
  std::string detail;

  bool operator==(const ViolationRecord&) const = default;
};

struct DuplicateIdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hands out campaign-unique violation ids: a running sequence per
// (situation, requirement) pair that never resets between episodes.
class ViolationIdAllocator {
 public:
  std::string next(int situation_id, Requirement r) {
    int seq = ++counters_[{situation_id, r == Requirement::SR1 ? 1 : 2}];
    char buf[48];
    std::snprintf(buf, sizeof buf, "%d-%s-%03d", situation_id, to_string(r),
                  seq);
    return buf;
  }

 private:
  std::map<std::pair<int, int>, int> counters_;
};

// Ground-truth runtime monitor for one episode.  It watches the recorded
// state stream, never the drone's perception, so perception faults cannot
// hide from it.  Stateful: SR1 dedup and the SR2 grace timer live here.
class EpisodeMonitor {
 public:
  EpisodeMonitor(const Scene& scene, const MonitorConfig& cfg)
      : scene_(scene), cfg_(cfg) {}

  // SR1: no collisions.  One violation per episode (the episode halts).
  std::optional<ViolationRecord> check_sr1(const std::vector<Event>& events) {
    if (sr1_emitted_) return std::nullopt;
    for (const auto& e : events) {
      if (e.kind != EventKind::Collision) continue;
      sr1_emitted_ = true;
      return ViolationRecord{"",
                             Requirement::SR1,
                             e.time,
                             e.position,
                             scene_.situation_id,
                             "collision with " + e.detail};
    }
    return std::nullopt;
  }

  // SR2: within sr2_distance of a person, speed must not exceed sr2_speed
  // for longer than the grace period.  One violation per proximity interval.
  std::optional<ViolationRecord> check_sr2(const DroneState& st) {
    double dt = st.time - last_time_;
    last_time_ = st.time;
    if (!scene_.human) return std::nullopt;
    double dist = (st.position - Vec3{scene_.human->x, scene_.human->y,
                                      st.position.z})
                      .norm();
    bool in_zone = dist <= cfg_.sr2_distance;
    if (!in_zone) {
      over_accum_ = 0.0;
      interval_flagged_ = false;
      return std::nullopt;
    }
    if (st.velocity.norm() > cfg_.sr2_speed + 1e-9)
      over_accum_ += dt;
    else
      over_accum_ = 0.0;  // the excess must be consecutive
    if (over_accum_ > cfg_.sr2_grace && !interval_flagged_) {
      interval_flagged_ = true;
      char buf[96];
      std::snprintf(buf, sizeof buf, "speed %.3f m/s at %.3f m from person",
                    st.velocity.norm(), dist);
      return ViolationRecord{"", Requirement::SR2,     st.time,
                             st.position, scene_.situation_id, buf};
    }
    return std::nullopt;
  }

  // feed one trajectory sample and the events stamped on it
  std::vector<ViolationRecord> observe(const DroneState& st,
                                       const std::vector<Event>& events) {
    std::vector<ViolationRecord> out;
    if (auto v = check_sr1(events)) out.push_back(std::move(*v));
    if (auto v = check_sr2(st)) out.push_back(std::move(*v));
    return out;
  }

 private:
  const Scene& scene_;
  MonitorConfig cfg_;
  bool sr1_emitted_ = false;
  bool interval_flagged_ = false;
  double over_accum_ = 0.0;
  double last_time_ = 0.0;
};

// Run the monitor over a finished episode (a pure fold over the samples —
// identical to evaluating it live, since it only sees recorded state).
// Ids are left empty; the campaign allocator fills them in.
inline std::vector<ViolationRecord> monitor_episode(const EpisodeResult& ep,
                                                    const Scene& scene,
                                                    const MonitorConfig& cfg) {
  EpisodeMonitor mon(scene, cfg);
  std::vector<ViolationRecord> out;
  std::size_t next_event = 0;
  for (std::size_t i = 0; i < ep.trajectory.size(); ++i) {
    std::vector<Event> here;
    while (next_event < ep.events.size() &&
           ep.events[next_event].sample_index == static_cast<int>(i))
      here.push_back(ep.events[next_event++]);
    for (auto& v : mon.observe(ep.trajectory[i], here))
      out.push_back(std::move(v));
  }
  return out;
}

// Append-only violation buffer with campaign-wide id uniqueness; every
// append also writes one warning line to the diagnostic stream.
class ViolationLog {
 public:
  explicit ViolationLog(std::ostream* diag = &std::cerr) : diag_(diag) {}

  void issue_warning(const ViolationRecord& v) {
    if (v.id.empty()) throw DuplicateIdError("violation id must be set");
    if (!ids_.insert(v.id).second)
      throw DuplicateIdError("duplicate violation id: " + v.id);
    records_.push_back(v);
    if (diag_) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "WARNING [%s] %s violated at t=%.2fs pos=(%.2f, %.2f, "
                    "%.2f): %s\n",
                    v.id.c_str(), to_string(v.requirement), v.time,
                    v.position.x, v.position.y, v.position.z,
                    v.detail.c_str());
      *diag_ << buf;
    }
  }

  const std::vector<ViolationRecord>& records() const { return records_; }

 private:
  std::ostream* diag_;
  std::set<std::string> ids_;
  std::vector<ViolationRecord> records_;
};

}  // namespace sitcov
