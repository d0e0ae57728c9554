#include <gtest/gtest.h>

#include <sitcov/monitor.hpp>
#include <sitcov/rng.hpp>
#include <sitcov/sim.hpp>
#include <sitcov/trajectory.hpp>

#include "oracles.hpp"

using namespace sitcov;

namespace {

// hand-built episode: a point mass moving past a person standing at (0, 0)
EpisodeResult synthetic(const std::vector<std::pair<double, double>>& xy_speed,
                        double dt = 0.05) {
  // each entry: (distance from person along x, speed along x)
  EpisodeResult ep;
  for (std::size_t k = 0; k < xy_speed.size(); ++k) {
    DroneState st;
    st.position = {xy_speed[k].first, 0.0, 1.65};
    st.velocity = {xy_speed[k].second, 0.0, 0.0};
    st.time = k * dt;
    ep.trajectory.push_back(st);
  }
  return ep;
}

Scene person_scene() {
  Scene sc;
  sc.human = Vec2{0.0, 0.0};
  sc.situation_id = 5;
  return sc;
}

}  // namespace

TEST(Monitor, sr2_fires_after_grace_period_of_sustained_excess) {
  Scene sc = person_scene();
  MonitorConfig cfg;
  // 30 samples, 2 m from the person, all above the speed limit
  std::vector<std::pair<double, double>> rows(30, {2.0, 0.6});
  auto vs = monitor_episode(synthetic(rows), sc, cfg);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].requirement, Requirement::SR2);
  // excess accumulates dt per sample; > 0.5 s first at sample 11
  EXPECT_NEAR(vs[0].time, 0.55, 1e-9);
  EXPECT_EQ(vs[0].situation_id, 5);
  EXPECT_NE(vs[0].detail.find("speed"), std::string::npos);
}

TEST(Monitor, sr2_needs_consecutive_excess) {
  Scene sc = person_scene();
  MonitorConfig cfg;
  // 9 fast, 1 slow, 9 fast: never 0.5 s of consecutive excess
  std::vector<std::pair<double, double>> rows;
  for (int i = 0; i < 9; ++i) rows.push_back({2.0, 0.6});
  rows.push_back({2.0, 0.1});
  for (int i = 0; i < 9; ++i) rows.push_back({2.0, 0.6});
  EXPECT_TRUE(monitor_episode(synthetic(rows), sc, cfg).empty());
}

TEST(Monitor, sr2_once_per_proximity_interval) {
  Scene sc = person_scene();
  MonitorConfig cfg;
  std::vector<std::pair<double, double>> rows;
  // first pass: 20 fast samples near the person
  for (int i = 0; i < 20; ++i) rows.push_back({2.0, 0.8});
  // leave the zone (distance > 4)
  for (int i = 0; i < 5; ++i) rows.push_back({6.0, 0.8});
  // second pass
  for (int i = 0; i < 20; ++i) rows.push_back({3.0, 0.8});
  auto vs = monitor_episode(synthetic(rows), sc, cfg);
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0].requirement, Requirement::SR2);
  EXPECT_EQ(vs[1].requirement, Requirement::SR2);
  EXPECT_LT(vs[0].time, 1.0);
  EXPECT_GT(vs[1].time, 1.25);
}

TEST(Monitor, sr2_boundary_speeds) {
  Scene sc = person_scene();
  MonitorConfig cfg;
  // exactly at the limit: legal
  std::vector<std::pair<double, double>> at_limit(40, {2.0, cfg.sr2_speed});
  EXPECT_TRUE(monitor_episode(synthetic(at_limit), sc, cfg).empty());
  // a hair above: violation
  std::vector<std::pair<double, double>> above(40, {2.0, cfg.sr2_speed + 1e-3});
  EXPECT_EQ(monitor_episode(synthetic(above), sc, cfg).size(), 1u);
}

TEST(Monitor, sr2_distance_boundary_is_inclusive) {
  Scene sc = person_scene();
  MonitorConfig cfg;
  // exactly sr2_distance away counts as near
  std::vector<std::pair<double, double>> at_edge(40, {cfg.sr2_distance, 0.9});
  EXPECT_EQ(monitor_episode(synthetic(at_edge), sc, cfg).size(), 1u);
  // just beyond: out of the zone
  std::vector<std::pair<double, double>> out(40, {cfg.sr2_distance + 0.01, 0.9});
  EXPECT_TRUE(monitor_episode(synthetic(out), sc, cfg).empty());
}

TEST(Monitor, sr2_ignores_scenes_without_a_person) {
  Scene sc;
  sc.situation_id = 2;
  MonitorConfig cfg;
  std::vector<std::pair<double, double>> rows(40, {1.0, 0.9});
  EXPECT_TRUE(monitor_episode(synthetic(rows), sc, cfg).empty());
}

TEST(Monitor, sr1_reports_the_collision_object_once) {
  Scene sc = person_scene();
  MonitorConfig cfg;
  EpisodeResult ep = synthetic({{10, 0.5}, {10, 0.5}, {10, 0.5}});
  ep.events.push_back({EventKind::Collision, 0.05, {10, 0, 1.65}, "wall", 1});
  ep.events.push_back({EventKind::Collision, 0.10, {10, 0, 1.65}, "obstacle", 2});
  auto vs = monitor_episode(ep, sc, cfg);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].requirement, Requirement::SR1);
  EXPECT_NEAR(vs[0].time, 0.05, 1e-12);
  EXPECT_EQ(vs[0].detail, "collision with wall");
  EXPECT_NEAR(vs[0].position.x, 10.0, 1e-12);
}

TEST(Monitor, non_collision_events_do_not_trigger_sr1) {
  Scene sc = person_scene();
  MonitorConfig cfg;
  EpisodeResult ep = synthetic({{10, 0.5}, {10, 0.5}});
  ep.events.push_back({EventKind::WaypointReached, 0.05, {}, "2", 1});
  ep.events.push_back({EventKind::FalseCollisionSignal, 0.05, {}, "", 1});
  ep.events.push_back({EventKind::HumanDetected, 0.05, {}, "", 1});
  EXPECT_TRUE(monitor_episode(ep, sc, cfg).empty());
}

TEST(Monitor, fold_equals_online_observation) {
  SimConfig cfg;
  Situation s = situation_from_id(19);  // dark corner: has real violations
  EpisodeResult ep = run_episode(s, cfg, {}, 3);
  Scene sc = build_scene(s, cfg.world).scene;
  auto batch = monitor_episode(ep, sc, cfg.monitor);

  EpisodeMonitor online(sc, cfg.monitor);
  std::vector<ViolationRecord> live;
  std::size_t next_event = 0;
  for (std::size_t i = 0; i < ep.trajectory.size(); ++i) {
    std::vector<Event> here;
    while (next_event < ep.events.size() &&
           ep.events[next_event].sample_index == static_cast<int>(i))
      here.push_back(ep.events[next_event++]);
    for (auto& v : online.observe(ep.trajectory[i], here))
      live.push_back(std::move(v));
  }
  EXPECT_EQ(batch, live);
  EXPECT_FALSE(batch.empty());
}

TEST(Monitor, violation_ids_count_per_situation_and_requirement) {
  ViolationIdAllocator ids;
  EXPECT_EQ(ids.next(20, Requirement::SR1), "20-SR1-001");
  EXPECT_EQ(ids.next(20, Requirement::SR1), "20-SR1-002");
  EXPECT_EQ(ids.next(20, Requirement::SR2), "20-SR2-001");
  EXPECT_EQ(ids.next(3, Requirement::SR1), "3-SR1-001");
  EXPECT_EQ(ids.next(20, Requirement::SR1), "20-SR1-003");
}

TEST(Monitor, violation_log_rejects_duplicate_and_empty_ids) {
  std::ostringstream diag;
  ViolationLog log(&diag);
  ViolationRecord v{"1-SR1-001", Requirement::SR1, 1.0, {}, 1, "collision with wall"};
  log.issue_warning(v);
  EXPECT_THROW(log.issue_warning(v), DuplicateIdError);
  ViolationRecord blank = v;
  blank.id.clear();
  EXPECT_THROW(log.issue_warning(blank), DuplicateIdError);
  EXPECT_NE(diag.str().find("WARNING"), std::string::npos);
  EXPECT_NE(diag.str().find("1-SR1-001"), std::string::npos);
}

TEST(Monitor, online_monitor_agrees_with_posthoc_csv_scan) {
  // 50 random episodes; the acceptance gate runs the full 200
  SimConfig cfg;
  SplitMix64 g(808);
  for (int i = 0; i < 50; ++i) {
    Situation s = sample_situation(g);
    std::vector<FaultSpec> faults;
    switch (i % 4) {
      case 1: faults = {make_late()}; break;
      case 2: faults = {make_unintended()}; break;
      case 3: faults = {make_more()}; break;
      default: break;
    }
    EpisodeResult ep = run_episode(s, cfg, faults, 100 + i);
    Scene sc = build_scene(s, cfg.world).scene;
    auto online = monitor_episode(ep, sc, cfg.monitor);
    auto scanned = oracle::scan_trajectory_csv(trajectory_to_csv(ep), sc.human,
                                               cfg.monitor);
    ASSERT_EQ(online.size(), scanned.size())
        << "situation " << sc.situation_id << " episode " << i;
    std::sort(online.begin(), online.end(),
              [](const ViolationRecord& a, const ViolationRecord& b) {
                return a.time != b.time ? a.time < b.time
                                        : a.requirement < b.requirement;
              });
    for (std::size_t k = 0; k < online.size(); ++k) {
      EXPECT_EQ(online[k].requirement, scanned[k].requirement);
      EXPECT_NEAR(online[k].time, scanned[k].time, 1e-9);
    }
  }
}
