#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sitcov/rng.hpp>
#include <sitcov/sim.hpp>
#include <sitcov/trajectory.hpp>

using namespace sitcov;

namespace {

EpisodeResult random_episode_states(int n, std::uint64_t seed) {
  EpisodeResult ep;
  SplitMix64 g(seed);
  for (int k = 0; k < n; ++k) {
    DroneState st;
    // adversarial doubles: wide magnitudes exercise %.17g round-tripping
    st.position = {g.unit() * 1e3 - 500, (g.unit() - 0.5) * 1e-3, g.unit()};
    st.velocity = {g.unit() * 2 - 1, g.unit() * 2 - 1, (g.unit() - 0.5) * 1e-6};
    st.time = k * 0.05;
    ep.trajectory.push_back(st);
  }
  return ep;
}

}  // namespace

TEST(Trajectory, csv_round_trips_bit_exactly) {
  EpisodeResult ep = random_episode_states(200, 31);
  std::string csv = trajectory_to_csv(ep);
  auto rows = parse_trajectory_csv(csv);
  ASSERT_EQ(rows.size(), ep.trajectory.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    // bit-exact equality, not approximate
    EXPECT_EQ(rows[k].time, ep.trajectory[k].time);
    EXPECT_EQ(rows[k].x, ep.trajectory[k].position.x);
    EXPECT_EQ(rows[k].y, ep.trajectory[k].position.y);
    EXPECT_EQ(rows[k].z, ep.trajectory[k].position.z);
    EXPECT_EQ(rows[k].vx, ep.trajectory[k].velocity.x);
    EXPECT_EQ(rows[k].vy, ep.trajectory[k].velocity.y);
    EXPECT_EQ(rows[k].vz, ep.trajectory[k].velocity.z);
  }
}

TEST(Trajectory, header_is_pinned) {
  EpisodeResult ep = random_episode_states(1, 1);
  std::string csv = trajectory_to_csv(ep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "time,x,y,z,vx,vy,vz,event");
}

TEST(Trajectory, events_join_on_their_sample_with_details) {
  EpisodeResult ep = random_episode_states(3, 2);
  ep.events.push_back({EventKind::WaypointReached, 0.05, {}, "2", 1});
  ep.events.push_back({EventKind::HumanDetected, 0.05, {}, "", 1});
  ep.events.push_back({EventKind::Collision, 0.10, {}, "corner_bar", 2});
  std::string csv = trajectory_to_csv(ep);
  auto rows = parse_trajectory_csv(csv);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].event, "");
  EXPECT_EQ(rows[1].event, "waypoint_reached:2;human_detected");
  EXPECT_EQ(rows[2].event, "collision:corner_bar");
}

TEST(Trajectory, parser_rejects_wrong_header) {
  EXPECT_THROW(parse_trajectory_csv("t,x,y\n1,2,3\n"), std::runtime_error);
  EXPECT_THROW(parse_trajectory_csv(""), std::runtime_error);
}

TEST(Trajectory, parser_rejects_malformed_rows) {
  std::string good = "time,x,y,z,vx,vy,vz,event\n0,1,2,3,4,5,6,\n";
  EXPECT_EQ(parse_trajectory_csv(good).size(), 1u);
  std::string short_row = "time,x,y,z,vx,vy,vz,event\n0,1,2\n";
  EXPECT_THROW(parse_trajectory_csv(short_row), std::runtime_error);
  std::string garbage = "time,x,y,z,vx,vy,vz,event\nabc,1,2,3,4,5,6,\n";
  EXPECT_THROW(parse_trajectory_csv(garbage), std::runtime_error);
}

TEST(Trajectory, real_episode_csv_parses_back) {
  SimConfig cfg;
  EpisodeResult ep = run_episode(situation_from_id(17), cfg, {}, 9);
  auto rows = parse_trajectory_csv(trajectory_to_csv(ep));
  ASSERT_EQ(rows.size(), ep.trajectory.size());
  // waypoint arrivals show up in the event column
  int waypoint_rows = 0;
  for (const auto& r : rows)
    if (r.event.find("waypoint_reached") != std::string::npos) ++waypoint_rows;
  EXPECT_EQ(waypoint_rows, 4);
}

TEST(Trajectory, text_file_round_trip_is_binary_exact) {
  namespace fs = std::filesystem;
  fs::path p = fs::temp_directory_path() / "sitcov_trajectory_io_test.csv";
  std::string payload = "line one\nline two\n\nno trailing newline";
  write_text_file(p.string(), payload);
  EXPECT_EQ(read_text_file(p.string()), payload);
  fs::remove(p);
  EXPECT_THROW(read_text_file(p.string()), std::runtime_error);
}
