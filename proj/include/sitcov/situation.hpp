#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "sitcov/rng.hpp"

namespace sitcov {

// One point of the situation hyperspace: five binary environment axes.
struct Situation {
  bool turning_corner = false;    // mission turns a corner mid-route
  bool obstacle_on_path = false;  // box dropped on the leg between waypoints
  bool waypoint_near_wall = false;  // goal waypoints pushed against the wall
  bool darkness = false;            // ambient light off -> short sensor range
  bool human_present = false;       // person standing near the route start

  bool operator==(const Situation&) const = default;

  // 5-bit code: corner,obstacle,near_wall,dark are direct bits (MSB first),
  // the human axis is inverted so that the all-zero code is the benign
  // "everything default, person present" reference situation.
  int packed() const {
    return (turning_corner << 4) | (obstacle_on_path << 3) |
           (waypoint_near_wall << 2) | (darkness << 1) |
           (human_present ? 0 : 1);
  }
};

inline constexpr int kSituationCount = 32;

namespace detail {

// Canonical ID order is a fixed permutation of the packed codes: IDs 1-3 and
// 32 are pinned reference situations, the rest follow ascending code order.
constexpr std::array<int, 33> make_code_for_id() {
  std::array<int, 33> code{};
  code[0] = -1;
  code[1] = 0b00000;  // benign reference: person present, all else default
  code[2] = 0b00011;  // darkness only
  code[3] = 0b00101;  // near-wall waypoints only
  code[32] = 0b11111;  // everything adverse at once
  int next = 4;
  for (int c = 0; c < kSituationCount; ++c) {
    if (c == 0b00000 || c == 0b00011 || c == 0b00101 || c == 0b11111) continue;
    code[next++] = c;
  }
  return code;
}

constexpr std::array<int, 33> kCodeForId = make_code_for_id();

constexpr std::array<int, 32> make_id_for_code() {
  std::array<int, 32> id{};
  for (int i = 1; i <= kSituationCount; ++i) id[kCodeForId[i]] = i;
  return id;
}

constexpr std::array<int, 32> kIdForCode = make_id_for_code();

}  // namespace detail

inline Situation situation_from_code(int code) {
  Situation s;
  s.turning_corner = (code >> 4) & 1;
  s.obstacle_on_path = (code >> 3) & 1;
  s.waypoint_near_wall = (code >> 2) & 1;
  s.darkness = (code >> 1) & 1;
  s.human_present = !(code & 1);
  return s;
}

// 1-based canonical ID
inline int situation_id(const Situation& s) {
  return detail::kIdForCode[s.packed()];
}

inline Situation situation_from_id(int id) {
  if (id < 1 || id > kSituationCount)
    throw std::out_of_range("situation id must be in [1,32], got " +
                            std::to_string(id));
  return situation_from_code(detail::kCodeForId[id]);
}

// all 32 situations in canonical ID order
inline std::vector<Situation> enumerate_situations() {
  std::vector<Situation> all;
  all.reserve(kSituationCount);
  for (int id = 1; id <= kSituationCount; ++id)
    all.push_back(situation_from_id(id));
  return all;
}

// uniform draw over the whole space
inline Situation sample_situation(SplitMix64& rng) {
  return situation_from_id(static_cast<int>(rng.below(kSituationCount)) + 1);
}

inline constexpr std::array<const char*, 5> kAxisNames = {
    "turning_corner", "obstacle_on_path", "waypoint_near_wall", "darkness",
    "human_present"};

// human-readable value label for one axis, mirroring the mission vocabulary
inline const char* axis_value_label(int axis, bool value) {
  switch (axis) {
    case 0: return value ? "Yes" : "No";
    case 1: return value ? "Yes" : "No";
    case 2: return value ? "Near a wall" : "Open space";
    case 3: return value ? "Dark" : "Default";
    case 4: return value ? "Yes" : "No";
    default: throw std::out_of_range("axis index");
  }
}

inline std::array<bool, 5> axis_values(const Situation& s) {
  return {s.turning_corner, s.obstacle_on_path, s.waypoint_near_wall,
          s.darkness, s.human_present};
}

inline std::string describe(const Situation& s) {
  std::string out;
  auto vals = axis_values(s);
  for (int i = 0; i < 5; ++i) {
    if (i) out += ", ";
    out += kAxisNames[i];
    out += "=";
    out += axis_value_label(i, vals[i]);
  }
  return out;
}

}  // namespace sitcov
