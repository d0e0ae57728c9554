#pragma once

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sitcov/config.hpp"
#include "sitcov/coverage.hpp"
#include "sitcov/fault.hpp"
#include "sitcov/monitor.hpp"
#include "sitcov/rng.hpp"
#include "sitcov/sim.hpp"
#include "sitcov/situation.hpp"
#include "sitcov/trajectory.hpp"
#include "sitcov/version.hpp"

namespace sitcov {

enum class CampaignMode { random, exhaustive };

enum class StoppingKind { full_coverage, max_episodes, max_violations };

struct StoppingRule {
  StoppingKind kind = StoppingKind::max_episodes;
  long n = 32;

  bool operator==(const StoppingRule&) const = default;
};

struct CampaignConfig {
  std::uint64_t seed = 1;
  CampaignMode mode = CampaignMode::random;
  StoppingRule stopping;
  std::vector<FaultSpec> faults;
  SimConfig sim;
  bool record_trajectories = true;
  // runtime-only (never echoed into the log):
  std::string output_dir;               // empty: keep everything in memory
  std::ostream* diagnostics = &std::cerr;  // warning stream, nullable
};

struct EpisodeRecord {
  int situation_id = 0;
  Situation axes;
  std::string outcome;
  std::vector<ViolationRecord> violations;
  std::string trajectory_csv;  // path relative to the log file, or ""

  bool operator==(const EpisodeRecord&) const = default;
};

struct CampaignLog {
  std::uint64_t seed = 0;
  std::string config_digest;
  std::string timestamp;
  std::string version;
  CoverageSummary coverage;
  std::vector<EpisodeRecord> episodes;
  // full configuration echo so any episode can be replayed from the log
  CampaignConfig config;
};

inline const char* to_string(CampaignMode m) {
  return m == CampaignMode::random ? "random" : "exhaustive";
}

inline const char* to_string(StoppingKind k) {
  switch (k) {
    case StoppingKind::full_coverage: return "full_coverage";
    case StoppingKind::max_episodes: return "max_episodes";
    case StoppingKind::max_violations: return "max_violations";
  }
  return "?";
}

namespace detail {

// canonical text of everything that defines the experiment (the seed is a
// separate meta field: it names the run, not the configuration)
inline std::string serialize_campaign(const CampaignConfig& c) {
  std::string out = serialize_config(c.sim);
  out += std::string("campaign.mode = ") + to_string(c.mode) + "\n";
  out += std::string("campaign.stopping = ") + to_string(c.stopping.kind) +
         "\n";
  out += "campaign.stopping_n = " + std::to_string(c.stopping.n) + "\n";
  out += std::string("campaign.record_trajectories = ") +
         (c.record_trajectories ? "true" : "false") + "\n";
  for (const auto& f : c.faults) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "campaign.fault = %s:%s:%.17g:%s\n",
                  to_string(f.guideword), to_string(f.target_parameter),
                  f.magnitude, to_string(f.schedule));
    out += buf;
  }
  return out;
}

inline std::string campaign_digest(const CampaignConfig& c) {
  std::string text = serialize_campaign(c);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

inline std::string utc_timestamp_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void validate_campaign(const CampaignConfig& cfg) {
  validate(cfg.sim);
  for (const auto& f : cfg.faults) validate_fault(f);
  if (cfg.stopping.kind != StoppingKind::full_coverage && cfg.stopping.n < 1)
    throw ConfigError("stopping count must be >= 1");
}

// everything the episode function depends on (not the seed, mode, stopping)
inline std::string episode_identity(const CampaignConfig& c) {
  std::string out = serialize_config(c.sim);
  for (const auto& f : c.faults) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "fault %s:%s:%.17g:%s\n",
                  to_string(f.guideword), to_string(f.target_parameter),
                  f.magnitude, to_string(f.schedule));
    out += buf;
  }
  return out;
}

}  // namespace detail

// Memo table for the episode function.  The dynamics are noise-free, so an
// episode's result is a pure function of (situation, sim config, faults) —
// the per-episode seed never reaches them.  A cache may therefore be shared
// across campaigns that agree on that identity; results are bit-identical
// to uncached runs.  Reuse under a different configuration throws.
struct EpisodeCache {
  struct Entry {
    std::string outcome;
    std::vector<ViolationRecord> violations;  // ids assigned per campaign
    std::string csv;
  };
  std::string identity;  // bound on first use
  std::map<int, Entry> entries;
};

// The situation-coverage loop: sample (or enumerate) a situation, mark the
// grid, run the monitored episode, log, repeat until the stopping rule
// holds.  Deterministic given cfg; the timestamp is the only exception.
// `shared` (optional) memoizes episode results across campaigns.
inline CampaignLog run_campaign(const CampaignConfig& cfg,
                                EpisodeCache* shared = nullptr) {
  detail::validate_campaign(cfg);

  namespace fs = std::filesystem;
  bool to_disk = cfg.record_trajectories && !cfg.output_dir.empty();
  if (to_disk) fs::create_directories(fs::path(cfg.output_dir) / "trajectories");

  CampaignLog log;
  log.seed = cfg.seed;
  log.config_digest = detail::campaign_digest(cfg);
  log.timestamp = detail::utc_timestamp_now();
  log.version = kVersion;
  log.config = cfg;
  log.config.output_dir.clear();
  log.config.diagnostics = nullptr;

  SplitMix64 rng(cfg.seed);
  CoverageGrid grid;
  ViolationIdAllocator ids;
  ViolationLog warnings(cfg.diagnostics);

  EpisodeCache local;
  EpisodeCache& cache = shared ? *shared : local;
  {
    std::string identity = detail::episode_identity(cfg);
    if (cache.identity.empty())
      cache.identity = identity;
    else if (cache.identity != identity)
      throw ConfigError("episode cache reused with a different configuration");
  }

  long total_violations = 0;
  for (long i = 0;; ++i) {
    if (cfg.stopping.kind == StoppingKind::max_episodes &&
        i >= cfg.stopping.n)
      break;
    if (cfg.stopping.kind == StoppingKind::max_violations &&
        total_violations >= cfg.stopping.n)
      break;
    if (cfg.stopping.kind == StoppingKind::full_coverage && grid.full())
      break;
    if (cfg.mode == CampaignMode::exhaustive && i >= kSituationCount) break;

    Situation s = cfg.mode == CampaignMode::exhaustive
                      ? situation_from_id(static_cast<int>(i) + 1)
                      : sample_situation(rng);
    grid.mark(s);
    int sid = situation_id(s);

    auto it = cache.entries.find(sid);
    if (it == cache.entries.end()) {
      EpisodeResult ep =
          run_episode(s, cfg.sim, cfg.faults, derive_seed(cfg.seed, i));
      Scene scene = build_scene(s, cfg.sim.world).scene;
      EpisodeCache::Entry c;
      c.outcome = to_string(ep.outcome);
      c.violations = monitor_episode(ep, scene, cfg.sim.monitor);
      c.csv = trajectory_to_csv(ep);
      it = cache.entries.emplace(sid, std::move(c)).first;
    }

    EpisodeRecord rec;
    rec.situation_id = sid;
    rec.axes = s;
    rec.outcome = it->second.outcome;
    for (ViolationRecord v : it->second.violations) {
      v.id = ids.next(sid, v.requirement);
      warnings.issue_warning(v);
      rec.violations.push_back(std::move(v));
      ++total_violations;
    }
    if (to_disk) {
      char name[48];
      std::snprintf(name, sizeof name, "trajectories/episode_%04ld.csv", i);
      write_text_file((fs::path(cfg.output_dir) / name).string(),
                      it->second.csv);
      rec.trajectory_csv = name;
    }
    log.episodes.push_back(std::move(rec));
  }

  log.coverage = grid.report();
  return log;
}

// recompute the coverage block from the episode list (consistency oracle)
inline CoverageSummary recompute_coverage(
    const std::vector<EpisodeRecord>& episodes) {
  CoverageGrid grid;
  for (const auto& e : episodes) grid.mark(e.axes);
  return grid.report();
}

// ---- JSON serialization ---------------------------------------------------

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json axes_to_json(const Situation& s) {
  ordered_json j;
  auto vals = axis_values(s);
  for (int i = 0; i < 5; ++i) j[kAxisNames[i]] = vals[i];
  return j;
}

inline Situation axes_from_json(const ordered_json& j) {
  Situation s;
  s.turning_corner = j.at("turning_corner").get<bool>();
  s.obstacle_on_path = j.at("obstacle_on_path").get<bool>();
  s.waypoint_near_wall = j.at("waypoint_near_wall").get<bool>();
  s.darkness = j.at("darkness").get<bool>();
  s.human_present = j.at("human_present").get<bool>();
  return s;
}

inline Guideword guideword_from_string(const std::string& s) {
  if (s == "LATE") return Guideword::LATE;
  if (s == "UNINTENDED") return Guideword::UNINTENDED;
  if (s == "MORE") return Guideword::MORE;
  throw ConfigError("unknown guideword: " + s);
}

inline FaultParameter parameter_from_string(const std::string& s) {
  if (s == "human_detection_latency")
    return FaultParameter::human_detection_latency;
  if (s == "collision_signal") return FaultParameter::collision_signal;
  if (s == "goal_threshold") return FaultParameter::goal_threshold;
  throw ConfigError("unknown fault parameter: " + s);
}

}  // namespace detail

inline nlohmann::ordered_json log_to_json(const CampaignLog& log) {
  using detail::ordered_json;
  ordered_json j;
  j["meta"] = {{"seed", log.seed},
               {"config_digest", log.config_digest},
               {"timestamp", log.timestamp},
               {"version", log.version}};

  ordered_json faults = ordered_json::array();
  for (const auto& f : log.config.faults)
    faults.push_back({{"guideword", to_string(f.guideword)},
                      {"parameter", to_string(f.target_parameter)},
                      {"magnitude", f.magnitude},
                      {"schedule", to_string(f.schedule)}});
  SimConfig sim = log.config.sim;
  ordered_json simj;
  for (auto& field : detail::config_fields(sim)) {
    if (field.d)
      simj[field.name] = *field.d;
    else
      simj[field.name] = *field.i;
  }
  j["config"] = {{"mode", to_string(log.config.mode)},
                 {"stopping", to_string(log.config.stopping.kind)},
                 {"stopping_n", log.config.stopping.n},
                 {"record_trajectories", log.config.record_trajectories},
                 {"faults", std::move(faults)},
                 {"sim", std::move(simj)}};

  j["coverage"] = {
      {"total_possible", log.coverage.total_possible},
      {"total_generated", log.coverage.total_generated},
      {"distinct_covered", log.coverage.distinct_covered},
      {"coverage_fraction", log.coverage.coverage_fraction},
      {"tested_over_generated", log.coverage.tested_over_generated}};

  ordered_json eps = ordered_json::array();
  for (const auto& e : log.episodes) {
    ordered_json vs = ordered_json::array();
    for (const auto& v : e.violations)
      vs.push_back({{"id", v.id},
                    {"requirement", to_string(v.requirement)},
                    {"time_s", v.time},
                    {"position", {v.position.x, v.position.y, v.position.z}},
                    {"detail", v.detail}});
    eps.push_back({{"situation_id", e.situation_id},
                   {"axes", detail::axes_to_json(e.axes)},
                   {"outcome", e.outcome},
                   {"violations", std::move(vs)},
                   {"trajectory_csv", e.trajectory_csv}});
  }
  j["episodes"] = std::move(eps);
  return j;
}

inline CampaignLog log_from_json(const nlohmann::ordered_json& j) {
  CampaignLog log;
  const auto& meta = j.at("meta");
  log.seed = meta.at("seed").get<std::uint64_t>();
  log.config_digest = meta.at("config_digest").get<std::string>();
  log.timestamp = meta.at("timestamp").get<std::string>();
  log.version = meta.at("version").get<std::string>();

  const auto& cj = j.at("config");
  std::string mode = cj.at("mode").get<std::string>();
  log.config.mode = mode == "exhaustive" ? CampaignMode::exhaustive
                                         : CampaignMode::random;
  std::string stop = cj.at("stopping").get<std::string>();
  log.config.stopping.kind = stop == "full_coverage"
                                 ? StoppingKind::full_coverage
                                 : (stop == "max_violations"
                                        ? StoppingKind::max_violations
                                        : StoppingKind::max_episodes);
  log.config.stopping.n = cj.at("stopping_n").get<long>();
  log.config.record_trajectories =
      cj.at("record_trajectories").get<bool>();
  for (const auto& fj : cj.at("faults")) {
    FaultSpec f{detail::guideword_from_string(
                    fj.at("guideword").get<std::string>()),
                detail::parameter_from_string(
                    fj.at("parameter").get<std::string>()),
                fj.at("magnitude").get<double>(),
                fj.at("schedule").get<std::string>() == "periodic"
                    ? FaultSchedule::periodic
                    : FaultSchedule::always};
    log.config.faults.push_back(f);
  }
  auto fields = detail::config_fields(log.config.sim);
  for (auto& field : fields) {
    const auto& v = cj.at("sim").at(field.name);
    if (field.d)
      *field.d = v.get<double>();
    else
      *field.i = v.get<int>();
  }
  log.config.seed = log.seed;
  log.config.diagnostics = nullptr;

  const auto& cov = j.at("coverage");
  log.coverage.total_possible = cov.at("total_possible").get<int>();
  log.coverage.total_generated = cov.at("total_generated").get<long>();
  log.coverage.distinct_covered = cov.at("distinct_covered").get<int>();
  log.coverage.coverage_fraction = cov.at("coverage_fraction").get<double>();
  log.coverage.tested_over_generated =
      cov.at("tested_over_generated").get<double>();

  for (const auto& ej : j.at("episodes")) {
    EpisodeRecord e;
    e.situation_id = ej.at("situation_id").get<int>();
    e.axes = detail::axes_from_json(ej.at("axes"));
    e.outcome = ej.at("outcome").get<std::string>();
    for (const auto& vj : ej.at("violations")) {
      ViolationRecord v;
      v.id = vj.at("id").get<std::string>();
      v.requirement = vj.at("requirement").get<std::string>() == "SR1"
                          ? Requirement::SR1
                          : Requirement::SR2;
      v.time = vj.at("time_s").get<double>();
      const auto& p = vj.at("position");
      v.position = {p.at(0).get<double>(), p.at(1).get<double>(),
                    p.at(2).get<double>()};
      v.detail = vj.at("detail").get<std::string>();
      v.situation_id = e.situation_id;
      e.violations.push_back(std::move(v));
    }
    e.trajectory_csv = ej.at("trajectory_csv").get<std::string>();
    log.episodes.push_back(std::move(e));
  }
  return log;
}

inline void write_log(const CampaignLog& log, const std::string& path) {
  write_text_file(path, log_to_json(log).dump(2) + "\n");
}

inline CampaignLog read_log(const std::string& path) {
  return log_from_json(
      nlohmann::ordered_json::parse(read_text_file(path)));
}

// structural equality; the timestamp is the one sanctioned difference
inline bool logs_equal_ignoring_timestamp(const CampaignLog& a,
                                          const CampaignLog& b) {
  auto ja = log_to_json(a);
  auto jb = log_to_json(b);
  ja["meta"]["timestamp"] = "";
  jb["meta"]["timestamp"] = "";
  return ja == jb;
}

}  // namespace sitcov
