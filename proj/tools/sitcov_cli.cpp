// Command-line front end: run campaigns, enumerate the situation table,
// replay logged episodes, summarize logs, and plot episodes as SVG.
// Exit codes: 0 success (no violations), 2 campaign ran and detected
// violations, 1 any error.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sitcov/campaign.hpp>
#include <sstream>

namespace fs = std::filesystem;
using namespace sitcov;

namespace {

SimConfig load_sim_config(const std::string& arg) {
  if (arg == "defaults") return SimConfig{};
  return load_config(arg);
}

FaultSpec parse_fault_arg(const std::string& text) {
  auto p1 = text.find(':');
  auto p2 = text.rfind(':');
  if (p1 == std::string::npos || p2 == p1)
    throw ConfigError("fault must be GUIDEWORD:PARAMETER:MAGNITUDE, got '" +
                      text + "'");
  Guideword g = detail::guideword_from_string(text.substr(0, p1));
  FaultParameter p =
      detail::parameter_from_string(text.substr(p1 + 1, p2 - p1 - 1));
  double magnitude = 0.0;
  try {
    std::size_t used = 0;
    std::string m = text.substr(p2 + 1);
    magnitude = std::stod(m, &used);
    if (used != m.size()) throw std::invalid_argument(m);
  } catch (const std::exception&) {
    throw ConfigError("bad fault magnitude in '" + text + "'");
  }
  FaultSchedule sched = g == Guideword::UNINTENDED ? FaultSchedule::periodic
                                                   : FaultSchedule::always;
  FaultSpec f{g, p, magnitude, sched};
  validate_fault(f);
  return f;
}

long total_violations(const CampaignLog& log) {
  long n = 0;
  for (const auto& e : log.episodes) n += static_cast<long>(e.violations.size());
  return n;
}

int do_run(const std::string& config_arg, std::uint64_t seed,
           const std::string& mode, long max_episodes, const std::string& stop,
           long stop_n, const std::vector<std::string>& fault_args,
           const std::string& out_dir, bool no_trajectories) {
  CampaignConfig cfg;
  cfg.sim = load_sim_config(config_arg);
  cfg.seed = seed;
  cfg.mode = mode == "exhaustive" ? CampaignMode::exhaustive
                                  : CampaignMode::random;
  if (max_episodes >= 0 && (!stop.empty() || stop_n >= 0))
    throw ConfigError("use either --max-episodes or --stop/--stop-n");
  if (max_episodes >= 0) cfg.stopping = {StoppingKind::max_episodes,
                                         max_episodes};
  if (!stop.empty()) {
    if (stop == "max_episodes") cfg.stopping.kind = StoppingKind::max_episodes;
    else if (stop == "max_violations")
      cfg.stopping.kind = StoppingKind::max_violations;
    else cfg.stopping.kind = StoppingKind::full_coverage;
  }
  if (stop_n >= 0) cfg.stopping.n = stop_n;
  for (const auto& f : fault_args) cfg.faults.push_back(parse_fault_arg(f));
  cfg.record_trajectories = !no_trajectories;
  cfg.output_dir = out_dir;
  cfg.diagnostics = &std::cerr;

  fs::create_directories(out_dir);
  CampaignLog log = run_campaign(cfg);
  std::string log_path = (fs::path(out_dir) / "campaign.json").string();
  write_log(log, log_path);

  long violations = total_violations(log);
  std::printf("wrote %s\n", log_path.c_str());
  std::printf("episodes: %zu  coverage: %d/%d (%.3f)  violations: %ld\n",
              log.episodes.size(), log.coverage.distinct_covered,
              log.coverage.total_possible, log.coverage.coverage_fraction,
              violations);
  return violations > 0 ? 2 : 0;
}

int do_enumerate() {
  for (int id = 1; id <= kSituationCount; ++id) {
    auto v = axis_values(situation_from_id(id));
    std::printf("%d,%s,%s,%s,%s,%s\n", id, axis_value_label(0, v[0]),
                axis_value_label(1, v[1]), axis_value_label(2, v[2]),
                axis_value_label(3, v[3]), axis_value_label(4, v[4]));
  }
  return 0;
}

int do_replay(const std::string& log_path, long episode) {
  CampaignLog log = read_log(log_path);
  if (episode < 0 || episode >= static_cast<long>(log.episodes.size()))
    throw ConfigError("episode index out of range: log has " +
                      std::to_string(log.episodes.size()) + " episodes");
  const EpisodeRecord& rec = log.episodes[episode];
  if (rec.trajectory_csv.empty())
    throw ConfigError("log has no stored trajectory for episode " +
                      std::to_string(episode) +
                      " (recorded with trajectories disabled)");
  std::string stored = read_text_file(
      (fs::path(log_path).parent_path() / rec.trajectory_csv).string());

  EpisodeResult ep = run_episode(rec.axes, log.config.sim, log.config.faults,
                                 derive_seed(log.seed, episode));
  std::string fresh = trajectory_to_csv(ep);
  if (fresh != stored) {
    std::fprintf(stderr,
                 "error: replayed trajectory differs from the stored one "
                 "(%zu vs %zu bytes)\n",
                 fresh.size(), stored.size());
    return 1;
  }
  if (to_string(ep.outcome) != rec.outcome) {
    std::fprintf(stderr, "error: replayed outcome %s differs from logged %s\n",
                 to_string(ep.outcome), rec.outcome.c_str());
    return 1;
  }
  std::printf("episode %ld (situation %d): identical — %zu samples, %s\n",
              episode, rec.situation_id, ep.trajectory.size(),
              rec.outcome.c_str());
  return 0;
}

int do_report(const std::string& log_path) {
  CampaignLog log = read_log(log_path);
  std::printf("seed %llu  digest %s  version %s  %s\n",
              static_cast<unsigned long long>(log.seed),
              log.config_digest.c_str(), log.version.c_str(),
              log.timestamp.c_str());
  std::string faults;
  for (const auto& f : log.config.faults) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " %s:%s:%g", to_string(f.guideword),
                  to_string(f.target_parameter), f.magnitude);
    faults += buf;
  }
  std::printf("mode %s  stopping %s n=%ld  faults:%s\n",
              to_string(log.config.mode), to_string(log.config.stopping.kind),
              log.config.stopping.n, faults.empty() ? " none" : faults.c_str());
  const CoverageSummary& c = log.coverage;
  std::printf(
      "coverage: generated %ld, distinct %d/%d, fraction %.3f, "
      "tested/generated %.3f\n",
      c.total_generated, c.distinct_covered, c.total_possible,
      c.coverage_fraction, c.tested_over_generated);

  std::map<std::string, int> outcomes;
  for (const auto& e : log.episodes) ++outcomes[e.outcome];
  std::printf("outcomes:");
  for (const auto& [name, n] : outcomes) std::printf("  %s %d", name.c_str(), n);
  std::printf("\n");

  long violations = total_violations(log);
  std::printf("violations (%ld):\n", violations);
  if (violations > 0) {
    std::printf("  %-8s %-9s %-14s %-4s %-8s %s\n", "episode", "situation",
                "id", "req", "time_s", "detail");
    for (std::size_t k = 0; k < log.episodes.size(); ++k)
      for (const auto& v : log.episodes[k].violations)
        std::printf("  %-8zu %-9d %-14s %-4s %-8.2f %s\n", k, v.situation_id,
                    v.id.c_str(), to_string(v.requirement), v.time,
                    v.detail.c_str());
  }
  return 0;
}

int do_plot(const std::string& log_path, long episode,
            const std::string& out_dir) {
  CampaignLog log = read_log(log_path);
  if (episode < 0 || episode >= static_cast<long>(log.episodes.size()))
    throw ConfigError("episode index out of range: log has " +
                      std::to_string(log.episodes.size()) + " episodes");
  const EpisodeRecord& rec = log.episodes[episode];
  SceneBundle bundle = build_scene(rec.axes, log.config.sim.world);
  const Scene& sc = bundle.scene;

  std::string csv;
  if (!rec.trajectory_csv.empty()) {
    csv = read_text_file(
        (fs::path(log_path).parent_path() / rec.trajectory_csv).string());
  } else {
    EpisodeResult ep = run_episode(rec.axes, log.config.sim, log.config.faults,
                                   derive_seed(log.seed, episode));
    csv = trajectory_to_csv(ep);
  }
  auto rows = parse_trajectory_csv(csv);

  double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
  for (const auto& w : sc.walls) {
    for (const Vec2& p : {w.a, w.b}) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const double margin = 1.0, scale = 40.0, top = 30.0;
  xmin -= margin, xmax += margin, ymin -= margin, ymax += margin;
  double width = (xmax - xmin) * scale;
  double height = (ymax - ymin) * scale + top;
  auto X = [&](double x) { return (x - xmin) * scale; };
  auto Y = [&](double y) { return (ymax - y) * scale + top; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"8\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">"
      << "situation " << rec.situation_id << " — " << rec.outcome
      << (sc.ambient == AmbientLight::TotalDarkness ? " (dark)" : "")
      << "</text>\n";

  auto box = [&](const BoxPrism& b, const char* style) {
    svg << "<rect x=\"" << X(b.center.x - b.half_x) << "\" y=\""
        << Y(b.center.y + b.half_y) << "\" width=\"" << 2 * b.half_x * scale
        << "\" height=\"" << 2 * b.half_y * scale << "\" " << style << "/>\n";
  };
  for (const auto& b : sc.obstacles)
    box(b, "fill=\"#888\" stroke=\"#444\" stroke-width=\"1\"");
  if (sc.corner_bar)
    box(*sc.corner_bar,
        "fill=\"#e6a23c\" fill-opacity=\"0.5\" stroke=\"#b8860b\" "
        "stroke-dasharray=\"4 3\"");
  for (const auto& w : sc.walls)
    svg << "<line x1=\"" << X(w.a.x) << "\" y1=\"" << Y(w.a.y) << "\" x2=\""
        << X(w.b.x) << "\" y2=\"" << Y(w.b.y)
        << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
  if (sc.human)
    svg << "<circle cx=\"" << X(sc.human->x) << "\" cy=\"" << Y(sc.human->y)
        << "\" r=\"" << sc.human_radius * scale
        << "\" fill=\"#d33\" stroke=\"#900\"/>\n";
  for (std::size_t i = 0; i < sc.waypoints.size(); ++i) {
    const Vec3& wp = sc.waypoints[i];
    svg << "<circle cx=\"" << X(wp.x) << "\" cy=\"" << Y(wp.y)
        << "\" r=\"5\" fill=\"none\" stroke=\"#06c\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << X(wp.x) + 7 << "\" y=\"" << Y(wp.y) + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#06c\">WP"
        << i + 1 << "</text>\n";
  }
  if (!rows.empty()) {
    svg << "<polyline fill=\"none\" stroke=\"#1a5fb4\" stroke-width=\"1.5\" "
           "points=\"";
    for (const auto& r : rows) svg << X(r.x) << "," << Y(r.y) << " ";
    svg << "\"/>\n";
    svg << "<circle cx=\"" << X(rows.front().x) << "\" cy=\""
        << Y(rows.front().y) << "\" r=\"4\" fill=\"#2a2\"/>\n";
    svg << "<circle cx=\"" << X(rows.back().x) << "\" cy=\"" << Y(rows.back().y)
        << "\" r=\"4\" fill=\""
        << (rec.outcome == "collision" ? "#d33" : "#2a2") << "\"/>\n";
  }
  for (const auto& v : rec.violations) {
    double cx = X(v.position.x), cy = Y(v.position.y);
    svg << "<path d=\"M" << cx - 5 << " " << cy - 5 << " L" << cx + 5 << " "
        << cy + 5 << " M" << cx - 5 << " " << cy + 5 << " L" << cx + 5 << " "
        << cy - 5 << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << cx + 8 << "\" y=\"" << cy - 6
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"red\">"
        << to_string(v.requirement) << " @" << v.time << "s</text>\n";
  }
  svg << "</svg>\n";

  fs::create_directories(out_dir);
  char base[48];
  std::snprintf(base, sizeof base, "episode_%04ld", episode);
  std::string svg_path = (fs::path(out_dir) / (std::string(base) + ".svg")).string();
  std::string csv_path = (fs::path(out_dir) / (std::string(base) + ".csv")).string();
  write_text_file(svg_path, svg.str());
  write_text_file(csv_path, csv);
  std::printf("wrote %s and %s\n", svg_path.c_str(), csv_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"situation-coverage safety testing for a simulated mine-survey "
               "drone"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a testing campaign");
  std::string config_arg = "defaults";
  std::uint64_t seed = 1;
  std::string mode = "random";
  long max_episodes = -1;
  std::string stop;
  long stop_n = -1;
  std::vector<std::string> fault_args;
  std::string out_dir = "out";
  bool no_trajectories = false;
  run->add_option("--config", config_arg,
                  "key=value config file, or 'defaults' for built-ins");
  run->add_option("--seed", seed, "campaign seed (default 1)");
  run->add_option("--mode", mode, "random | exhaustive")
      ->check(CLI::IsMember({"random", "exhaustive"}));
  run->add_option("--max-episodes", max_episodes,
                  "stop after N episodes (shorthand for --stop max_episodes)");
  run->add_option("--stop", stop,
                  "stopping rule: max_episodes | max_violations | "
                  "full_coverage")
      ->check(CLI::IsMember({"max_episodes", "max_violations",
                             "full_coverage"}));
  run->add_option("--stop-n", stop_n, "stopping rule threshold");
  run->add_option("--fault", fault_args,
                  "inject GUIDEWORD:PARAMETER:MAGNITUDE (repeatable)");
  run->add_option("--out", out_dir, "output directory (default ./out)");
  run->add_flag("--no-trajectories", no_trajectories,
                "skip writing per-episode trajectory csv files");

  auto* enumerate = app.add_subcommand(
      "enumerate", "print the 32-row situation table as csv");

  auto* replay = app.add_subcommand(
      "replay", "re-run one logged episode and verify it reproduces");
  std::string replay_log;
  long replay_episode = 0;
  replay->add_option("--log", replay_log, "campaign.json path")->required();
  replay->add_option("--episode", replay_episode, "episode index (0-based)")
      ->required();

  auto* report = app.add_subcommand("report", "summarize a campaign log");
  std::string report_log;
  report->add_option("--log", report_log, "campaign.json path")->required();

  auto* plot = app.add_subcommand(
      "plot", "draw one episode over the mine floor plan as svg");
  std::string plot_log, plot_out = ".";
  long plot_episode = 0;
  plot->add_option("--log", plot_log, "campaign.json path")->required();
  plot->add_option("--episode", plot_episode, "episode index (0-based)")
      ->required();
  plot->add_option("--out", plot_out, "output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (run->parsed())
      return do_run(config_arg, seed, mode, max_episodes, stop, stop_n,
                    fault_args, out_dir, no_trajectories);
    if (enumerate->parsed()) return do_enumerate();
    if (replay->parsed()) return do_replay(replay_log, replay_episode);
    if (report->parsed()) return do_report(report_log);
    if (plot->parsed()) return do_plot(plot_log, plot_episode, plot_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
