#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sitcov/config.hpp"
#include "sitcov/situation.hpp"

namespace sitcov {

// HAZOP-style guidewords; only the three below are implemented as faults.
enum class Guideword { LATE, UNINTENDED, MORE };

enum class FaultParameter {
  human_detection_latency,
  collision_signal,
  goal_threshold,
};

enum class FaultSchedule { always, periodic };

struct EmptyMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const char* to_string(Guideword g) {
  switch (g) {
    case Guideword::LATE: return "LATE";
    case Guideword::UNINTENDED: return "UNINTENDED";
    case Guideword::MORE: return "MORE";
  }
  return "?";
}

inline const char* to_string(FaultParameter p) {
  switch (p) {
    case FaultParameter::human_detection_latency:
      return "human_detection_latency";
    case FaultParameter::collision_signal: return "collision_signal";
    case FaultParameter::goal_threshold: return "goal_threshold";
  }
  return "?";
}

inline const char* to_string(FaultSchedule s) {
  return s == FaultSchedule::always ? "always" : "periodic";
}

// One seeded fault.  magnitude units: s (LATE delay), s (UNINTENDED period),
// m (MORE threshold override).
struct FaultSpec {
  Guideword guideword;
  FaultParameter target_parameter;
  double magnitude;
  FaultSchedule schedule;

  bool operator==(const FaultSpec&) const = default;
};

inline bool is_implemented_pair(Guideword g, FaultParameter p) {
  return (g == Guideword::LATE &&
          p == FaultParameter::human_detection_latency) ||
         (g == Guideword::UNINTENDED &&
          p == FaultParameter::collision_signal) ||
         (g == Guideword::MORE && p == FaultParameter::goal_threshold);
}

inline void validate_fault(const FaultSpec& f) {
  if (!is_implemented_pair(f.guideword, f.target_parameter))
    throw ConfigError(std::string("unsupported fault ") +
                      to_string(f.guideword) + ":" +
                      to_string(f.target_parameter));
  if (!(f.magnitude > 0.0)) throw ConfigError("fault magnitude must be > 0");
  FaultSchedule want = f.guideword == Guideword::UNINTENDED
                           ? FaultSchedule::periodic
                           : FaultSchedule::always;
  if (f.schedule != want)
    throw ConfigError(std::string("fault ") + to_string(f.guideword) +
                      " requires schedule " + to_string(want));
}

inline FaultSpec make_late(double delay_s = 3.0) {
  return {Guideword::LATE, FaultParameter::human_detection_latency, delay_s,
          FaultSchedule::always};
}

inline FaultSpec make_unintended(double period_s = 20.0) {
  return {Guideword::UNINTENDED, FaultParameter::collision_signal, period_s,
          FaultSchedule::periodic};
}

inline FaultSpec make_more(double threshold_m = 2.5) {
  return {Guideword::MORE, FaultParameter::goal_threshold, threshold_m,
          FaultSchedule::always};
}

// The situation each implemented fault is demonstrated on: LATE needs the
// human, UNINTENDED needs a wall close behind the turnaround point, MORE
// needs the corner (in darkness, so the early turn is flown near-blind).
inline Situation designated_situation(Guideword g) {
  switch (g) {
    case Guideword::LATE:
      return Situation{false, false, false, false, true};
    case Guideword::UNINTENDED:
      return Situation{false, false, true, false, false};
    case Guideword::MORE:
      return Situation{true, false, false, true, false};
  }
  throw std::logic_error("unknown guideword");
}

// What the active faults do to this control tick.
struct FaultEffects {
  double human_detection_delay = 0.0;
  bool inject_false_collision_now = false;
  std::optional<double> goal_threshold_override;

  bool operator==(const FaultEffects&) const = default;
};

// Deterministic fault->effect resolution at episode time t.  The periodic
// collision signal fires on the step whose start time sits on a period
// boundary, except t=0 (a false positive on the launch pad tests nothing).
inline FaultEffects effects_at(const std::vector<FaultSpec>& faults, double t,
                               double dt) {
  FaultEffects fx;
  long step = std::lround(t / dt);
  for (const auto& f : faults) {
    switch (f.guideword) {
      case Guideword::LATE:
        fx.human_detection_delay =
            std::max(fx.human_detection_delay, f.magnitude);
        break;
      case Guideword::UNINTENDED: {
        long period_steps = std::max(1L, std::lround(f.magnitude / dt));
        if (step > 0 && step % period_steps == 0)
          fx.inject_false_collision_now = true;
        break;
      }
      case Guideword::MORE:
        fx.goal_threshold_override = f.magnitude;
        break;
    }
  }
  return fx;
}

struct DeviationCell {
  Guideword guideword;
  FaultParameter parameter;
  std::string note;
  bool implemented;
};

// Cross product of guidewords x parameters with a plausibility note per
// cell; the three cells above are runnable, the rest are analysis-only.
inline std::vector<DeviationCell> deviation_matrix(
    const std::vector<Guideword>& guidewords,
    const std::vector<FaultParameter>& parameters) {
  if (guidewords.empty() || parameters.empty())
    throw EmptyMatrixError("deviation matrix needs >= 1 guideword and >= 1 parameter");
  std::vector<DeviationCell> cells;
  cells.reserve(guidewords.size() * parameters.size());
  for (auto g : guidewords) {
    for (auto p : parameters) {
      bool impl = is_implemented_pair(g, p);
      std::string note = std::string(to_string(g)) + " applied to " +
                         to_string(p) +
                         (impl ? ": seeded fault, runnable"
                               : ": candidate deviation, analysis only");
      cells.push_back({g, p, note, impl});
    }
  }
  return cells;
}

}  // namespace sitcov
