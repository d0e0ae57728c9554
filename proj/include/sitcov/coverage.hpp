#pragma once

#include <map>
#include <set>

#include "sitcov/situation.hpp"

namespace sitcov {

struct CoverageSummary {
  int total_possible = kSituationCount;
  long total_generated = 0;
  int distinct_covered = 0;
  double coverage_fraction = 0.0;
  // ratio of executed to generated situations; the pipeline executes every
  // situation it generates, so this is 1.0 for any non-empty campaign
  double tested_over_generated = 0.0;
};

// Tracks which of the 32 situations a campaign has touched and how often.
class CoverageGrid {
 public:
  void mark(const Situation& s) {
    int id = situation_id(s);
    covered_.insert(id);
    ++generated_;
    ++runs_per_id_[id];
  }

  bool is_covered(const Situation& s) const {
    return covered_.count(situation_id(s)) > 0;
  }

  bool full() const {
    return static_cast<int>(covered_.size()) == kSituationCount;
  }

  long generated() const { return generated_; }
  int distinct() const { return static_cast<int>(covered_.size()); }
  long runs_of(int id) const {
    auto it = runs_per_id_.find(id);
    return it == runs_per_id_.end() ? 0 : it->second;
  }

  CoverageSummary report() const {
    CoverageSummary s;
    s.total_possible = kSituationCount;
    s.total_generated = generated_;
    s.distinct_covered = distinct();
    s.coverage_fraction =
        static_cast<double>(s.distinct_covered) / s.total_possible;
    s.tested_over_generated = generated_ > 0 ? 1.0 : 0.0;
    return s;
  }

 private:
  std::set<int> covered_;
  std::map<int, long> runs_per_id_;
  long generated_ = 0;
};

}  // namespace sitcov
