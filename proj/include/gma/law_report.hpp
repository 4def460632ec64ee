#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace gma {

/// One checked law: worst measured defect against a fixed tolerance.
struct LawCheck {
  std::string law;
  double max_defect = 0.0;
  double tolerance = 0.0;
  long trials = 0;
  long worst_case = -1;  // sample index of the worst defect, -1 if n/a
  bool passed = true;
};

/// Accumulates per-law defects across samples. Entries keep insertion
/// order; recording the same law again folds into the existing entry.
class LawReport {
 public:
  void record(std::string_view law, double defect, double tolerance,
              long sample_index = -1) {
    LawCheck* c = find_mutable(law);
    if (c == nullptr) {
      checks_.push_back(LawCheck{std::string(law), 0.0, tolerance, 0, -1, true});
      c = &checks_.back();
    }
    ++c->trials;
    if (!(defect <= c->max_defect) || c->trials == 1) {
      // NaN defects compare false and land here, flagging the entry.
      c->max_defect = defect;
      c->worst_case = sample_index;
    }
    c->passed = c->max_defect <= c->tolerance;
  }

  /// Register a law that had nothing to check (counts as passed).
  void record_vacuous(std::string_view law, double tolerance) {
    if (find(law) == nullptr) {
      checks_.push_back(LawCheck{std::string(law), 0.0, tolerance, 0, -1, true});
    }
  }

  void merge(const LawReport& other) {
    for (const LawCheck& c : other.checks_) {
      LawCheck* mine = find_mutable(c.law);
      if (mine == nullptr) {
        checks_.push_back(c);
        continue;
      }
      if (!(c.max_defect <= mine->max_defect)) {
        mine->max_defect = c.max_defect;
        mine->worst_case = c.worst_case;
      }
      mine->trials += c.trials;
      mine->passed = mine->max_defect <= mine->tolerance;
    }
  }

  const std::vector<LawCheck>& checks() const { return checks_; }

  const LawCheck* find(std::string_view law) const {
    for (const LawCheck& c : checks_)
      if (c.law == law) return &c;
    return nullptr;
  }

  bool all_passed() const {
    return std::all_of(checks_.begin(), checks_.end(),
                       [](const LawCheck& c) { return c.passed; });
  }

 private:
  LawCheck* find_mutable(std::string_view law) {
    for (LawCheck& c : checks_)
      if (c.law == law) return &c;
    return nullptr;
  }

  std::vector<LawCheck> checks_;
};

}  // namespace gma
