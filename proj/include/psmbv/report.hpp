#pragma once

#include <string>
#include <vector>

namespace psmbv {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;  // canonical rendering of the failing expression, if any
  std::string note;
  long runtime_ms = 0;
};

// Ordered, deterministic collection of check outcomes plus any convention
// deviations the engine had to resolve along the way.
struct CheckReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> deviations;

  void add(std::string name, bool pass, std::string witness = "", std::string note = "") {
    checks.push_back({std::move(name), pass, std::move(witness), std::move(note), 0});
  }

  void merge(const CheckReport& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    deviations.insert(deviations.end(), o.deviations.begin(), o.deviations.end());
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Plain-text rendering: one line per check. When full_witness is false the
// witness expressions are suppressed.
std::string render_text(const CheckReport& report, bool full_witness);

}  // namespace psmbv
