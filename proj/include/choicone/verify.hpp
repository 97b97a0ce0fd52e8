#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "choicone/json_io.hpp"

namespace choicone {

enum class Suite { All, Choi, Duality, Preserve, Classify };

const char* to_string(Suite suite);
std::optional<Suite> parse_suite(std::string_view name);

struct CheckResult {
  std::string statement;     // the theorem, proposition or identity checked
  std::string check;         // what was run
  std::vector<int> criteria; // acceptance criteria this check feeds
  bool passed = false;
  double measured = 0.0;     // worst residual or value seen
  double tolerance = 0.0;
  std::string detail;
};

struct Report {
  Suite suite = Suite::All;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  // True iff every check tagged with `criterion` passed (and at least one exists).
  bool criterion_passed(int criterion) const;
};

// Deterministic in (suite, seed): no timings or addresses enter the report.
Report run_suite(Suite suite, std::uint64_t seed);

Json to_json(const Report& report);

}  // namespace choicone
