#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scenario.hpp"

namespace workbench {

struct TaskResult {
  std::string id;      // "3", or "paper/identity.scn:2" inside a suite
  std::string kind;
  std::string status;  // pass, fail, unknown, skip
  std::string what;    // the task as written
  std::vector<std::pair<std::string, std::string>> fields;
  double seconds = 0;
};

struct Report {
  std::vector<TaskResult> results;
  bool failed() const;
  std::size_t count(const std::string& status) const;
};

struct RunOptions {
  unsigned jobs = 1;
  std::uint64_t seed = 0;  // task scheduling order and cocycle transversals only
  DecideConfig defaults;   // per-task degree/radius override these
};

/// Runs every task; caps and library errors become per-task skip/fail, never abort.
Report run(const Scenario& s, const RunOptions& opt);
/// Runs all scenarios of a bundled suite in file order.
Report run_suite(const std::string& name, const RunOptions& opt);

/// One line per task, key=value, fixed key order. Wall-clock only when `timing`.
std::string format_machine(const Report& r, bool timing = false);
std::string format_text(const Report& r, bool timing = false);

/// Stable 64-bit digest of a certificate, printed in hex.
std::string certificate_digest(const Certificate& c, const Alphabet& a);

}  // namespace workbench
