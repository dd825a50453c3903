#pragma once

// The acceptance suite: one measured, pass/fail verdict per criterion.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace kbrg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::map<std::string, double> metrics;
};

struct AcceptanceOptions {
  std::string profile = "desk";  // desk: full sizes; quick: reduced sizes for smoke runs
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  double cn_multiplier = 1.0;  // negative control: scales c_N in every sampled adjacency
  std::vector<int> only;       // empty: all criteria
  std::filesystem::path scratch_dir;  // for the determinism check; defaults to a temp dir
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream* progress = nullptr);

/// "[PASS] 2 second-moment: ..." / "[FAIL] ..."
std::string format_result_line(const CriterionResult& r);

/// JSON report {"passed": bool, "criteria": [...]}.
std::string acceptance_report_json(const std::vector<CriterionResult>& results);

std::vector<int> parse_criteria_list(const std::string& text);

}  // namespace kbrg
