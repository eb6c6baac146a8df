#pragma once

// The eleven acceptance criteria, shared by `symrmt selftest` and the
// acceptance test binary.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "symrmt/io.hpp"

namespace symrmt {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;               // one line
  std::vector<std::string> details;  // failing items and notes
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  int workers = 1;
  std::set<int> only;  // empty: all eleven
};

inline constexpr int kCriterionCount = 11;

std::string criterion_title(int id);

/// Runs the selected criteria in order, calling on_result after each one.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// "criterion  5 FAIL  CLT variance ...  (12.3 s)  summary"
std::string format_result_line(const CriterionResult& result);

Json to_json(const std::vector<CriterionResult>& results, const AcceptanceOptions& options);

}  // namespace symrmt
