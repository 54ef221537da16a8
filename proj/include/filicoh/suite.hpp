#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace filicoh {

struct SuiteOptions {
  /// Largest arity used where a criterion scans simple algebras A_{n+1}.
  int max_n = 5;
  std::uint64_t seed = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

constexpr int suite_criteria = 13;

CriterionResult run_criterion(int id, const SuiteOptions& opts);
std::vector<CriterionResult> run_whitehead_suite(const SuiteOptions& opts);

}  // namespace filicoh
