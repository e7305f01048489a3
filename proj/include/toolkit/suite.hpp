#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace toolkit {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct SuiteOptions {
  uint64_t seed = 0;
  unsigned threads = 1;
  size_t e6_triples = 1000;
  size_t e7_triples = 500;
  size_t jordan_samples = 1000;
  size_t jordan_pairs = 300;
  size_t gamma_pairs = 100;
  size_t random_orders = 50;
  // progress lines for the diagnostic stream, never part of a result
  std::function<void(const std::string&)> log;
};

// criteria 1..10; 11 is the end-to-end run of the CLI itself
inline constexpr int kSuiteCriteria = 10;
CriterionResult run_criterion(int id, const SuiteOptions& opts);
std::vector<CriterionResult> run_suite(const SuiteOptions& opts);

}  // namespace toolkit
