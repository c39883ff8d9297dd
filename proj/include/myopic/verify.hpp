#pragma once

// Randomized and replayed certificate suites. Trials are independent, keyed
// by (seed, suite, trial index), and may run on several threads; results do
// not depend on the thread count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "myopic/io.hpp"

namespace myopic {

struct SuiteOptions {
  /// 0 selects the suite's default trial count.
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct SuiteInfo {
  std::string name;
  std::size_t default_trials;
  std::string description;
};

struct SuiteResult {
  std::string suite;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Trials whose hypotheses did not hold (not failures).
  std::size_t skipped = 0;
  std::size_t violations = 0;
  std::string verdict;
  Json stats = Json::object();
  /// First failing trial (lowest index) with its full configuration.
  std::optional<Json> counterexample;

  bool passed() const { return failures == 0; }
};

const std::vector<SuiteInfo>& suite_catalog();

/// Throws UsageError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

Json to_json(const SuiteResult& result);

/// Processes on a cycle of the successor map, by direct chain following.
/// Used to cross-check CGraph loop detection.
std::vector<bool> loop_members_by_chain_walk(const std::vector<std::optional<std::size_t>>& successor);

}  // namespace myopic
