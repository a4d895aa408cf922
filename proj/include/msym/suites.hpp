#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msym {

/// Outcome of one identity, aggregated over its random trials. On failure,
/// trial_seed names the first failing trial so the counterexample can be
/// regenerated deterministically.
struct IdentityResult {
  std::string id;
  std::string chart;
  std::uint64_t trial_seed = 0;
  bool pass = true;
  long residual_term_count = 0;
  std::string counterexample;
};

struct SuiteReport {
  std::string suite;
  std::string chart;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<IdentityResult> identities;

  bool all_pass() const;
  /// Stable text format (the golden-file format).
  std::string render_text() const;
  /// Versioned JSON ("schema": 1); key order is lexicographic, so the output
  /// is byte-deterministic.
  std::string render_json() const;
};

/// Runs one named identity suite with seeded random trials on the extended
/// chart C(n,N) (plus the matching ordinary chart where needed). Valid names:
/// schouten, calculus, multiphase, poisson, vertical, connections, all.
SuiteReport run_suite(const std::string& suite, int n, int N,
                      std::uint64_t seed, int trials, int max_degree);

}  // namespace msym
