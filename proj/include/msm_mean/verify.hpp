#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "msm_mean/core.hpp"

namespace msmmean {

struct VerifyConfig {
  std::uint64_t seed = 42;
  /// Random instances for the oracle, structure, empty-move-set and window checks.
  std::size_t instances = 50;
  std::size_t min_k = 2;
  std::size_t max_k = 3;
  /// Series lengths are drawn from 1..max_len.
  std::size_t max_len = 4;
  /// Each instance draws its values from at most this many distinct reals.
  std::size_t max_values = 4;
  std::size_t metric_samples = 1000;
  std::size_t metric_max_len = 10;
  /// Instances cycle through these costs; the metric check runs once per entry.
  std::vector<double> cs{0.01, 0.1, 1.0};
  unsigned oracle_workers = 1;
};

/// The instance set shared by the oracle, structure, empty-move-set and
/// window checks. Deterministic in the config.
std::vector<ProblemInstance> verification_instances(const VerifyConfig& config);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;
  std::vector<std::string> counterexamples;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const noexcept;
};

/// Runs every check: metric axioms, brute-force oracle equivalence,
/// structural bounds and cost consistency of every produced mean, equal
/// optima with and without all-split steps, window dominance.
/// Throws ConfigError for an invalid config (negative c, zero bounds).
VerifyReport run_verify(const VerifyConfig& config);

/// Human-readable one-line description of an instance.
std::string describe(const ProblemInstance& instance);

}  // namespace msmmean
