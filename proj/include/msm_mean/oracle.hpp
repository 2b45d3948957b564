#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "msm_mean/core.hpp"

namespace msmmean::oracle {

/// Size limits for brute-force enumeration.
struct OracleBudget {
  std::size_t max_k = 3;
  std::size_t max_len = 4;
  std::size_t max_values = 4;
  /// Cap on sum_{l=1..L} r^l enumerated sequences.
  double max_candidates = 2.5e6;
};

/// Number of sequences of length 1..max_length over an alphabet of `values`.
double enumeration_size(std::size_t values, std::size_t max_length) noexcept;

struct BruteForceResult {
  TimeSeries mean;
  double cost;
  double candidates;
};

/// Scores every sequence over V(X) of length 1..max_length by the sum of
/// pairwise distances and returns the cheapest. Ties go to the shorter
/// sequence, then to the lexicographically smaller sequence of value
/// indices. `workers` > 1 splits the enumeration across threads without
/// changing the result.
///
/// Throws BudgetError when the instance or the enumeration exceeds `budget`.
BruteForceResult brute_force_mean(const ProblemInstance& instance, std::size_t max_length,
                                  const OracleBudget& budget = {}, unsigned workers = 1);

struct MetricAxiomReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t nonnegativity_violations = 0;
  std::size_t symmetry_violations = 0;
  std::size_t identity_violations = 0;
  std::size_t triangle_violations = 0;
  /// First offending triple (x, y, z), if any.
  std::optional<std::array<std::vector<double>, 3>> counterexample;

  std::size_t total_violations() const noexcept {
    return nonnegativity_violations + symmetry_violations + identity_violations +
           triangle_violations;
  }
  bool passed() const noexcept { return total_violations() == 0; }
};

/// Draws `sample_count` random triples (lengths uniform in [1, max_len],
/// values uniform over `value_grid`) and checks the metric axioms at
/// tolerance 1e-9. Violations are counted, never thrown.
MetricAxiomReport check_metric_axioms(std::size_t sample_count, std::size_t max_len,
                                      std::span<const double> value_grid, double c,
                                      std::uint64_t seed);

}  // namespace msmmean::oracle
