#pragma once

#include <cstddef>

#include "msm_mean/core.hpp"
#include "msm_mean/mean.hpp"

namespace msmmean {

/// v equal-width buckets over [lo, hi].
struct BucketSpec {
  std::size_t count = 1;
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;

  /// Bucket of `x`: floor((x - lo) / width) clamped to [0, count - 1]; 0 when width is 0.
  std::size_t bucket_of(double x) const noexcept;
  double center(std::size_t bucket) const noexcept { return lo + (static_cast<double>(bucket) + 0.5) * width; }
};

struct DiscretizedInstance {
  ProblemInstance instance;
  BucketSpec buckets;
};

/// Replaces every point by the center of its bucket. lo/hi span all points
/// of all series. An instance whose points are all equal is returned as is.
DiscretizedInstance discretize_instance(const ProblemInstance& instance, std::size_t bucket_count);

struct DiscretizedMeanResult {
  /// Solve on the snapped instance; `result.cost` is measured against it.
  MeanResult result;
  BucketSpec buckets;
  /// sum_distance of the ORIGINAL instance to the heuristic mean.
  double cost_on_original = 0.0;
};

DiscretizedMeanResult heuristic_mean_discretized(const ProblemInstance& instance,
                                                 std::size_t bucket_count,
                                                 const SolverOptions& options = {},
                                                 const FillLimits& limits = {});

/// (heuristic - exact) / exact; 0 when both are 0, +infinity when only exact is 0.
double relative_error(double heuristic_cost, double exact_cost) noexcept;

}  // namespace msmmean
