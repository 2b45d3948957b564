#include "msm_mean/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msm_mean/distance.hpp"
#include "msm_mean/errors.hpp"

namespace msmmean {

std::size_t BucketSpec::bucket_of(double x) const noexcept {
  if (width <= 0.0) return 0;
  const double raw = std::floor((x - lo) / width);
  if (raw <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(raw), count - 1);
}

DiscretizedInstance discretize_instance(const ProblemInstance& instance, std::size_t bucket_count) {
  if (bucket_count == 0) throw ConfigError("bucket count must be positive");
  BucketSpec spec;
  spec.count = bucket_count;
  spec.lo = std::numeric_limits<double>::infinity();
  spec.hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : instance.series()) {
    for (double x : s.points()) {
      spec.lo = std::min(spec.lo, x);
      spec.hi = std::max(spec.hi, x);
    }
  }
  spec.width = (spec.hi - spec.lo) / static_cast<double>(bucket_count);
  if (spec.width <= 0.0) {
    spec.width = 0.0;
    return {instance, spec};
  }

  std::vector<TimeSeries> snapped;
  snapped.reserve(instance.k());
  for (const auto& s : instance.series()) {
    std::vector<double> points(s.size());
    std::transform(s.points().begin(), s.points().end(), points.begin(),
                   [&](double x) { return spec.center(spec.bucket_of(x)); });
    snapped.emplace_back(std::move(points), s.label());
  }
  return {ProblemInstance(std::move(snapped), instance.c()), spec};
}

DiscretizedMeanResult heuristic_mean_discretized(const ProblemInstance& instance,
                                                 std::size_t bucket_count,
                                                 const SolverOptions& options,
                                                 const FillLimits& limits) {
  auto start = std::chrono::steady_clock::now();
  DiscretizedInstance snapped = discretize_instance(instance, bucket_count);
  MeanResult result = compute_mean(snapped.instance, options, limits);
  result.wall_time = std::chrono::steady_clock::now() - start;
  const double original = sum_distance(instance, result.mean);
  return {std::move(result), snapped.buckets, original};
}

double relative_error(double heuristic_cost, double exact_cost) noexcept {
  if (exact_cost == 0.0) {
    return heuristic_cost == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return (heuristic_cost - exact_cost) / exact_cost;
}

}  // namespace msmmean
