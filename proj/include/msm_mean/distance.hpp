#pragma once

#include <span>
#include <vector>

#include "msm_mean/core.hpp"

namespace msmmean {

/// Split/merge charge for introducing `point` next to `neighbor` when it
/// is aligned with `target`: c if point lies between neighbor and target,
/// otherwise c plus the smaller of the two detours.
inline double split_merge_cost(double point, double neighbor, double target, double c) noexcept {
  if ((neighbor <= point && point <= target) || (neighbor >= point && point >= target)) return c;
  const double a = point > neighbor ? point - neighbor : neighbor - point;
  const double b = point > target ? point - target : target - point;
  return c + (a < b ? a : b);
}

/// Reusable row buffers for repeated distance evaluations in hot loops.
class DistanceWorkspace {
 public:
  std::vector<double> prev;
  std::vector<double> curr;
};

/// MSM distance between x and y with split/merge cost c (two rolling rows).
double msm_distance(std::span<const double> x, std::span<const double> y, double c,
                    DistanceWorkspace& workspace);
double msm_distance(std::span<const double> x, std::span<const double> y, double c);
double msm_distance(const TimeSeries& x, const TimeSeries& y, double c);

/// Sum of msm_distance(x, y, instance.c()) over every x in the instance.
double sum_distance(const ProblemInstance& instance, std::span<const double> y);
double sum_distance(const ProblemInstance& instance, const TimeSeries& y);

}  // namespace msmmean
