#include "msm_mean/distance.hpp"

#include <cassert>
#include <cmath>

namespace msmmean {

double msm_distance(std::span<const double> x, std::span<const double> y, double c,
                    DistanceWorkspace& ws) {
  assert(!x.empty() && !y.empty());
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  ws.prev.resize(n);
  ws.curr.resize(n);
  auto& prev = ws.prev;
  auto& curr = ws.curr;

  // First row: x_1 against a growing prefix of y, splits only.
  prev[0] = std::abs(x[0] - y[0]);
  for (std::size_t j = 1; j < n; ++j) prev[j] = prev[j - 1] + split_merge_cost(y[j], x[0], y[j - 1], c);

  for (std::size_t i = 1; i < m; ++i) {
    curr[0] = prev[0] + split_merge_cost(x[i], x[i - 1], y[0], c);
    for (std::size_t j = 1; j < n; ++j) {
      const double move = prev[j - 1] + std::abs(x[i] - y[j]);
      const double merge = prev[j] + split_merge_cost(x[i], x[i - 1], y[j], c);
      const double split = curr[j - 1] + split_merge_cost(y[j], x[i], y[j - 1], c);
      double best = move < merge ? move : merge;
      curr[j] = best < split ? best : split;
    }
    std::swap(prev, curr);
  }
  return prev[n - 1];
}

double msm_distance(std::span<const double> x, std::span<const double> y, double c) {
  DistanceWorkspace ws;
  return msm_distance(x, y, c, ws);
}

double msm_distance(const TimeSeries& x, const TimeSeries& y, double c) {
  return msm_distance(x.points(), y.points(), c);
}

double sum_distance(const ProblemInstance& instance, std::span<const double> y) {
  DistanceWorkspace ws;
  double total = 0.0;
  for (const auto& x : instance.series()) total += msm_distance(x.points(), y, instance.c(), ws);
  return total;
}

double sum_distance(const ProblemInstance& instance, const TimeSeries& y) {
  return sum_distance(instance, y.points());
}

}  // namespace msmmean
