#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "msm_mean/core.hpp"
#include "msm_mean/rng.hpp"

namespace msmmean::test_support {

/// Random instance with k series of length 1..max_len over values drawn from `grid`.
inline ProblemInstance random_instance(Rng& rng, std::size_t k, std::size_t max_len,
                                       const std::vector<double>& grid, double c,
                                       std::size_t min_len = 1) {
  std::vector<TimeSeries> series;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> points(min_len + rng.below(max_len - min_len + 1));
    for (auto& x : points) x = grid[rng.below(grid.size())];
    series.emplace_back(std::move(points));
  }
  return ProblemInstance(std::move(series), c);
}

/// Random grid of `count` distinct values with one decimal, in [-5, 5).
inline std::vector<double> random_grid(Rng& rng, std::size_t count) {
  std::vector<double> grid;
  while (grid.size() < count) {
    const double x = static_cast<double>(static_cast<int>(rng.below(100)) - 50) / 10.0;
    bool fresh = true;
    for (double g : grid) fresh = fresh && g != x;
    if (fresh) grid.push_back(x);
  }
  return grid;
}

inline std::filesystem::path data_dir() { return MSM_MEAN_DATA_DIR; }

inline std::filesystem::path italy_power_demand() {
  return data_dir() / "ItalyPowerDemand_TRAIN.tsv";
}

}  // namespace msmmean::test_support
