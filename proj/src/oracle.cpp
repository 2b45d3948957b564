#include "msm_mean/oracle.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <thread>

#include "msm_mean/distance.hpp"
#include "msm_mean/errors.hpp"
#include "msm_mean/rng.hpp"

namespace msmmean::oracle {
namespace {

constexpr double kTolerance = 1e-9;

struct Best {
  double cost = std::numeric_limits<double>::infinity();
  std::uint64_t index = std::numeric_limits<std::uint64_t>::max();
};

// Global candidate index g enumerates length 1 first, then length 2, ...;
// within a length, value-index tuples in lexicographic order.
void decode(std::uint64_t g, std::size_t r, std::vector<std::size_t>& digits) {
  std::size_t len = 1;
  std::uint64_t block = r;
  while (g >= block) {
    g -= block;
    block *= r;
    ++len;
  }
  digits.assign(len, 0);
  for (std::size_t i = len; i-- > 0;) {
    digits[i] = static_cast<std::size_t>(g % r);
    g /= r;
  }
}

Best score_range(const ProblemInstance& instance, const std::vector<double>& values,
                 std::uint64_t begin, std::uint64_t end) {
  Best best;
  DistanceWorkspace ws;
  std::vector<std::size_t> digits;
  std::vector<double> candidate;
  const std::size_t r = values.size();
  for (std::uint64_t g = begin; g < end; ++g) {
    decode(g, r, digits);
    candidate.resize(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) candidate[i] = values[digits[i]];
    double total = 0.0;
    for (const auto& x : instance.series()) {
      total += msm_distance(x.points(), candidate, instance.c(), ws);
      if (total > best.cost) break;
    }
    if (total < best.cost) {
      best.cost = total;
      best.index = g;
    }
  }
  return best;
}

std::vector<double> random_series(Rng& rng, std::size_t max_len, std::span<const double> grid) {
  std::vector<double> out(1 + rng.below(max_len));
  for (auto& x : out) x = grid[rng.below(grid.size())];
  return out;
}

}  // namespace

double enumeration_size(std::size_t values, std::size_t max_length) noexcept {
  double total = 0.0, term = 1.0;
  for (std::size_t l = 1; l <= max_length; ++l) {
    term *= static_cast<double>(values);
    total += term;
  }
  return total;
}

BruteForceResult brute_force_mean(const ProblemInstance& instance, std::size_t max_length,
                                  const OracleBudget& budget, unsigned workers) {
  std::set<double> distinct;
  for (const auto& s : instance.series()) distinct.insert(s.values().begin(), s.values().end());
  const std::vector<double> values(distinct.begin(), distinct.end());

  const double size = enumeration_size(values.size(), max_length);
  if (max_length == 0) throw ConfigError("oracle max length must be positive");
  if (instance.k() > budget.max_k || instance.max_length() > budget.max_len ||
      values.size() > budget.max_values || size > budget.max_candidates) {
    throw BudgetError("instance exceeds oracle budget (k=" + std::to_string(instance.k()) +
                          ", n_max=" + std::to_string(instance.max_length()) +
                          ", r=" + std::to_string(values.size()) +
                          ", enumeration size=" + std::to_string(size) + ")",
                      size);
  }

  const auto total = static_cast<std::uint64_t>(size);
  workers = std::max(1u, workers);
  Best best;
  if (workers == 1 || total < 4096) {
    best = score_range(instance, values, 0, total);
  } else {
    std::vector<Best> partial(workers);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t b = std::min(total, w * chunk);
      const std::uint64_t e = std::min(total, b + chunk);
      threads.emplace_back([&, w, b, e] { partial[w] = score_range(instance, values, b, e); });
    }
    for (auto& t : threads) t.join();
    for (const auto& p : partial) {
      if (p.cost < best.cost || (p.cost == best.cost && p.index < best.index)) best = p;
    }
  }

  std::vector<std::size_t> digits;
  decode(best.index, values.size(), digits);
  std::vector<double> mean(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) mean[i] = values[digits[i]];
  return {TimeSeries(std::move(mean)), best.cost, size};
}

MetricAxiomReport check_metric_axioms(std::size_t sample_count, std::size_t max_len,
                                      std::span<const double> value_grid, double c,
                                      std::uint64_t seed) {
  if (sample_count == 0 || max_len == 0 || value_grid.empty()) {
    throw ConfigError("metric axiom sampling needs samples, a length and a value grid");
  }
  if (!(c >= 0.0)) throw ConfigError("split/merge cost c must be nonnegative");

  MetricAxiomReport report;
  report.seed = seed;
  Rng rng(seed);
  DistanceWorkspace ws;
  auto d = [&](const std::vector<double>& a, const std::vector<double>& b) {
    return msm_distance(a, b, c, ws);
  };

  for (std::size_t n = 0; n < sample_count; ++n) {
    const auto x = random_series(rng, max_len, value_grid);
    const auto y = random_series(rng, max_len, value_grid);
    const auto z = random_series(rng, max_len, value_grid);
    const std::array<const std::vector<double>*, 3> s{&x, &y, &z};
    bool bad = false;

    double dist[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dist[i][j] = d(*s[i], *s[j]);

    for (int i = 0; i < 3; ++i) {
      if (dist[i][i] != 0.0) {
        ++report.identity_violations;
        bad = true;
      }
      for (int j = 0; j < 3; ++j) {
        if (dist[i][j] < 0.0) {
          ++report.nonnegativity_violations;
          bad = true;
        }
        if (j > i && std::abs(dist[i][j] - dist[j][i]) > kTolerance) {
          ++report.symmetry_violations;
          bad = true;
        }
        // Distinct series must be at positive distance when c > 0.
        if (j > i && c > 0.0 && (*s[i] != *s[j]) && dist[i][j] <= 0.0) {
          ++report.identity_violations;
          bad = true;
        }
        for (int m = 0; m < 3; ++m) {
          if (m == i || m == j || j == i) continue;
          if (dist[i][j] > dist[i][m] + dist[m][j] + kTolerance) {
            ++report.triangle_violations;
            bad = true;
          }
        }
      }
    }
    ++report.samples;
    if (bad && !report.counterexample) report.counterexample = std::array{x, y, z};
  }
  return report;
}

}  // namespace msmmean::oracle
