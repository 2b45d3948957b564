#include "msm_mean/mean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "msm_mean/distance.hpp"
#include "msm_mean/errors.hpp"

namespace msmmean {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxSeries = 20;
constexpr std::size_t kDeadlineCheckInterval = 64;

// Tolerance used when matching a recomputed predecessor against a stored
// entry. The fill and the direct recurrence sum in different orders.
double match_tolerance(double stored) { return 1e-12 * std::max(1.0, std::abs(stored)); }

// Subsets of [k] as bitmasks, generated once per solve.
struct SubsetList {
  std::vector<std::uint32_t> masks;

  SubsetList(std::size_t k, bool include_empty) {
    const std::uint32_t full = (1u << k) - 1;
    for (std::uint32_t mask = include_empty ? 0u : 1u; mask <= full; ++mask) masks.push_back(mask);
  }
};

void check_series_count(const ProblemInstance& instance) {
  if (instance.k() > kMaxSeries) {
    throw ConfigError("exact mean supports at most " + std::to_string(kMaxSeries) +
                      " series, got " + std::to_string(instance.k()));
  }
}

}  // namespace

double estimate_table_bytes(const ProblemInstance& instance, const SolverOptions& options) {
  const SolverOptions resolved = options.resolved(instance);
  double entries = static_cast<double>(*resolved.max_mean_length) *
                   static_cast<double>(build_value_set(instance).size());
  for (const auto& s : instance.series()) entries *= static_cast<double>(s.size());
  return 8.0 * entries;
}

MeanTable::MeanTable(std::vector<std::size_t> lengths, std::size_t max_len, ValueSet values,
                     SolverOptions options)
    : lengths_(std::move(lengths)),
      strides_(lengths_.size()),
      max_len_(max_len),
      values_(std::move(values)),
      options_(std::move(options)) {
  for (std::size_t i = lengths_.size(); i-- > 0;) {
    strides_[i] = position_count_;
    position_count_ *= lengths_[i];
  }
}

bool MeanTable::in_window(std::span<const std::size_t> positions) const noexcept {
  if (!options_.window) return true;
  const auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
  return *hi - *lo <= *options_.window;
}

double MeanTable::at(std::span<const std::size_t> positions, std::size_t length,
                     std::size_t s) const {
  if (positions.size() != lengths_.size()) throw ConfigError("position tuple has wrong arity");
  if (length < 1 || length > max_len_ || s < 1 || s > values_.size()) {
    throw ConfigError("table index out of range");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] < 1) return kInf;
    if (positions[i] > lengths_[i]) throw ConfigError("table position out of range");
    index += (positions[i] - 1) * strides_[i];
  }
  return data_[flat(index, length - 1, s - 1)];
}

MeanTable fill_table(const ProblemInstance& instance, const SolverOptions& options,
                     const FillLimits& limits) {
  check_series_count(instance);
  const SolverOptions resolved = options.resolved(instance);
  const double bytes = estimate_table_bytes(instance, resolved);
  if (bytes > limits.memory_cap_bytes) {
    throw ResourceError("estimated table size " + std::to_string(bytes) +
                            " bytes exceeds the memory cap of " +
                            std::to_string(limits.memory_cap_bytes) + " bytes",
                        bytes, limits.memory_cap_bytes);
  }

  const std::size_t k = instance.k();
  MeanTable table(instance.lengths(), *resolved.max_mean_length, build_value_set(instance), resolved);
  const std::size_t L = table.max_len_;
  const std::size_t r = table.values_.size();
  const std::size_t positions = table.position_count_;
  const double c = instance.c();
  const std::span<const double> v = table.values_.values();
  const auto& lengths = table.lengths_;
  const auto& strides = table.strides_;

  table.data_.assign(positions * L * r, kInf);
  std::vector<double> row_min(positions * L, kInf);
  auto& D = table.data_;

  // Per-series lookups: value index of each point, move costs |x_t - v_s|,
  // and merge costs C(x_t, x_{t-1}, v_s).
  std::vector<std::vector<std::size_t>> value_index(k);
  std::vector<std::vector<double>> move_cost(k), merge_cost(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& x = instance[i];
    value_index[i].resize(x.size());
    move_cost[i].resize(x.size() * r);
    merge_cost[i].assign(x.size() * r, kInf);
    for (std::size_t t = 0; t < x.size(); ++t) {
      value_index[i][t] = *table.values_.index_of(x[t]);
      for (std::size_t s = 0; s < r; ++s) {
        move_cost[i][t * r + s] = std::abs(x[t] - v[s]);
        if (t > 0) merge_cost[i][t * r + s] = split_merge_cost(x[t], x[t - 1], v[s], c);
      }
    }
  }

  const SubsetList move_sets(k, resolved.allow_empty_move_set);
  const SubsetList merge_sets(k, false);
  const std::uint32_t full = (1u << k) - 1;
  const std::size_t subset_count = std::size_t{1} << k;

  std::vector<std::size_t> offset(subset_count, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctz(mask));
    offset[mask] = offset[mask & (mask - 1)] + strides[low];
  }

  // Subset sums of move and merge costs for the current position tuple,
  // built incrementally over bitmasks: sum[mask] = sum[mask - lowbit] + term(lowbit).
  std::vector<double> move_sum(subset_count * r, 0.0);
  std::vector<double> merge_sum(subset_count * r, 0.0);
  std::vector<double> left(r), right(r);

  // Move/split steps usable from the current position tuple.
  struct Step {
    std::uint32_t mask;
    std::size_t prev_index;
    std::vector<std::size_t> anchors;  // sorted value indices of the splitting series
  };
  std::vector<Step> steps;
  std::vector<std::pair<std::uint32_t, std::size_t>> merges;  // (mask, prev_index)

  std::vector<std::size_t> p(k, 0);  // 0-based positions
  const auto window_excludes = [&] {
    if (!resolved.window) return false;
    const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
    return *hi - *lo > *resolved.window;
  };

  // Positions outermost, then l, then s. Every predecessor is either at a
  // componentwise-smaller position tuple (moves, merges) or at the same
  // tuple with l - 1 (all-split steps), so both are already final.
  for (std::size_t P = 0; P < positions; ++P) {
    if (P > 0) {
      for (std::size_t i = k; i-- > 0;) {
        if (++p[i] < lengths[i]) break;
        p[i] = 0;
      }
    }
    if (limits.deadline && P % kDeadlineCheckInterval == 0 &&
        std::chrono::steady_clock::now() > *limits.deadline) {
      throw TimeoutError("mean computation exceeded its deadline");
    }
    if (window_excludes()) {
      table.stats_.skipped += L * r;
      continue;
    }
    table.stats_.computed += L * r;

    std::uint32_t at_start = 0;  // series sitting at their first point
    for (std::size_t i = 0; i < k; ++i)
      if (p[i] == 0) at_start |= 1u << i;

    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      const std::size_t low = static_cast<std::size_t>(__builtin_ctz(mask));
      const double* term = &move_cost[low][p[low] * r];
      const double* base = &move_sum[(mask & (mask - 1)) * r];
      double* out = &move_sum[mask * r];
      for (std::size_t s = 0; s < r; ++s) out[s] = base[s] + term[s];
    }

    steps.clear();
    for (const std::uint32_t mask : move_sets.masks) {
      if (mask & at_start) continue;
      Step step{mask, P - offset[mask], {}};
      for (std::size_t i = 0; i < k; ++i)
        if (!(mask & (1u << i))) step.anchors.push_back(value_index[i][p[i]]);
      std::sort(step.anchors.begin(), step.anchors.end());
      steps.push_back(std::move(step));
    }

    merges.clear();
    for (const std::uint32_t mask : merge_sets.masks) {
      if (mask & at_start) continue;
      const std::size_t low = static_cast<std::size_t>(__builtin_ctz(mask));
      const double* term = &merge_cost[low][p[low] * r];
      const double* base = &merge_sum[(mask & (mask - 1)) * r];
      double* sum = &merge_sum[mask * r];
      for (std::size_t s = 0; s < r; ++s) sum[s] = base[s] + term[s];
      merges.emplace_back(mask, P - offset[mask]);
    }

    for (std::size_t len0 = 0; len0 < L; ++len0) {
      double* row = &D[table.flat(P, len0, 0)];

      if (len0 == 0 && P == 0) {
        for (std::size_t s = 0; s < r; ++s) {
          double total = 0.0;
          for (std::size_t i = 0; i < k; ++i) total += move_cost[i][s];
          row[s] = total;
        }
      }

      if (len0 > 0) {
        for (const Step& step : steps) {
          const double prev_min = row_min[step.prev_index * L + len0 - 1];
          if (prev_min == kInf) continue;
          const double* prev = &D[table.flat(step.prev_index, len0 - 1, 0)];
          const double* moves = &move_sum[step.mask * r];
          const auto& anchors = step.anchors;
          const std::size_t a = anchors.size();

          if (a == 0) {
            for (std::size_t s = 0; s < r; ++s) row[s] = std::min(row[s], moves[s] + prev_min);
            continue;
          }

          // A split series with anchor value u charges, for mean values
          // v_s (new) and w = v_{s'} (previous):
          //   u < v_s:  c + v_s - max(w, u)  for w <= v_s, c otherwise
          //   u > v_s:  c + min(w, u) - v_s  for w >= v_s, c otherwise
          // The best previous value is found by a prefix scan (w <= v_s) and
          // a suffix scan (w >= v_s). An anchor changes sides exactly when the
          // scan passes it, at which point every scanned w lies on one side
          // of it, so the running minimum shifts by its value.
          {
            std::size_t active = 0;
            double best = kInf;
            for (std::size_t s = 0; s < r; ++s) {
              while (active < a && anchors[active] < s) best -= v[anchors[active++]];
              const double scaled = static_cast<double>(active) * v[s];
              best = std::min(best, prev[s] - scaled);
              left[s] = best + scaled;
            }
          }
          {
            std::size_t active = 0;  // anchors[a - active, a) lie above s
            double best = kInf;
            for (std::size_t s = r; s-- > 0;) {
              while (active < a && anchors[a - 1 - active] > s) best += v[anchors[a - 1 - active++]];
              const double scaled = static_cast<double>(active) * v[s];
              best = std::min(best, prev[s] + scaled);
              right[s] = best - scaled;
            }
          }
          const double split_base = c * static_cast<double>(a);
          for (std::size_t s = 0; s < r; ++s) {
            const double value = moves[s] + split_base + std::min(left[s], right[s]);
            row[s] = std::min(row[s], value);
          }
        }
      }

      for (const auto& [mask, prev_index] : merges) {
        if (row_min[prev_index * L + len0] == kInf) continue;
        const double* prev = &D[table.flat(prev_index, len0, 0)];
        const double* sum = &merge_sum[mask * r];
        for (std::size_t s = 0; s < r; ++s) row[s] = std::min(row[s], prev[s] + sum[s]);
      }

      row_min[P * L + len0] = *std::min_element(row, row + r);
    }
  }
  return table;
}

double evaluate_entry(const MeanTable& table, const ProblemInstance& instance,
                      std::span<const std::size_t> positions, std::size_t length, std::size_t s) {
  const std::size_t k = instance.k();
  if (positions.size() != k) throw ConfigError("position tuple has wrong arity");
  if (!table.in_window(positions)) return kInf;
  const double c = instance.c();
  const auto v = table.values().values();
  const double vs = v[s - 1];

  const bool at_origin =
      std::all_of(positions.begin(), positions.end(), [](std::size_t q) { return q == 1; });
  double best = kInf;
  if (length == 1 && at_origin) {
    best = 0.0;
    for (std::size_t i = 0; i < k; ++i) best += std::abs(instance[i][0] - vs);
    return best;
  }

  std::vector<std::size_t> q(positions.begin(), positions.end());
  const std::uint32_t full = (1u << k) - 1;

  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    bool feasible = true;
    double extra = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask & (1u << i))) continue;
      if (positions[i] < 2) {
        feasible = false;
        break;
      }
      const auto& x = instance[i];
      extra += split_merge_cost(x[positions[i] - 1], x[positions[i] - 2], vs, c);
      q[i] = positions[i] - 1;
    }
    if (feasible) best = std::min(best, table.at(q, length, s) + extra);
    std::copy(positions.begin(), positions.end(), q.begin());
  }

  if (length >= 2) {
    const std::uint32_t first = table.options().allow_empty_move_set ? 0u : 1u;
    for (std::size_t s_prev = 1; s_prev <= table.value_count(); ++s_prev) {
      const double w = v[s_prev - 1];
      for (std::uint32_t mask = first; mask <= full; ++mask) {
        double extra = 0.0;
        bool feasible = true;
        for (std::size_t i = 0; i < k; ++i) {
          const double x = instance[i][positions[i] - 1];
          if (mask & (1u << i)) {
            if (positions[i] < 2) {
              feasible = false;
              break;
            }
            extra += std::abs(x - vs);
            q[i] = positions[i] - 1;
          } else {
            extra += split_merge_cost(vs, x, w, c);
          }
        }
        if (feasible) best = std::min(best, table.at(q, length - 1, s_prev) + extra);
        std::copy(positions.begin(), positions.end(), q.begin());
      }
    }
  }
  return best;
}

MeanResult traceback(const MeanTable& table, const ProblemInstance& instance) {
  const std::size_t k = instance.k();
  const std::size_t L = table.max_mean_length();
  const std::size_t r = table.value_count();
  const auto v = table.values().values();
  const double c = instance.c();
  if (table.lengths().size() != k ||
      !std::equal(table.lengths().begin(), table.lengths().end(), instance.lengths().begin())) {
    throw ConfigError("table was filled for a different instance");
  }

  std::vector<std::size_t> p(table.lengths().begin(), table.lengths().end());
  std::size_t length = 0, s = 0;
  double cost = kInf;
  for (std::size_t l = 1; l <= L; ++l) {
    for (std::size_t j = 1; j <= r; ++j) {
      const double value = table.at(p, l, j);
      if (value < cost) {
        cost = value;
        length = l;
        s = j;
      }
    }
  }
  if (cost == kInf) throw ConsistencyError("no finite final entry in the table");

  std::vector<double> mean(length);
  mean[length - 1] = v[s - 1];
  const std::uint32_t full = (1u << k) - 1;
  const std::uint32_t first_move_set = table.options().allow_empty_move_set ? 0u : 1u;
  std::vector<std::size_t> q(k);

  auto origin = [&] { return std::all_of(p.begin(), p.end(), [](std::size_t x) { return x == 1; }); };

  while (!(length == 1 && origin())) {
    const double target = table.at(p, length, s);
    const double tol = match_tolerance(target);
    bool found = false;

    for (std::uint32_t mask = 1; mask <= full && !found; ++mask) {
      double extra = 0.0;
      bool feasible = true;
      for (std::size_t i = 0; i < k; ++i) {
        q[i] = p[i];
        if (!(mask & (1u << i))) continue;
        if (p[i] < 2) {
          feasible = false;
          break;
        }
        const auto& x = instance[i];
        extra += split_merge_cost(x[p[i] - 1], x[p[i] - 2], v[s - 1], c);
        q[i] = p[i] - 1;
      }
      if (!feasible) continue;
      const double value = table.at(q, length, s) + extra;
      if (std::abs(value - target) <= tol) {
        p = q;
        found = true;
      }
    }

    for (std::size_t s_prev = 1; s_prev <= r && !found && length >= 2; ++s_prev) {
      for (std::uint32_t mask = first_move_set; mask <= full && !found; ++mask) {
        double extra = 0.0;
        bool feasible = true;
        for (std::size_t i = 0; i < k; ++i) {
          q[i] = p[i];
          const double x = instance[i][p[i] - 1];
          if (mask & (1u << i)) {
            if (p[i] < 2) {
              feasible = false;
              break;
            }
            extra += std::abs(x - v[s - 1]);
            q[i] = p[i] - 1;
          } else {
            extra += split_merge_cost(v[s - 1], x, v[s_prev - 1], c);
          }
        }
        if (!feasible) continue;
        const double value = table.at(q, length - 1, s_prev) + extra;
        if (std::abs(value - target) <= tol) {
          p = q;
          --length;
          s = s_prev;
          mean[length - 1] = v[s - 1];
          found = true;
        }
      }
    }

    if (!found) {
      throw ConsistencyError("traceback found no predecessor reproducing entry value " +
                             std::to_string(target));
    }
  }

  const std::size_t mean_length = mean.size();
  // A windowed table only sees windowed alignments; the mean's true
  // distances can be lower.
  TimeSeries mean_series(std::move(mean));
  const double true_cost = table.options().window ? sum_distance(instance, mean_series) : cost;
  return MeanResult{std::move(mean_series),
                    true_cost,
                    cost,
                    mean_length,
                    table.stats().computed,
                    table.stats().skipped,
                    table.estimated_bytes(),
                    std::chrono::duration<double>{0.0},
                    table.options()};
}

MeanResult compute_mean(const ProblemInstance& instance, const SolverOptions& options,
                        const FillLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  const MeanTable table = fill_table(instance, options, limits);
  MeanResult result = traceback(table, instance);
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace msmmean
