#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "msm_mean/core.hpp"

namespace msmmean {

/// Resource limits checked while filling the table.
struct FillLimits {
  static constexpr double kDefaultMemoryCapBytes = 8.0 * 1024 * 1024 * 1024;

  /// Refuse to allocate tables estimated above this many bytes.
  double memory_cap_bytes = kDefaultMemoryCapBytes;
  /// Abort with TimeoutError once this instant has passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct TableStats {
  std::uint64_t computed = 0;
  std::uint64_t skipped = 0;
};

/// Bytes needed for the dense table: 8 * prod(n_i) * L_max * r.
double estimate_table_bytes(const ProblemInstance& instance, const SolverOptions& options);

/// The dense (k+2)-dimensional table D[p, l, s]. Entry D[p, l, s] is the
/// cheapest way to transform the prefixes x^(i)[1..p_i] into a mean prefix
/// of length l ending in value v_s. Unreachable or windowed-out entries
/// hold +infinity.
///
/// Public indices are 1-based: p_i in [1, n_i], l in [1, L_max], s in [1, r].
class MeanTable {
 public:
  std::span<const std::size_t> lengths() const noexcept { return lengths_; }
  std::size_t max_mean_length() const noexcept { return max_len_; }
  std::size_t value_count() const noexcept { return values_.size(); }
  const ValueSet& values() const noexcept { return values_; }
  /// Options after resolution against the instance.
  const SolverOptions& options() const noexcept { return options_; }
  const TableStats& stats() const noexcept { return stats_; }
  double estimated_bytes() const noexcept { return 8.0 * static_cast<double>(data_.size()); }

  /// D[p, l, s]; +infinity whenever some p_i < 1.
  double at(std::span<const std::size_t> positions, std::size_t length, std::size_t s) const;

  /// True when the position tuple lies inside the configured window (or there is none).
  bool in_window(std::span<const std::size_t> positions) const noexcept;

 private:
  friend MeanTable fill_table(const ProblemInstance&, const SolverOptions&, const FillLimits&);

  MeanTable(std::vector<std::size_t> lengths, std::size_t max_len, ValueSet values,
            SolverOptions options);

  std::size_t flat(std::size_t position_index, std::size_t len0, std::size_t s0) const noexcept {
    return (position_index * max_len_ + len0) * values_.size() + s0;
  }

  std::vector<std::size_t> lengths_;
  std::vector<std::size_t> strides_;
  std::size_t position_count_ = 1;
  std::size_t max_len_;
  ValueSet values_;
  SolverOptions options_;
  TableStats stats_;
  std::vector<double> data_;
};

struct MeanResult {
  TimeSeries mean;
  /// Sum of pairwise distances from the instance to `mean`.
  double cost = 0.0;
  /// Optimal table value. Equals `cost` for exact solves; with a window it is
  /// the best windowed alignment cost, an upper bound on `cost`.
  double table_cost = 0.0;
  std::size_t mean_length = 0;
  std::uint64_t entries_computed = 0;
  std::uint64_t entries_skipped = 0;
  double estimated_bytes = 0.0;
  std::chrono::duration<double> wall_time{0.0};
  SolverOptions options_used;
};

/// Fills the table position tuple by position tuple (last series fastest),
/// then ascending l, then s. Every predecessor of an entry lies at a smaller
/// tuple or at the same tuple with length l - 1.
///
/// Throws ConfigError for invalid options, ResourceError if the estimated
/// table exceeds `limits.memory_cap_bytes` (checked before allocating),
/// TimeoutError past `limits.deadline`.
MeanTable fill_table(const ProblemInstance& instance, const SolverOptions& options,
                     const FillLimits& limits = {});

/// Evaluates the recurrence for D[p, l, s] directly from its predecessors in
/// `table`, without reading the entry itself. Used by traceback and by checks
/// that every stored entry agrees with its definition.
double evaluate_entry(const MeanTable& table, const ProblemInstance& instance,
                      std::span<const std::size_t> positions, std::size_t length, std::size_t s);

/// Walks back from the cheapest final entry and reconstructs a mean.
/// Predecessors are tried merges first (subset bitmask ascending), then
/// move/split steps (s' ascending, move-set bitmask ascending); the first
/// one reproducing the stored value is taken. Throws ConsistencyError when
/// none does.
MeanResult traceback(const MeanTable& table, const ProblemInstance& instance);

/// fill_table followed by traceback.
MeanResult compute_mean(const ProblemInstance& instance, const SolverOptions& options = {},
                        const FillLimits& limits = {});

}  // namespace msmmean
