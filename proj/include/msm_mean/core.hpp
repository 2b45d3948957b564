#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace msmmean {

/// A univariate time series: a nonempty sequence of finite doubles with an
/// optional class label. Immutable once constructed.
class TimeSeries {
 public:
  /// Throws ConfigError when `points` is empty or holds a non-finite value.
  explicit TimeSeries(std::vector<double> points, std::optional<std::string> label = std::nullopt);

  std::span<const double> points() const noexcept { return points_; }
  const std::vector<double>& values() const noexcept { return points_; }
  const std::optional<std::string>& label() const noexcept { return label_; }

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const noexcept { return points_[i]; }

  /// Pointwise equality of the values; labels are ignored.
  friend bool operator==(const TimeSeries& a, const TimeSeries& b) noexcept {
    return a.points_ == b.points_;
  }

 private:
  std::vector<double> points_;
  std::optional<std::string> label_;
};

/// A set X of k >= 1 series together with the split/merge cost c >= 0.
class ProblemInstance {
 public:
  /// Throws ConfigError when `series` is empty or `c` is negative or not finite.
  ProblemInstance(std::vector<TimeSeries> series, double c);

  const std::vector<TimeSeries>& series() const noexcept { return series_; }
  const TimeSeries& operator[](std::size_t i) const noexcept { return series_[i]; }
  std::size_t k() const noexcept { return series_.size(); }
  double c() const noexcept { return c_; }

  std::size_t min_length() const noexcept;
  std::size_t max_length() const noexcept;
  std::vector<std::size_t> lengths() const;

  /// Upper bound (n_max - 1) * k + 1 on the length of any mean.
  std::size_t mean_length_bound() const noexcept { return (max_length() - 1) * k() + 1; }

 private:
  std::vector<TimeSeries> series_;
  double c_;
};

/// The sorted, duplicate-free union of all point values of an instance.
/// Some mean always exists whose points are drawn from this set only.
class ValueSet {
 public:
  /// `values` must be strictly increasing; throws ConfigError otherwise.
  explicit ValueSet(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// 0-based index of `value`, or nullopt if it is not a member (exact match).
  std::optional<std::size_t> index_of(double value) const noexcept;
  bool contains(double value) const noexcept { return index_of(value).has_value(); }

 private:
  std::vector<double> values_;
};

ValueSet build_value_set(const ProblemInstance& instance);

/// Knobs for the exact solver and its window heuristic.
struct SolverOptions {
  /// Longest mean considered; nullopt resolves to the (n_max - 1) k + 1 bound.
  std::optional<std::size_t> max_mean_length;
  /// Maximum spread max_i p_i - min_j p_j of table positions; nullopt disables.
  std::optional<std::size_t> window;
  /// Also allow steps in which every series splits (never needed for optimality).
  bool allow_empty_move_set = false;

  /// Validates against `instance` and fills in max_mean_length.
  /// Throws ConfigError for a zero length, a zero window, or a window below
  /// n_max - n_min. A max_mean_length above the bound is clamped to it.
  SolverOptions resolved(const ProblemInstance& instance) const;
};

}  // namespace msmmean
