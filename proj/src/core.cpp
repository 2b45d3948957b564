#include "msm_mean/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "msm_mean/errors.hpp"

namespace msmmean {

TimeSeries::TimeSeries(std::vector<double> points, std::optional<std::string> label)
    : points_(std::move(points)), label_(std::move(label)) {
  if (points_.empty()) throw ConfigError("time series must contain at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i])) {
      throw ConfigError("time series point " + std::to_string(i + 1) + " is not finite");
    }
  }
}

ProblemInstance::ProblemInstance(std::vector<TimeSeries> series, double c)
    : series_(std::move(series)), c_(c) {
  if (series_.empty()) throw ConfigError("instance must contain at least one time series");
  if (!std::isfinite(c_) || c_ < 0.0) {
    throw ConfigError("split/merge cost c must be a nonnegative finite number, got " +
                      std::to_string(c_));
  }
}

std::size_t ProblemInstance::min_length() const noexcept {
  std::size_t n = series_.front().size();
  for (const auto& s : series_) n = std::min(n, s.size());
  return n;
}

std::size_t ProblemInstance::max_length() const noexcept {
  std::size_t n = 0;
  for (const auto& s : series_) n = std::max(n, s.size());
  return n;
}

std::vector<std::size_t> ProblemInstance::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(series_.size());
  for (const auto& s : series_) out.push_back(s.size());
  return out;
}

ValueSet::ValueSet(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!(values_[i - 1] < values_[i])) throw ConfigError("value set must be strictly increasing");
  }
}

std::optional<std::size_t> ValueSet::index_of(double value) const noexcept {
  auto it = std::lower_bound(values_.begin(), values_.end(), value);
  if (it == values_.end() || *it != value) return std::nullopt;
  return static_cast<std::size_t>(it - values_.begin());
}

ValueSet build_value_set(const ProblemInstance& instance) {
  std::vector<double> all;
  for (const auto& s : instance.series()) all.insert(all.end(), s.values().begin(), s.values().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return ValueSet(std::move(all));
}

SolverOptions SolverOptions::resolved(const ProblemInstance& instance) const {
  SolverOptions out = *this;
  const std::size_t bound = instance.mean_length_bound();
  if (max_mean_length) {
    if (*max_mean_length == 0) throw ConfigError("max mean length must be positive");
    out.max_mean_length = std::min(*max_mean_length, bound);
  } else {
    out.max_mean_length = bound;
  }
  if (window) {
    if (*window == 0) throw ConfigError("window must be positive");
    const std::size_t spread = instance.max_length() - instance.min_length();
    if (*window < spread) {
      throw ConfigError("window " + std::to_string(*window) + " is smaller than n_max - n_min = " +
                        std::to_string(spread));
    }
  }
  return out;
}

}  // namespace msmmean
