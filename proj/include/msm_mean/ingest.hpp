#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msm_mean/core.hpp"

namespace msmmean {

/// A labeled collection of series, typically one UCR training split.
struct Dataset {
  std::string name;
  std::vector<TimeSeries> series;
  /// Recommended split/merge cost for known UCR datasets.
  std::optional<double> default_c;

  /// Distinct labels in sorted order.
  std::vector<std::string> labels() const;
};

/// Recommended c for a UCR dataset. Accepts archive names with or without a
/// _TRAIN/_TEST suffix or extension, ignoring case and punctuation
/// ("Gun_Point", "GunPoint_TRAIN.tsv", "synthetic_control").
std::optional<double> lookup_default_c(std::string_view dataset_name);

/// Parses UCR text: one series per nonempty line, class label first, then
/// the values. Fields are separated by tabs or commas, detected from the
/// first data line (whitespace when neither appears). LF and CRLF endings.
Dataset parse_ucr_text(std::string_view text, std::string name);
Dataset parse_ucr(const std::filesystem::path& path);

/// Parses one unlabeled series: values separated by commas or whitespace.
TimeSeries parse_series_text(std::string_view text);

/// Reads one unlabeled series from a plain text file: values separated by
/// commas, tabs, spaces or newlines.
TimeSeries read_series_file(const std::filesystem::path& path);

/// Writes a dataset back in tab-separated UCR form. Series without a label get "0".
std::string format_ucr(const std::vector<TimeSeries>& series);

enum class ClassMode { one_class, mixed };

std::string_view to_string(ClassMode mode) noexcept;
/// Accepts "one-class"/"one_class" and "mixed"; throws ConfigError otherwise.
ClassMode parse_class_mode(std::string_view text);

/// Sampling protocol: k distinct series, each cut to a random contiguous
/// window of n points.
struct SamplePlan {
  std::size_t k = 3;
  std::size_t n = 10;
  std::uint64_t seed = 0;
  ClassMode class_mode = ClassMode::one_class;
  /// Restricts one-class draws to this label instead of drawing a label.
  std::optional<std::string> label;
};

/// Draws an instance following `plan`, deterministically for fixed inputs.
///
/// Only series with at least n points are eligible. one_class picks a label
/// uniformly among those with >= k eligible series (or uses plan.label) and
/// draws k of its series without replacement. mixed draws k eligible series
/// without replacement and redraws until at least two labels are present
/// (when the eligible pool has two labels at all). Each drawn series gets an
/// independent uniform start offset. Random draws use Rng (mt19937_64).
///
/// Throws ConfigError when no series has n points or too few are eligible.
ProblemInstance sample_instance(const Dataset& dataset, const SamplePlan& plan, double c);

}  // namespace msmmean
