#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msm_mean/core.hpp"
#include "msm_mean/mean.hpp"

namespace msmmean::bench {

/// Bumped whenever the CSV columns change.
inline constexpr int kCsvSchemaVersion = 1;

/// One solve in a sweep, flat enough to be one CSV row and to re-run the
/// solve from its fields plus the dataset file.
struct RunRecord {
  std::uint64_t run_id = 0;
  std::string dataset;
  std::string dataset_path;
  std::string class_mode;
  std::string class_label;
  std::size_t k = 0;
  std::size_t n = 0;
  std::uint64_t sample_seed = 0;
  double c = 0.0;
  std::vector<std::size_t> lengths;
  std::size_t value_count = 0;

  std::string method = "exact";  // exact | window | buckets
  std::size_t window = 0;        // 0 = none
  std::size_t buckets = 0;       // 0 = none
  std::size_t max_length = 0;    // resolved
  bool allow_empty_move_set = false;

  std::string status = "ok";  // ok | timeout | memory | error
  /// Sum of distances from the original instance to the mean.
  double cost = 0.0;
  /// Optimum of the solved table (windowed, or on the bucketed instance).
  double table_cost = 0.0;
  /// (cost - exact cost) / exact cost for heuristic rows with an exact sibling.
  std::optional<double> relative_error;
  std::size_t mean_length = 0;
  double wall_time_s = 0.0;
  std::uint64_t entries_computed = 0;
  std::uint64_t entries_skipped = 0;
  double estimated_bytes = 0.0;
  std::vector<double> mean;
  std::string message;
  /// Command line that produced the row, if any.
  std::string command;
};

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// "# msm-mean bench csv v1" followed by the column names.
std::string csv_header();
std::string to_csv(const RunRecord& record);
/// Inverse of to_csv. Throws ParseError on a malformed row.
RunRecord parse_csv_row(std::string_view line);

/// Heuristic configurations run next to (or instead of) the exact solve.
struct Heuristic {
  enum class Kind { window, buckets } kind;
  std::size_t parameter;
};

struct SweepSpec {
  std::vector<std::filesystem::path> datasets;
  std::vector<std::size_t> ks{3};
  std::vector<std::size_t> ns{10};
  std::uint64_t seed = 0;
  /// Overrides the per-dataset default c; required for datasets without one.
  std::optional<double> c;
  bool include_exact = true;
  std::vector<Heuristic> heuristics;
  /// nullopt: cap at n, as in the sampling protocol. 0: the (n - 1) k + 1 bound.
  std::optional<std::size_t> max_mean_length;
  bool allow_empty_move_set = false;
  double timeout_s = 600.0;
  double memory_cap_bytes = FillLimits::kDefaultMemoryCapBytes;
  unsigned jobs = 1;
};

/// Runs every (dataset, k, n, class) combination: one one-class sample per
/// class, then the exact solve and each heuristic on it. Runs never throw;
/// failures become records with a non-ok status. `on_record` is invoked in
/// completion order (serialized across jobs); the returned records are
/// sorted by run_id.
std::vector<RunRecord> run_sweep(const SweepSpec& spec,
                                 const std::function<void(const RunRecord&)>& on_record = {});

/// Summary lines ("# summary,...") with run counts and mean/median wall
/// times per (k, n, method) for ok runs.
std::vector<std::string> summarize(const std::vector<RunRecord>& records);

/// Solves one instance with the given configuration and fills the result
/// fields of `record` (status, costs, timings, ...). Shared with the CLI.
void solve_into(RunRecord& record, const ProblemInstance& instance, const SolverOptions& options,
                std::size_t buckets, double timeout_s, double memory_cap_bytes);

/// Re-samples the instance described by `record` from its dataset file and
/// solves it again with the recorded configuration.
RunRecord rerun(const RunRecord& record, double timeout_s = 600.0,
                double memory_cap_bytes = FillLimits::kDefaultMemoryCapBytes);

/// Exact k = 3, n <= 20, |V(X)| <= 60 rows must finish with status ok in
/// at most `limit_s` seconds. Returns one message per offending row.
std::vector<std::string> check_envelope(const std::vector<RunRecord>& records,
                                        double limit_s = 600.0,
                                        double memory_cap_bytes = FillLimits::kDefaultMemoryCapBytes);

}  // namespace msmmean::bench
