#include "msm_mean/cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "msm_mean/bench.hpp"
#include "msm_mean/distance.hpp"
#include "msm_mean/errors.hpp"
#include "msm_mean/ingest.hpp"
#include "msm_mean/verify.hpp"

namespace msmmean::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kGiB = 1024.0 * 1024.0 * 1024.0;

struct Common {
  std::optional<double> c;
  std::uint64_t seed = 0;
  bool json = false;
  bool csv = false;
  unsigned jobs = 1;
  double timeout_s = 600.0;
  double mem_cap_gib = 8.0;
  std::string out;
};

void add_common(CLI::App* app, Common& common) {
  app->add_option("--c", common.c, "split/merge cost");
  app->add_option("--seed", common.seed, "random seed");
  auto* json_flag = app->add_flag("--json", common.json, "emit JSON");
  app->add_flag("--csv", common.csv, "emit CSV")->excludes(json_flag);
  app->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--timeout-s", common.timeout_s, "per-run time limit in seconds")
      ->check(CLI::PositiveNumber);
  app->add_option("--mem-cap-gib", common.mem_cap_gib, "refuse tables estimated above this size")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", common.out, "write results to this file instead of stdout");
}

/// Number text for humans: 12 significant digits, trailing zeros dropped.
std::string human(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

/// "10..12" or "10,11,12" (or a mix).
std::vector<std::size_t> parse_size_list(const std::string& text, const char* flag) {
  std::vector<std::size_t> out;
  std::stringstream stream(text);
  std::string item;
  auto number = [&](const std::string& s) -> std::size_t {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw ConfigError(std::string("bad value '") + s + "' for " + flag);
    return value;
  };
  while (std::getline(stream, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(item));
    } else {
      const std::size_t lo = number(item.substr(0, dots)), hi = number(item.substr(dots + 2));
      if (hi < lo) throw ConfigError(std::string("empty range '") + item + "' for " + flag);
      for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  if (out.empty()) throw ConfigError(std::string("no values for ") + flag);
  return out;
}

/// nullopt for "unbounded", else a positive integer.
std::optional<std::size_t> parse_max_length(const std::string& text) {
  if (text == "unbounded") return std::nullopt;
  const auto values = parse_size_list(text, "--max-length");
  if (values.size() != 1 || values[0] == 0)
    throw ConfigError("--max-length takes a positive integer or 'unbounded'");
  return values[0];
}

fs::path resolve_dataset(const std::string& name) {
  std::vector<fs::path> dirs{fs::path()};
  if (const char* env = std::getenv("MSM_MEAN_DATA_DIR")) dirs.emplace_back(env);
#ifdef MSM_MEAN_DEFAULT_DATA_DIR
  dirs.emplace_back(MSM_MEAN_DEFAULT_DATA_DIR);
#endif
  for (const auto& dir : dirs) {
    for (const char* suffix : {"", ".tsv", ".txt", "_TRAIN.tsv"}) {
      const fs::path candidate = dir / (name + suffix);
      std::error_code ec;
      if (fs::is_regular_file(candidate, ec)) return candidate;
    }
  }
  throw ConfigError("dataset not found: " + name + " (set MSM_MEAN_DATA_DIR to search elsewhere)");
}

std::string echo(const std::vector<std::string>& args) {
  std::string out = "msm-mean";
  for (const auto& a : args) out += " " + a;
  return out;
}

json record_json(const bench::RunRecord& r) {
  json j;
  j["run_id"] = r.run_id;
  j["status"] = r.status;
  j["method"] = r.method;
  j["k"] = r.k;
  j["lengths"] = r.lengths;
  j["value_count"] = r.value_count;
  j["c"] = r.c;
  j["options"] = {{"max_length", r.max_length},
                  {"window", r.window},
                  {"buckets", r.buckets},
                  {"allow_empty_move_set", r.allow_empty_move_set}};
  if (!r.dataset_path.empty()) {
    j["sample"] = {{"dataset", r.dataset},       {"path", r.dataset_path},
                   {"class_mode", r.class_mode}, {"class_label", r.class_label},
                   {"n", r.n},                   {"seed", r.sample_seed}};
  }
  if (r.status == "ok") {
    j["cost"] = r.cost;
    j["table_cost"] = r.table_cost;
    j["mean"] = r.mean;
    j["mean_length"] = r.mean_length;
    j["entries_computed"] = r.entries_computed;
    j["entries_skipped"] = r.entries_skipped;
  }
  if (r.relative_error) j["relative_error"] = *r.relative_error;
  j["wall_time_s"] = r.wall_time_s;
  j["estimated_bytes"] = r.estimated_bytes;
  if (!r.message.empty()) j["message"] = r.message;
  j["command"] = r.command;
  return j;
}

int exit_code_for(const std::string& status) {
  if (status == "ok") return kOk;
  if (status == "memory") return kMemory;
  if (status == "timeout") return kTimeout;
  return kInvalidInput;
}

/// Output stream honoring --out.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_distance(const Common& common, const std::string& x_text, const std::string& y_text,
                 const std::string& x_file, const std::string& y_file, std::ostream& out) {
  if (!common.c) throw ConfigError("--c is required");
  if (x_text.empty() == x_file.empty() || y_text.empty() == y_file.empty())
    throw ConfigError("give each series exactly once, inline (--x/--y) or as a file");
  const TimeSeries x = x_file.empty() ? parse_series_text(x_text) : read_series_file(x_file);
  const TimeSeries y = y_file.empty() ? parse_series_text(y_text) : read_series_file(y_file);
  if (!(*common.c >= 0.0)) throw ConfigError("c must be nonnegative");
  const double d = msm_distance(x, y, *common.c);

  Sink sink(common.out, out);
  if (common.json) {
    *sink << json{{"distance", d}, {"c", *common.c}, {"x_length", x.size()}, {"y_length", y.size()}}
                 .dump()
          << "\n";
  } else if (common.csv) {
    *sink << "distance,c\n" << bench::format_number(d) << "," << bench::format_number(*common.c) << "\n";
  } else {
    *sink << human(d) << "\n";
  }
  return kOk;
}

struct MeanArgs {
  std::vector<std::string> series;
  std::string instance;
  std::string ucr;
  std::size_t k = 3;
  std::size_t n = 10;
  std::string class_mode = "one-class";
  std::string label;
  std::string max_length;
  std::size_t window = 0;
  std::size_t buckets = 0;
  bool allow_empty = false;
};

int cmd_mean(const Common& common, const MeanArgs& args, const std::string& command,
             std::ostream& out, std::ostream& err) {
  const int sources = !args.series.empty() + !args.instance.empty() + !args.ucr.empty();
  if (sources != 1) throw ConfigError("give exactly one of --series, --instance, --ucr");

  bench::RunRecord record;
  record.command = command;
  std::vector<TimeSeries> series;
  std::optional<double> c = common.c;
  std::optional<std::size_t> default_length;

  if (!args.ucr.empty()) {
    const fs::path path = resolve_dataset(args.ucr);
    const Dataset dataset = parse_ucr(path);
    if (!c) c = dataset.default_c;
    if (!c) throw ConfigError("no default c known for " + dataset.name + "; pass --c");
    SamplePlan plan;
    plan.k = args.k;
    plan.n = args.n;
    plan.seed = common.seed;
    plan.class_mode = parse_class_mode(args.class_mode);
    if (!args.label.empty()) plan.label = args.label;
    series = sample_instance(dataset, plan, *c).series();
    record.dataset = dataset.name;
    record.dataset_path = path.string();
    record.class_mode = std::string(to_string(plan.class_mode));
    record.class_label = args.label;
    record.n = args.n;
    record.sample_seed = common.seed;
    default_length = args.n;
  } else if (!args.instance.empty()) {
    Dataset dataset = parse_ucr(args.instance);
    if (!c) c = dataset.default_c;
    series = std::move(dataset.series);
  } else {
    for (const auto& file : args.series) series.push_back(read_series_file(file));
  }
  if (!c) throw ConfigError("--c is required");

  const ProblemInstance instance(std::move(series), *c);
  SolverOptions options;
  options.max_mean_length = default_length ? default_length : instance.max_length();
  if (!args.max_length.empty()) options.max_mean_length = parse_max_length(args.max_length);
  if (args.window) options.window = args.window;
  options.allow_empty_move_set = args.allow_empty;

  bench::solve_into(record, instance, options, args.buckets, common.timeout_s,
                    common.mem_cap_gib * kGiB);
  const int code = exit_code_for(record.status);
  if (code != kOk) err << "error: " << record.message << "\n";

  Sink sink(common.out, out);
  if (common.json) {
    *sink << record_json(record).dump() << "\n";
  } else if (common.csv) {
    *sink << bench::csv_header() << "\n" << bench::to_csv(record) << "\n";
  } else if (code == kOk) {
    std::string mean;
    for (std::size_t i = 0; i < record.mean.size(); ++i) mean += (i ? "," : "") + human(record.mean[i]);
    *sink << "cost: " << human(record.cost) << "\n"
          << "mean: " << mean << "\n"
          << "mean_length: " << record.mean_length << "\n"
          << "k: " << record.k << "\n"
          << "value_count: " << record.value_count << "\n"
          << "max_length: " << record.max_length << "\n"
          << "entries_computed: " << record.entries_computed << "\n"
          << "entries_skipped: " << record.entries_skipped << "\n"
          << "wall_time_s: " << human(record.wall_time_s) << "\n";
    if (record.method != "exact") *sink << "table_cost: " << human(record.table_cost) << "\n";
  }
  return code;
}

int cmd_sample(const Common& common, const MeanArgs& args, std::ostream& out) {
  if (args.ucr.empty()) throw ConfigError("--ucr is required");
  const Dataset dataset = parse_ucr(resolve_dataset(args.ucr));
  SamplePlan plan;
  plan.k = args.k;
  plan.n = args.n;
  plan.seed = common.seed;
  plan.class_mode = parse_class_mode(args.class_mode);
  if (!args.label.empty()) plan.label = args.label;
  const ProblemInstance instance = sample_instance(dataset, plan, common.c.value_or(0.0));
  Sink sink(common.out, out);
  if (common.json) {
    json j = json::array();
    for (const auto& s : instance.series())
      j.push_back({{"label", s.label().value_or("")}, {"values", s.values()}});
    *sink << j.dump() << "\n";
  } else {
    *sink << format_ucr(instance.series());
  }
  return kOk;
}

struct BenchArgs {
  std::vector<std::string> datasets;
  std::string ks = "3";
  std::string ns = "10";
  std::string windows;
  std::string buckets;
  std::string max_length;
  bool no_exact = false;
  bool allow_empty = false;
  bool assert_envelope = false;
};

int cmd_bench(const Common& common, const BenchArgs& args, const std::string& command,
              std::ostream& out, std::ostream& err) {
  bench::SweepSpec spec;
  if (args.datasets.empty()) throw ConfigError("--ucr is required");
  for (const auto& d : args.datasets) spec.datasets.push_back(resolve_dataset(d));
  spec.ks = parse_size_list(args.ks, "--k");
  spec.ns = parse_size_list(args.ns, "--n");
  spec.seed = common.seed;
  spec.c = common.c;
  spec.include_exact = !args.no_exact;
  if (!args.windows.empty())
    for (std::size_t d : parse_size_list(args.windows, "--window"))
      spec.heuristics.push_back({bench::Heuristic::Kind::window, d});
  if (!args.buckets.empty())
    for (std::size_t v : parse_size_list(args.buckets, "--buckets"))
      spec.heuristics.push_back({bench::Heuristic::Kind::buckets, v});
  if (!args.max_length.empty()) spec.max_mean_length = parse_max_length(args.max_length).value_or(0);
  spec.allow_empty_move_set = args.allow_empty;
  spec.timeout_s = common.timeout_s;
  spec.memory_cap_bytes = common.mem_cap_gib * kGiB;
  spec.jobs = common.jobs;

  Sink sink(common.out, out);
  if (!common.json) *sink << bench::csv_header() << "\n" << std::flush;
  const auto records = bench::run_sweep(spec, [&](const bench::RunRecord& r) {
    bench::RunRecord row = r;
    row.command = command;
    if (common.json) {
      *sink << record_json(row).dump() << "\n";
    } else {
      *sink << bench::to_csv(row) << "\n";
    }
    (*sink).flush();
  });
  if (!common.json)
    for (const auto& line : bench::summarize(records)) *sink << line << "\n";

  if (args.assert_envelope) {
    const auto problems = bench::check_envelope(records, common.timeout_s, spec.memory_cap_bytes);
    for (const auto& p : problems) err << "envelope: " << p << "\n";
    if (!problems.empty()) return kCheckFailed;
  }
  return kOk;
}

struct VerifyArgs {
  std::size_t instances = 50;
  std::size_t min_k = 2;
  std::size_t max_k = 3;
  std::size_t max_len = 4;
  std::size_t max_values = 4;
  std::size_t metric_samples = 1000;
  std::vector<double> cs;
};

int cmd_verify(const Common& common, const VerifyArgs& args, bool seed_given, std::ostream& out) {
  VerifyConfig config;
  if (seed_given) config.seed = common.seed;
  config.instances = args.instances;
  config.max_k = args.max_k;
  config.min_k = std::min(args.min_k, args.max_k);
  config.max_len = args.max_len;
  config.max_values = args.max_values;
  config.metric_samples = args.metric_samples;
  if (!args.cs.empty()) config.cs = args.cs;
  if (common.c) config.cs = {*common.c};
  config.oracle_workers = common.jobs;

  const VerifyReport report = run_verify(config);
  Sink sink(common.out, out);
  if (common.json) {
    json checks = json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"cases", c.cases},
                        {"detail", c.detail},
                        {"counterexamples", c.counterexamples}});
    }
    *sink << json{{"seed", config.seed}, {"passed", report.passed()}, {"checks", checks}}.dump()
          << "\n";
  } else {
    for (const auto& c : report.checks) {
      *sink << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
      for (const auto& x : c.counterexamples) *sink << "  counterexample: " << x << "\n";
    }
    *sink << (report.passed() ? "all checks passed" : "verification FAILED") << " (seed "
          << config.seed << ")\n";
  }
  return report.passed() ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and heuristic means of time series under the Move-Split-Merge metric",
               "msm-mean"};
  app.require_subcommand(1);

  Common common;

  auto* distance = app.add_subcommand("distance", "MSM distance between two series");
  std::string x_text, y_text, x_file, y_file;
  add_common(distance, common);
  distance->add_option("--x", x_text, "first series, comma-separated");
  distance->add_option("--y", y_text, "second series, comma-separated");
  distance->add_option("--x-file", x_file, "first series from a file");
  distance->add_option("--y-file", y_file, "second series from a file");

  MeanArgs mean_args;
  auto add_sample_flags = [&](CLI::App* sub) {
    sub->add_option("--ucr", mean_args.ucr, "UCR dataset file or name to sample from");
    sub->add_option("--k", mean_args.k, "series per sample")->check(CLI::PositiveNumber);
    sub->add_option("--n", mean_args.n, "sampled subsequence length")->check(CLI::PositiveNumber);
    sub->add_option("--class-mode", mean_args.class_mode, "one-class or mixed");
    sub->add_option("--label", mean_args.label, "restrict one-class samples to this label");
  };

  auto* mean = app.add_subcommand("mean", "mean of a set of series");
  add_common(mean, common);
  mean->add_option("--series", mean_args.series, "one file per series")->delimiter(',');
  mean->add_option("--instance", mean_args.instance, "UCR-format file; all its series form the instance");
  add_sample_flags(mean);
  mean->add_option("--max-length", mean_args.max_length,
                   "longest mean considered, or 'unbounded' (default: n, or n_max for files)");
  mean->add_option("--window", mean_args.window, "window heuristic width")->check(CLI::PositiveNumber);
  mean->add_option("--buckets", mean_args.buckets, "discretization heuristic bucket count")
      ->check(CLI::PositiveNumber);
  mean->add_flag("--allow-empty-move-set", mean_args.allow_empty, "also allow all-split steps");

  auto* sample = app.add_subcommand("sample", "print a sampled instance in UCR format");
  add_common(sample, common);
  add_sample_flags(sample);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "timing and quality sweep, one CSV row per run");
  add_common(bench_cmd, common);
  bench_cmd->add_option("--ucr", bench_args.datasets, "UCR dataset files or names")->delimiter(',');
  bench_cmd->add_option("--k", bench_args.ks, "k values, e.g. 3,4,5 or 3..5");
  bench_cmd->add_option("--n", bench_args.ns, "n values, e.g. 10..12");
  bench_cmd->add_option("--window", bench_args.windows, "window widths to run besides exact");
  bench_cmd->add_option("--buckets", bench_args.buckets, "bucket counts to run besides exact");
  bench_cmd->add_option("--max-length", bench_args.max_length, "mean length cap (default n) or 'unbounded'");
  bench_cmd->add_flag("--no-exact", bench_args.no_exact, "skip the exact solve");
  bench_cmd->add_flag("--allow-empty-move-set", bench_args.allow_empty, "also allow all-split steps");
  bench_cmd->add_flag("--assert-envelope", bench_args.assert_envelope,
                      "fail unless exact k=3, n<=20 runs finish within the limits");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "property and oracle checks on random instances");
  add_common(verify, common);
  verify->add_option("--instances", verify_args.instances, "random instances");
  verify->add_option("--min-k", verify_args.min_k)->check(CLI::PositiveNumber);
  verify->add_option("--max-k", verify_args.max_k)->check(CLI::PositiveNumber);
  verify->add_option("--max-len", verify_args.max_len)->check(CLI::PositiveNumber);
  verify->add_option("--max-values", verify_args.max_values)->check(CLI::PositiveNumber);
  verify->add_option("--metric-samples", verify_args.metric_samples);
  verify->add_option("--cs", verify_args.cs, "costs to cycle through")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::string command = echo(args);
  try {
    if (*distance) return cmd_distance(common, x_text, y_text, x_file, y_file, out);
    if (*mean) return cmd_mean(common, mean_args, command, out, err);
    if (*sample) return cmd_sample(common, mean_args, out);
    if (*bench_cmd) return cmd_bench(common, bench_args, command, out, err);
    if (*verify) return cmd_verify(common, verify_args, verify->count("--seed") > 0, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kMemory;
  } catch (const TimeoutError& e) {
    err << "error: " << e.what() << "\n";
    return kTimeout;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace msmmean::cli
