#include "msm_mean/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "msm_mean/discretize.hpp"
#include "msm_mean/distance.hpp"
#include "msm_mean/errors.hpp"
#include "msm_mean/ingest.hpp"
#include "msm_mean/rng.hpp"

namespace msmmean::bench {

namespace {

constexpr const char* kColumns[] = {
    "run_id",        "status",       "dataset",          "dataset_path",
    "class_mode",    "class_label",  "k",                "n",
    "sample_seed",   "c",            "lengths",          "value_count",
    "method",        "window",       "buckets",          "max_length",
    "allow_empty_move_set",          "cost",             "table_cost",
    "relative_error", "mean_length", "wall_time_s",      "entries_computed",
    "entries_skipped", "estimated_bytes", "mean",        "message",
    "command"};
constexpr std::size_t kColumnCount = std::size(kColumns);

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_number(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else if (ch != '\r' && ch != '\n') {
      fields.back() += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field");
  return fields;
}

double parse_double(const std::string& text, const char* column) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(std::string("bad number in column ") + column + ": '" + text + "'");
  return value;
}

std::uint64_t parse_uint(const std::string& text, const char* column) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ParseError(std::string("bad integer in column ") + column + ": '" + text + "'");
  return value;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(';', start);
    out.push_back(parse(text.substr(start, end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

struct Task {
  std::size_t dataset_index;
  std::size_t k;
  std::size_t n;
  std::string label;
  std::size_t label_index;
};

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string csv_header() {
  std::string out = "# msm-mean bench csv v" + std::to_string(kCsvSchemaVersion) + "\n";
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  return out;
}

std::string to_csv(const RunRecord& r) {
  const std::vector<std::string> fields{
      std::to_string(r.run_id),
      r.status,
      quote(r.dataset),
      quote(r.dataset_path),
      r.class_mode,
      quote(r.class_label),
      std::to_string(r.k),
      std::to_string(r.n),
      std::to_string(r.sample_seed),
      format_number(r.c),
      join(r.lengths),
      std::to_string(r.value_count),
      r.method,
      std::to_string(r.window),
      std::to_string(r.buckets),
      std::to_string(r.max_length),
      r.allow_empty_move_set ? "1" : "0",
      format_number(r.cost),
      format_number(r.table_cost),
      r.relative_error ? format_number(*r.relative_error) : "",
      std::to_string(r.mean_length),
      format_number(r.wall_time_s),
      std::to_string(r.entries_computed),
      std::to_string(r.entries_skipped),
      format_number(r.estimated_bytes),
      join(r.mean),
      quote(r.message),
      quote(r.command)};
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

RunRecord parse_csv_row(std::string_view line) {
  const auto f = split_fields(line);
  if (f.size() != kColumnCount) {
    throw ParseError("expected " + std::to_string(kColumnCount) + " fields, got " +
                     std::to_string(f.size()));
  }
  auto num = [&](std::size_t i) { return parse_double(f[i], kColumns[i]); };
  auto uint = [&](std::size_t i) { return parse_uint(f[i], kColumns[i]); };

  RunRecord r;
  r.run_id = uint(0);
  r.status = f[1];
  r.dataset = f[2];
  r.dataset_path = f[3];
  r.class_mode = f[4];
  r.class_label = f[5];
  r.k = uint(6);
  r.n = uint(7);
  r.sample_seed = uint(8);
  r.c = num(9);
  r.lengths = parse_list<std::size_t>(f[10], [](const std::string& s) {
    return static_cast<std::size_t>(parse_uint(s, "lengths"));
  });
  r.value_count = uint(11);
  r.method = f[12];
  r.window = uint(13);
  r.buckets = uint(14);
  r.max_length = uint(15);
  r.allow_empty_move_set = f[16] == "1";
  r.cost = num(17);
  r.table_cost = num(18);
  if (!f[19].empty()) r.relative_error = num(19);
  r.mean_length = uint(20);
  r.wall_time_s = num(21);
  r.entries_computed = uint(22);
  r.entries_skipped = uint(23);
  r.estimated_bytes = num(24);
  r.mean = parse_list<double>(f[25], [](const std::string& s) { return parse_double(s, "mean"); });
  r.message = f[26];
  r.command = f[27];
  return r;
}

void solve_into(RunRecord& record, const ProblemInstance& instance, const SolverOptions& options,
                std::size_t buckets, double timeout_s, double memory_cap_bytes) {
  record.k = instance.k();
  record.c = instance.c();
  record.lengths = instance.lengths();
  record.value_count = build_value_set(instance).size();
  record.window = options.window.value_or(0);
  record.buckets = buckets;
  record.allow_empty_move_set = options.allow_empty_move_set;
  record.method = buckets ? "buckets" : options.window ? "window" : "exact";

  const auto start = std::chrono::steady_clock::now();
  FillLimits limits;
  limits.memory_cap_bytes = memory_cap_bytes;
  limits.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(timeout_s));
  try {
    const SolverOptions resolved = options.resolved(instance);
    record.max_length = *resolved.max_mean_length;
    record.estimated_bytes = estimate_table_bytes(instance, resolved);
    auto keep = [&](const MeanResult& result) {
      record.mean_length = result.mean_length;
      record.entries_computed = result.entries_computed;
      record.entries_skipped = result.entries_skipped;
      record.estimated_bytes = result.estimated_bytes;
      record.mean.assign(result.mean.points().begin(), result.mean.points().end());
    };
    if (buckets) {
      const DiscretizedMeanResult d = heuristic_mean_discretized(instance, buckets, resolved, limits);
      record.cost = d.cost_on_original;
      record.table_cost = d.result.cost;
      keep(d.result);
    } else {
      const MeanResult result = compute_mean(instance, resolved, limits);
      record.cost = result.cost;
      record.table_cost = result.table_cost;
      keep(result);
    }
    record.status = "ok";
    record.message.clear();
  } catch (const TimeoutError& e) {
    record.status = "timeout";
    record.message = e.what();
  } catch (const ResourceError& e) {
    record.status = "memory";
    record.estimated_bytes = e.estimated_bytes();
    record.message = e.what();
  } catch (const std::exception& e) {
    record.status = "error";
    record.message = e.what();
  }
  record.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  // The deadline is polled, so a solve can finish a little past it.
  if (record.status == "ok" && record.wall_time_s > timeout_s) {
    record.status = "timeout";
    record.message = "finished after the time limit";
  }
}

RunRecord rerun(const RunRecord& record, double timeout_s, double memory_cap_bytes) {
  if (record.dataset_path.empty()) throw ConfigError("record has no dataset path to re-sample from");
  const Dataset dataset = parse_ucr(record.dataset_path);
  SamplePlan plan;
  plan.k = record.k;
  plan.n = record.n;
  plan.seed = record.sample_seed;
  plan.class_mode = parse_class_mode(record.class_mode);
  if (plan.class_mode == ClassMode::one_class && !record.class_label.empty())
    plan.label = record.class_label;
  const ProblemInstance instance = sample_instance(dataset, plan, record.c);

  SolverOptions options;
  options.max_mean_length = record.max_length;
  if (record.window) options.window = record.window;
  options.allow_empty_move_set = record.allow_empty_move_set;

  RunRecord out = record;
  out.relative_error.reset();
  solve_into(out, instance, options, record.buckets, timeout_s, memory_cap_bytes);
  return out;
}

std::vector<RunRecord> run_sweep(const SweepSpec& spec,
                                 const std::function<void(const RunRecord&)>& on_record) {
  if (spec.datasets.empty()) throw ConfigError("sweep needs at least one dataset");
  if (spec.ks.empty() || spec.ns.empty()) throw ConfigError("sweep needs k and n values");
  if (!spec.include_exact && spec.heuristics.empty())
    throw ConfigError("sweep has neither exact nor heuristic runs");
  if (!(spec.timeout_s > 0.0)) throw ConfigError("timeout must be positive");
  for (const auto& h : spec.heuristics)
    if (h.parameter == 0) throw ConfigError("window and bucket parameters must be positive");

  std::vector<Dataset> datasets;
  std::vector<double> cs;
  for (const auto& path : spec.datasets) {
    Dataset d = parse_ucr(path);
    const auto c = spec.c ? spec.c : d.default_c;
    if (!c) throw ConfigError("no default c known for " + d.name + "; pass --c");
    if (!(*c >= 0.0)) throw ConfigError("c must be nonnegative");
    cs.push_back(*c);
    datasets.push_back(std::move(d));
  }

  std::vector<Task> tasks;
  for (std::size_t di = 0; di < datasets.size(); ++di) {
    const auto labels = datasets[di].labels();
    for (std::size_t k : spec.ks) {
      for (std::size_t n : spec.ns) {
        for (std::size_t li = 0; li < labels.size(); ++li) tasks.push_back({di, k, n, labels[li], li});
      }
    }
  }

  const std::size_t per_task = (spec.include_exact ? 1 : 0) + spec.heuristics.size();
  std::vector<RunRecord> records(tasks.size() * per_task);
  std::mutex emit_mutex;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      const Task& task = tasks[t];
      RunRecord base;
      base.dataset = datasets[task.dataset_index].name;
      base.dataset_path = spec.datasets[task.dataset_index].string();
      base.class_mode = std::string(to_string(ClassMode::one_class));
      base.class_label = task.label;
      base.k = task.k;
      base.n = task.n;
      base.c = cs[task.dataset_index];
      base.sample_seed = derive_seed(spec.seed, {task.dataset_index, task.k, task.n, task.label_index});

      SolverOptions options;
      options.allow_empty_move_set = spec.allow_empty_move_set;
      if (!spec.max_mean_length) {
        options.max_mean_length = task.n;
      } else if (*spec.max_mean_length != 0) {
        options.max_mean_length = *spec.max_mean_length;
      }

      std::optional<ProblemInstance> instance;
      std::string sample_error;
      try {
        SamplePlan plan{task.k, task.n, base.sample_seed, ClassMode::one_class, task.label};
        instance.emplace(sample_instance(datasets[task.dataset_index], plan, base.c));
      } catch (const std::exception& e) {
        sample_error = e.what();
      }

      std::optional<double> exact_cost;
      for (std::size_t j = 0; j < per_task; ++j) {
        RunRecord record = base;
        record.run_id = t * per_task + j;
        SolverOptions run_options = options;
        std::size_t buckets = 0;
        const bool exact = spec.include_exact && j == 0;
        if (!exact) {
          const Heuristic& h = spec.heuristics[j - (spec.include_exact ? 1 : 0)];
          if (h.kind == Heuristic::Kind::window) {
            run_options.window = h.parameter;
          } else {
            buckets = h.parameter;
          }
        }
        if (instance) {
          solve_into(record, *instance, run_options, buckets, spec.timeout_s, spec.memory_cap_bytes);
        } else {
          record.status = "error";
          record.method = exact ? "exact" : buckets ? "buckets" : "window";
          record.window = run_options.window.value_or(0);
          record.buckets = buckets;
          record.message = sample_error;
        }
        if (record.status == "ok") {
          if (exact) {
            exact_cost = record.cost;
          } else if (exact_cost) {
            record.relative_error = relative_error(record.cost, *exact_cost);
          }
        }
        {
          std::lock_guard lock(emit_mutex);
          if (on_record) on_record(record);
        }
        records[record.run_id] = std::move(record);
      }
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(spec.jobs, static_cast<unsigned>(tasks.size())));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(work);
  }
  return records;
}

std::vector<std::string> summarize(const std::vector<RunRecord>& records) {
  struct Group {
    std::size_t runs = 0;
    std::vector<double> times;
  };
  std::map<std::tuple<std::size_t, std::size_t, std::string>, Group> groups;
  for (const auto& r : records) {
    const std::string method =
        r.method == "window" ? "window=" + std::to_string(r.window)
        : r.method == "buckets" ? "buckets=" + std::to_string(r.buckets)
                                : r.method;
    Group& g = groups[{r.k, r.n, method}];
    ++g.runs;
    if (r.status == "ok") g.times.push_back(r.wall_time_s);
  }
  std::vector<std::string> lines;
  for (const auto& [key, g] : groups) {
    const auto& [k, n, method] = key;
    std::ostringstream line;
    line << "# summary,k=" << k << ",n=" << n << ",method=" << method << ",runs=" << g.runs
         << ",ok=" << g.times.size();
    if (!g.times.empty()) {
      double sum = 0.0;
      for (double t : g.times) sum += t;
      line << ",mean_s=" << format_number(sum / static_cast<double>(g.times.size()))
           << ",median_s=" << format_number(median(g.times));
    }
    lines.push_back(line.str());
  }
  return lines;
}

std::vector<std::string> check_envelope(const std::vector<RunRecord>& records, double limit_s,
                                        double memory_cap_bytes) {
  std::vector<std::string> problems;
  for (const auto& r : records) {
    if (r.method != "exact" || r.k != 3 || r.n > 20 || r.value_count > 60) continue;
    std::string why;
    if (r.status != "ok") {
      why = "status " + r.status;
    } else if (r.wall_time_s > limit_s) {
      why = "took " + format_number(r.wall_time_s) + " s";
    } else if (r.estimated_bytes > memory_cap_bytes) {
      why = "needs " + format_number(r.estimated_bytes) + " bytes";
    }
    if (!why.empty()) {
      problems.push_back("run " + std::to_string(r.run_id) + " (" + r.dataset + ", n=" +
                         std::to_string(r.n) + ", class " + r.class_label + "): " + why);
    }
  }
  return problems;
}

}  // namespace msmmean::bench
