#include "msm_mean/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "msm_mean/bench.hpp"
#include "msm_mean/distance.hpp"
#include "msm_mean/errors.hpp"
#include "msm_mean/mean.hpp"
#include "msm_mean/oracle.hpp"
#include "msm_mean/rng.hpp"

namespace msmmean {

namespace {

constexpr double kTolerance = 1e-9;
constexpr std::size_t kMaxCounterexamples = 5;

void fail(CheckResult& check, const std::string& what) {
  check.passed = false;
  if (check.counterexamples.size() < kMaxCounterexamples) check.counterexamples.push_back(what);
}

std::string series_text(std::span<const double> points) {
  std::string out = "(";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) out += ",";
    out += bench::format_number(points[i]);
  }
  return out + ")";
}

void check_structure(CheckResult& check, const ProblemInstance& instance, const MeanResult& r,
                     const std::string& label) {
  ++check.cases;
  const ValueSet values = build_value_set(instance);
  std::string problem;
  for (double m : r.mean.points())
    if (!values.contains(m)) problem = "mean value " + bench::format_number(m) + " not in V(X)";
  if (r.mean_length > instance.mean_length_bound()) problem = "mean longer than (n_max - 1) k + 1";
  const double direct = sum_distance(instance, r.mean);
  if (std::abs(direct - r.cost) > kTolerance) {
    problem = "reported cost " + bench::format_number(r.cost) + " but distances sum to " +
              bench::format_number(direct);
  }
  if (!problem.empty())
    fail(check, label + ": " + problem + " on " + describe(instance) + ", mean " +
                    series_text(r.mean.points()));
}

CheckResult named(std::string name) {
  CheckResult check;
  check.name = std::move(name);
  return check;
}

SolverOptions with_window(std::size_t d) {
  SolverOptions options;
  options.window = d;
  return options;
}

}  // namespace

std::string describe(const ProblemInstance& instance) {
  std::string out = "c=" + bench::format_number(instance.c()) + " X={";
  for (std::size_t i = 0; i < instance.k(); ++i) {
    if (i) out += ",";
    out += series_text(instance[i].points());
  }
  return out + "}";
}

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<ProblemInstance> verification_instances(const VerifyConfig& config) {
  if (config.min_k == 0 || config.max_k < config.min_k)
    throw ConfigError("need 1 <= min_k <= max_k");
  if (config.max_len == 0 || config.max_values == 0)
    throw ConfigError("max_len and max_values must be positive");
  if (config.cs.empty()) throw ConfigError("need at least one c");
  for (double c : config.cs)
    if (!(c >= 0.0) || !std::isfinite(c))
      throw ConfigError("c must be finite and nonnegative, got " + bench::format_number(c));

  std::vector<ProblemInstance> out;
  out.reserve(config.instances);
  for (std::size_t i = 0; i < config.instances; ++i) {
    Rng rng(derive_seed(config.seed, {0x1, i}));
    const std::size_t k = config.min_k + rng.below(config.max_k - config.min_k + 1);
    const std::size_t r = 1 + rng.below(config.max_values);
    std::vector<double> grid;
    while (grid.size() < r) {
      const double x = static_cast<double>(static_cast<int>(rng.below(100)) - 50) / 10.0;
      if (std::find(grid.begin(), grid.end(), x) == grid.end()) grid.push_back(x);
    }
    std::vector<TimeSeries> series;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> points(1 + rng.below(config.max_len));
      for (double& x : points) x = grid[rng.below(r)];
      series.emplace_back(std::move(points));
    }
    out.emplace_back(std::move(series), config.cs[i % config.cs.size()]);
  }
  return out;
}

VerifyReport run_verify(const VerifyConfig& config) {
  const auto instances = verification_instances(config);
  VerifyReport report;

  CheckResult metric = named("metric axioms");
  const std::vector<double> grid{0, 1, 2, 3};
  for (std::size_t ci = 0; ci < config.cs.size(); ++ci) {
    const double c = config.cs[ci];
    const auto m = oracle::check_metric_axioms(config.metric_samples, config.metric_max_len, grid, c,
                                               derive_seed(config.seed, {0x2, ci}));
    metric.cases += m.samples;
    if (!m.passed()) {
      std::ostringstream what;
      what << "c=" << c << ": " << m.total_violations() << " violations";
      if (m.counterexample) {
        what << " e.g. " << series_text((*m.counterexample)[0]) << " "
             << series_text((*m.counterexample)[1]) << " " << series_text((*m.counterexample)[2]);
      }
      fail(metric, what.str());
    }
  }
  metric.detail = std::to_string(metric.cases) + " triples over " +
                  std::to_string(config.cs.size()) + " values of c";

  CheckResult oracle_check = named("oracle equivalence");
  CheckResult structure = named("structure and cost consistency");
  CheckResult empty_moves = named("empty move set equivalence");
  CheckResult window = named("window dominance");
  double enumerated = 0.0;

  SolverOptions relaxed_options;
  relaxed_options.allow_empty_move_set = true;
  for (const auto& instance : instances) {
    const MeanResult exact = compute_mean(instance);
    check_structure(structure, instance, exact, "exact");

    oracle::OracleBudget budget;
    budget.max_k = std::max(budget.max_k, config.max_k);
    budget.max_len = std::max(budget.max_len, config.max_len);
    budget.max_values = std::max(budget.max_values, config.max_values);
    const auto brute = oracle::brute_force_mean(instance, *exact.options_used.max_mean_length, budget,
                                                config.oracle_workers);
    enumerated += brute.candidates;
    ++oracle_check.cases;
    if (std::abs(brute.cost - exact.cost) > kTolerance) {
      fail(oracle_check, describe(instance) + ": dynamic program " + bench::format_number(exact.cost) +
                             ", enumeration " + bench::format_number(brute.cost) + " at " +
                             series_text(brute.mean.points()));
    }

    const MeanResult relaxed = compute_mean(instance, relaxed_options);
    check_structure(structure, instance, relaxed, "relaxed");
    ++empty_moves.cases;
    if (relaxed.cost != exact.cost) {
      fail(empty_moves, describe(instance) + ": restricted " + bench::format_number(exact.cost) +
                            ", unrestricted " + bench::format_number(relaxed.cost));
    }

    const std::size_t n_max = instance.max_length();
    const std::size_t first = std::max<std::size_t>(1, n_max - instance.min_length());
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t d = first; d + 1 <= n_max; ++d) {
      const MeanResult w = compute_mean(instance, with_window(d));
      check_structure(structure, instance, w, "window " + std::to_string(d));
      ++window.cases;
      std::string problem;
      if (w.table_cost > previous + kTolerance) problem = "widening the window raised the optimum";
      if (w.cost < exact.cost - kTolerance) problem = "windowed mean beats the exact mean";
      if (d + 1 == n_max && std::abs(w.table_cost - exact.cost) > kTolerance)
        problem = "window n_max - 1 differs from exact";
      if (!problem.empty())
        fail(window, describe(instance) + ", d=" + std::to_string(d) + ": " + problem);
      previous = w.table_cost;
    }
  }

  oracle_check.detail = std::to_string(oracle_check.cases) + " instances, " +
                        bench::format_number(enumerated) + " candidate means enumerated";
  structure.detail = std::to_string(structure.cases) + " means checked";
  empty_moves.detail = std::to_string(empty_moves.cases) + " instances";
  window.detail = std::to_string(window.cases) + " windowed solves";

  report.checks = {metric, oracle_check, structure, empty_moves, window};
  return report;
}

}  // namespace msmmean
