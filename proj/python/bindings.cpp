#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>

#include "msm_mean/discretize.hpp"
#include "msm_mean/distance.hpp"
#include "msm_mean/errors.hpp"
#include "msm_mean/ingest.hpp"
#include "msm_mean/mean.hpp"
#include "msm_mean/oracle.hpp"
#include "msm_mean/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace msmmean;

namespace {

struct PyMean {
  std::vector<double> mean;
  double cost;
  double table_cost;
  std::size_t mean_length;
  std::size_t max_length;
  std::uint64_t entries_computed;
  std::uint64_t entries_skipped;
  double estimated_bytes;
  double wall_time_s;
};

ProblemInstance make_instance(const std::vector<std::vector<double>>& series, double c) {
  std::vector<TimeSeries> ts;
  ts.reserve(series.size());
  for (const auto& s : series) ts.emplace_back(s);
  return ProblemInstance(std::move(ts), c);
}

PyMean mean(const std::vector<std::vector<double>>& series, double c,
            std::optional<std::size_t> max_length, std::optional<std::size_t> window,
            std::optional<std::size_t> buckets, bool allow_empty_move_set,
            std::optional<double> timeout_s, double mem_cap_gib) {
  const ProblemInstance instance = make_instance(series, c);
  SolverOptions options;
  options.max_mean_length = max_length;
  options.window = window;
  options.allow_empty_move_set = allow_empty_move_set;
  FillLimits limits;
  limits.memory_cap_bytes = mem_cap_gib * 1024.0 * 1024.0 * 1024.0;
  if (timeout_s) {
    limits.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(*timeout_s));
  }

  py::gil_scoped_release release;
  auto pack = [](const MeanResult& r, double cost, double table_cost) {
    return PyMean{r.mean.values(),     cost,
                  table_cost,          r.mean_length,
                  *r.options_used.max_mean_length, r.entries_computed,
                  r.entries_skipped,   r.estimated_bytes,
                  r.wall_time.count()};
  };
  if (buckets) {
    const auto d = heuristic_mean_discretized(instance, *buckets, options, limits);
    return pack(d.result, d.cost_on_original, d.result.cost);
  }
  const MeanResult r = compute_mean(instance, options, limits);
  return pack(r, r.cost, r.table_cost);
}

}  // namespace

PYBIND11_MODULE(_msm_mean, m) {
  m.doc() = "Exact and heuristic means of time series under the Move-Split-Merge metric.";

  static py::exception<ResourceError> resource_error(m, "ResourceError", PyExc_MemoryError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ResourceError& e) {
      py::set_error(resource_error, e.what());
    } catch (const TimeoutError& e) {
      py::set_error(PyExc_TimeoutError, e.what());
    } catch (const ConfigError& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const ParseError& e) {
      py::set_error(PyExc_ValueError, e.what());
    } catch (const BudgetError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<PyMean>(m, "MeanResult")
      .def_readonly("mean", &PyMean::mean)
      .def_readonly("cost", &PyMean::cost, "sum of distances from the input series to the mean")
      .def_readonly("table_cost", &PyMean::table_cost,
                    "optimum of the solved table (windowed, or on the bucketed series)")
      .def_readonly("mean_length", &PyMean::mean_length)
      .def_readonly("max_length", &PyMean::max_length)
      .def_readonly("entries_computed", &PyMean::entries_computed)
      .def_readonly("entries_skipped", &PyMean::entries_skipped)
      .def_readonly("estimated_bytes", &PyMean::estimated_bytes)
      .def_readonly("wall_time_s", &PyMean::wall_time_s)
      .def("__repr__", [](const PyMean& r) {
        return "MeanResult(cost=" + std::to_string(r.cost) +
               ", mean_length=" + std::to_string(r.mean_length) + ")";
      });

  m.def(
      "distance",
      [](const std::vector<double>& x, const std::vector<double>& y, double c) {
        if (!(c >= 0.0)) throw ConfigError("c must be nonnegative");
        return msm_distance(TimeSeries(x), TimeSeries(y), c);
      },
      "x"_a, "y"_a, "c"_a, "MSM distance between two series.");

  m.def(
      "sum_distance",
      [](const std::vector<std::vector<double>>& series, const std::vector<double>& candidate,
         double c) { return sum_distance(make_instance(series, c), TimeSeries(candidate)); },
      "series"_a, "candidate"_a, "c"_a);

  m.def("mean", &mean, "series"_a, "c"_a, py::kw_only(), "max_length"_a = py::none(),
        "window"_a = py::none(), "buckets"_a = py::none(), "allow_empty_move_set"_a = false,
        "timeout_s"_a = py::none(), "mem_cap_gib"_a = 8.0,
        "Mean of `series`. By default exact, with the length bounded by (n_max - 1) k + 1.");

  m.def(
      "brute_force_mean",
      [](const std::vector<std::vector<double>>& series, double c, std::size_t max_length) {
        const auto r = oracle::brute_force_mean(make_instance(series, c), max_length);
        return py::make_tuple(r.mean.values(), r.cost);
      },
      "series"_a, "c"_a, "max_length"_a,
      "Cheapest series over the input values found by enumeration (tiny inputs only).");

  m.def(
      "sample",
      [](const std::string& path, std::size_t k, std::size_t n, std::uint64_t seed,
         const std::string& class_mode, std::optional<std::string> label) {
        const Dataset dataset = parse_ucr(path);
        SamplePlan plan{k, n, seed, parse_class_mode(class_mode), label};
        const ProblemInstance instance = sample_instance(dataset, plan, 0.0);
        py::list out;
        for (const auto& s : instance.series()) out.append(py::make_tuple(s.label().value_or(""), s.values()));
        return out;
      },
      "path"_a, "k"_a = 3, "n"_a = 10, "seed"_a = 0, "class_mode"_a = "one-class",
      "label"_a = py::none(), "Draws (label, values) pairs from a UCR file.");

  m.def(
      "verify",
      [](std::uint64_t seed, std::size_t instances, std::size_t max_k, std::size_t metric_samples) {
        VerifyConfig config;
        config.seed = seed;
        config.instances = instances;
        config.max_k = max_k;
        config.min_k = std::min(config.min_k, max_k);
        config.metric_samples = metric_samples;
        VerifyReport report;
        {
          py::gil_scoped_release release;
          report = run_verify(config);
        }
        py::list checks;
        for (const auto& c : report.checks) {
          checks.append(py::dict("name"_a = c.name, "passed"_a = c.passed, "cases"_a = c.cases,
                                 "detail"_a = c.detail, "counterexamples"_a = c.counterexamples));
        }
        return py::dict("passed"_a = report.passed(), "checks"_a = checks);
      },
      "seed"_a = 42, "instances"_a = 50, "max_k"_a = 3, "metric_samples"_a = 1000);
}
