#include <gtest/gtest.h>

#include <sstream>

#include "msm_mean/bench.hpp"
#include "msm_mean/errors.hpp"
#include "msm_mean/ingest.hpp"
#include "test_support.hpp"

using namespace msmmean;

namespace {

bench::SweepSpec italy_sweep() {
  bench::SweepSpec spec;
  spec.datasets = {test_support::italy_power_demand()};
  spec.ks = {3};
  spec.ns = {10, 11, 12};
  spec.seed = 5;
  spec.c = 0.1;
  return spec;
}

}  // namespace

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(bench::format_number(0.1), "0.1");
  EXPECT_EQ(bench::format_number(2.0), "2");
  EXPECT_EQ(bench::format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Csv, HeaderIsVersioned) {
  const std::string header = bench::csv_header();
  EXPECT_EQ(header.rfind("# msm-mean bench csv v1\n", 0), 0u);
  EXPECT_NE(header.find("run_id,status,"), std::string::npos);
}

TEST(Csv, RowRoundTrips) {
  bench::RunRecord r;
  r.run_id = 7;
  r.dataset = "toy, with comma";
  r.dataset_path = "/tmp/x.tsv";
  r.class_mode = "one-class";
  r.class_label = "2";
  r.k = 3;
  r.n = 10;
  r.sample_seed = 18446744073709551615ull;
  r.c = 0.1;
  r.lengths = {10, 10, 9};
  r.value_count = 29;
  r.method = "window";
  r.window = 2;
  r.max_length = 10;
  r.cost = 6.485482906999998;
  r.table_cost = 7.0;
  r.relative_error = 0.125;
  r.mean_length = 6;
  r.wall_time_s = 0.0125;
  r.entries_computed = 250000;
  r.entries_skipped = 12;
  r.estimated_bytes = 2e6;
  r.mean = {-0.3, 1.25};
  r.message = "said \"hi\"";
  r.command = "msm-mean bench --ucr x";
  const auto back = bench::parse_csv_row(bench::to_csv(r));
  EXPECT_EQ(bench::to_csv(back), bench::to_csv(r));
  EXPECT_EQ(back.cost, r.cost);
  EXPECT_EQ(back.mean, r.mean);
  EXPECT_EQ(back.dataset, r.dataset);
  EXPECT_EQ(back.message, r.message);
  EXPECT_EQ(back.sample_seed, r.sample_seed);
  EXPECT_THROW(bench::parse_csv_row("1,2,3"), ParseError);
}

TEST(Sweep, OneOkRowPerClassAndLength) {
  const auto records = bench::run_sweep(italy_sweep());
  ASSERT_EQ(records.size(), 3u * 2u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].run_id, i);
    EXPECT_EQ(records[i].status, "ok") << records[i].message;
    EXPECT_EQ(records[i].method, "exact");
    EXPECT_LE(records[i].mean_length, records[i].n);
    EXPECT_EQ(records[i].max_length, records[i].n);
  }
  EXPECT_TRUE(bench::check_envelope(records).empty());
}

TEST(Sweep, ForcedTimeout) {
  auto spec = italy_sweep();
  spec.timeout_s = 1e-9;
  for (const auto& r : bench::run_sweep(spec)) EXPECT_EQ(r.status, "timeout");
}

TEST(Sweep, MemoryCapRecorded) {
  auto spec = italy_sweep();
  spec.memory_cap_bytes = 1024;
  const auto records = bench::run_sweep(spec);
  for (const auto& r : records) {
    EXPECT_EQ(r.status, "memory");
    EXPECT_GT(r.estimated_bytes, 1024);
  }
  EXPECT_EQ(bench::check_envelope(records).size(), records.size());
}

TEST(Sweep, HeuristicRowsCarryRelativeError) {
  auto spec = italy_sweep();
  spec.ns = {10};
  spec.heuristics = {{bench::Heuristic::Kind::window, 1},
                     {bench::Heuristic::Kind::window, 2},
                     {bench::Heuristic::Kind::window, 3},
                     {bench::Heuristic::Kind::buckets, 4}};
  const auto records = bench::run_sweep(spec);
  ASSERT_EQ(records.size(), 2u * 5u);
  for (std::size_t base = 0; base < records.size(); base += 5) {
    const auto& exact = records[base];
    EXPECT_FALSE(exact.relative_error.has_value());
    for (std::size_t j = 1; j < 5; ++j) {
      const auto& h = records[base + j];
      ASSERT_TRUE(h.relative_error.has_value());
      EXPECT_DOUBLE_EQ(*h.relative_error, (h.cost - exact.cost) / exact.cost);
      EXPECT_GE(*h.relative_error, -1e-12);
      EXPECT_EQ(h.sample_seed, exact.sample_seed);
    }
  }
}

TEST(Sweep, JobsDoNotChangeResults) {
  auto spec = italy_sweep();
  const auto serial = bench::run_sweep(spec);
  spec.jobs = 3;
  std::size_t emitted = 0;
  const auto parallel = bench::run_sweep(spec, [&](const bench::RunRecord&) { ++emitted; });
  EXPECT_EQ(emitted, parallel.size());
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].cost, parallel[i].cost);
    EXPECT_EQ(serial[i].mean, parallel[i].mean);
  }
}

TEST(Sweep, RecordedRunsReproduceTheirCost) {
  auto spec = italy_sweep();
  spec.heuristics = {{bench::Heuristic::Kind::window, 2}, {bench::Heuristic::Kind::buckets, 5}};
  for (const auto& r : bench::run_sweep(spec)) {
    const auto parsed = bench::parse_csv_row(bench::to_csv(r));
    const auto again = bench::rerun(parsed);
    EXPECT_EQ(again.status, "ok");
    EXPECT_EQ(again.cost, r.cost);
    EXPECT_EQ(again.mean, r.mean);
  }
}

TEST(Sweep, BadSpecs) {
  auto spec = italy_sweep();
  spec.c.reset();
  EXPECT_THROW(bench::run_sweep(spec), ConfigError);  // no default c for this dataset
  spec = italy_sweep();
  spec.include_exact = false;
  EXPECT_THROW(bench::run_sweep(spec), ConfigError);
  spec = italy_sweep();
  spec.datasets.clear();
  EXPECT_THROW(bench::run_sweep(spec), ConfigError);
}

TEST(Summary, GroupsByKnAndMethod) {
  const auto lines = bench::summarize(bench::run_sweep(italy_sweep()));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0].rfind("# summary,k=3,n=10,method=exact,runs=2,ok=2,mean_s=", 0), 0u);
}
