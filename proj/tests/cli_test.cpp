#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "msm_mean/cli.hpp"
#include "test_support.hpp"

using namespace msmmean;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("msm_mean_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

double cost_of(const std::string& text_output) {
  return std::stod(first_line(text_output).substr(std::string("cost: ").size()));
}

}  // namespace

TEST(CliDistance, Examples) {
  EXPECT_EQ(run({"distance", "--c", "0.1", "--x", "4,5,5,10", "--y", "10,7,8"}).out, "8.3\n");
  EXPECT_EQ(run({"distance", "--c", "1", "--x", "5", "--y", "5"}).out, "0\n");
  EXPECT_EQ(run({"distance", "--c", "0.5", "--x", "1,2", "--y", "1"}).out, "1.5\n");
}

TEST(CliDistance, FilesAndJson) {
  const auto x = temp_file("x.txt", "4\n5\n5\n10\n");
  const auto r = run({"distance", "--c", "0.1", "--x-file", x, "--y", "10,7,8", "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"distance\":8.29999"), std::string::npos) << r.out;
}

TEST(CliDistance, BadInput) {
  EXPECT_EQ(run({"distance", "--c", "0.1", "--x", "1,a", "--y", "1"}).code, cli::kInvalidInput);
  EXPECT_EQ(run({"distance", "--x", "1", "--y", "1"}).code, cli::kInvalidInput);
  EXPECT_EQ(run({"distance", "--c", "0.1", "--x", "1"}).code, cli::kInvalidInput);
  EXPECT_EQ(run({"distance", "--bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
}

TEST(CliMean, TwoPairFromFiles) {
  const auto a = temp_file("a.txt", "0,0\n");
  const auto b = temp_file("b.txt", "0,2\n");
  const auto r = run({"mean", "--c", "0.5", "--series", a + "," + b});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(cost_of(r.out), 2.0);
}

TEST(CliMean, SingleSeriesIsItsOwnMean) {
  const auto a = temp_file("single.txt", "3,1,4,1,5\n");
  const auto r = run({"mean", "--c", "0.1", "--series", a, "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"cost\":0.0"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"mean\":[3.0,1.0,4.0,1.0,5.0]"), std::string::npos) << r.out;
}

TEST(CliMean, SampledRunsAreDeterministic) {
  const std::vector<std::string> args{"mean", "--ucr", test_support::italy_power_demand().string(),
                                      "--k", "3", "--n", "12", "--seed", "7", "--c", "0.1", "--json"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0) << a.err;
  const std::regex timing("\"wall_time_s\":[^,}]*");
  EXPECT_EQ(std::regex_replace(a.out, timing, ""), std::regex_replace(b.out, timing, ""));
  EXPECT_NE(a.out.find("\"mean\":["), std::string::npos);
}

TEST(CliMean, ResolvesDatasetByName) {
  const auto r = run({"mean", "--ucr", "ItalyPowerDemand_TRAIN", "--k", "2", "--n", "8", "--seed", "1",
                      "--c", "0.1", "--class-mode", "mixed"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_GT(cost_of(r.out), 0.0);
}

TEST(CliMean, MaxLengthDefaultsToN) {
  const std::string data = test_support::italy_power_demand().string();
  const auto r = run({"mean", "--ucr", data, "--k", "2", "--n", "6", "--c", "0.1", "--json"});
  EXPECT_NE(r.out.find("\"max_length\":6"), std::string::npos) << r.out;
  const auto u = run({"mean", "--ucr", data, "--k", "2", "--n", "6", "--c", "0.1", "--json",
                      "--max-length", "unbounded"});
  EXPECT_NE(u.out.find("\"max_length\":11"), std::string::npos) << u.out;
}

TEST(CliMean, ErrorCodes) {
  const auto a = temp_file("e1.txt", "1,2,3,4\n");
  const auto b = temp_file("e2.txt", "1\n");
  EXPECT_EQ(run({"mean", "--c", "0.1", "--series", a + "," + b, "--window", "1"}).code,
            cli::kInvalidInput);
  EXPECT_EQ(run({"mean", "--c", "0.1", "--series", a + "," + b, "--mem-cap-gib", "1e-15"}).code,
            cli::kMemory);
  EXPECT_EQ(run({"mean", "--c", "0.1"}).code, cli::kInvalidInput);
  EXPECT_EQ(run({"mean", "--c", "0.1", "--series", "/nonexistent/file"}).code, cli::kInvalidInput);
  EXPECT_EQ(run({"mean", "--ucr", "ItalyPowerDemand", "--n", "5"}).code, cli::kInvalidInput);  // no c
}

TEST(CliMean, OutFlagWritesFile) {
  const auto a = temp_file("o.txt", "1,2\n");
  const auto out = (std::filesystem::temp_directory_path() / "msm_mean_cli_result.json").string();
  const auto r = run({"mean", "--c", "0.1", "--series", a, "--json", "--out", out});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(content.find("\"status\":\"ok\""), std::string::npos);
}

TEST(CliSample, PrintsUcr) {
  const auto r = run({"sample", "--ucr", test_support::italy_power_demand().string(), "--k", "3", "--n",
                      "5", "--seed", "2"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 5);
  }
  EXPECT_EQ(count, 3);
}

TEST(CliBench, SweepRowsAndSummary) {
  const auto r = run({"bench", "--ucr", test_support::italy_power_demand().string(), "--k", "3", "--n",
                      "10..11", "--c", "0.1", "--window", "1,2", "--assert-envelope", "--jobs", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "# msm-mean bench csv v1");
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("run_id,", 0), 0u);
  int rows = 0, summaries = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("# summary", 0) == 0) {
      ++summaries;
    } else {
      ++rows;
      EXPECT_NE(line.find(",ok,"), std::string::npos) << line;
    }
  }
  EXPECT_EQ(rows, 2 * 2 * 3);
  EXPECT_EQ(summaries, 2 * 3);
}

TEST(CliBench, TimeoutRowsAndEnvelopeFailure) {
  const auto r = run({"bench", "--ucr", test_support::italy_power_demand().string(), "--k", "3", "--n",
                      "10", "--c", "0.1", "--timeout-s", "1e-9", "--assert-envelope"});
  EXPECT_EQ(r.code, cli::kCheckFailed);
  EXPECT_NE(r.out.find(",timeout,"), std::string::npos);
  EXPECT_EQ(r.out.find(",ok,"), std::string::npos);
  EXPECT_NE(r.err.find("envelope"), std::string::npos);
}

TEST(CliBench, BadSweepIsUsageOrInputError) {
  EXPECT_EQ(run({"bench", "--ucr", "ItalyPowerDemand", "--n", "12..10", "--c", "0.1"}).code,
            cli::kInvalidInput);
  EXPECT_EQ(run({"bench", "--c", "0.1"}).code, cli::kInvalidInput);
  EXPECT_EQ(run({"bench", "--ucr", "ItalyPowerDemand", "--jobs", "0"}).code, cli::kUsage);
}

TEST(CliVerify, DefaultBudgetPasses) {
  const auto r = run({"verify", "--seed", "42"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

TEST(CliVerify, SingleSeriesBudget) {
  EXPECT_EQ(run({"verify", "--max-k", "1", "--instances", "10", "--metric-samples", "20"}).code, 0);
}

TEST(CliVerify, NegativeCostSurfacesAsValidationError) {
  const auto r = run({"verify", "--c=-0.5"});
  EXPECT_EQ(r.code, cli::kInvalidInput);
  EXPECT_NE(r.err.find("nonnegative"), std::string::npos);
}
