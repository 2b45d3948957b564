#include "msm_mean/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "msm_mean/errors.hpp"
#include "msm_mean/rng.hpp"

namespace msmmean {
namespace {

std::string normalize_name(std::string_view name) {
  std::string out;
  for (char ch : name) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  for (std::string_view suffix : {"train", "test"}) {
    if (out.size() > suffix.size() && out.ends_with(suffix)) {
      out.resize(out.size() - suffix.size());
      break;
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line, char separator) {
  std::vector<std::string_view> fields;
  if (separator == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    return fields;
  }
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(separator, start);
    fields.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

double parse_value(std::string_view field, std::size_t line_no) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("cannot parse value '" + std::string(field) + "'", line_no);
  }
  if (!std::isfinite(value)) throw ParseError("non-finite value '" + std::string(field) + "'", line_no);
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::vector<std::string> Dataset::labels() const {
  std::set<std::string> distinct;
  for (const auto& s : series)
    if (s.label()) distinct.insert(*s.label());
  return {distinct.begin(), distinct.end()};
}

std::optional<double> lookup_default_c(std::string_view dataset_name) {
  static const std::map<std::string, double> table = {
      {"50words", 1.0},     {"fiftywords", 1.0},   {"adiac", 1.0},     {"beef", 0.1},
      {"cbf", 0.1},         {"coffee", 0.01},      {"ecg", 1.0},       {"ecg200", 1.0},
      {"faceall", 1.0},     {"facefour", 1.0},     {"fish", 0.1},      {"gunpoint", 0.01},
      {"lightning2", 0.01}, {"lightning7", 1.0},   {"oliveoil", 0.01}, {"osuleaf", 0.1},
      {"swedishleaf", 1.0}, {"syntheticcontrol", 0.1}, {"trace", 0.01}, {"twopatterns", 1.0},
      {"wafer", 1.0},       {"yoga", 0.1},
  };
  std::string key = normalize_name(std::filesystem::path(std::string(dataset_name)).stem().string());
  if (auto it = table.find(key); it != table.end()) return it->second;
  key = normalize_name(dataset_name);
  if (auto it = table.find(key); it != table.end()) return it->second;
  return std::nullopt;
}

Dataset parse_ucr_text(std::string_view text, std::string name) {
  Dataset dataset;
  dataset.name = std::move(name);
  dataset.default_c = lookup_default_c(dataset.name);

  std::optional<char> separator;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    if (!separator) {
      separator = line.find('\t') != std::string_view::npos   ? '\t'
                  : line.find(',') != std::string_view::npos ? ','
                                                              : ' ';
    }
    const auto fields = split_fields(trim(line), *separator);
    if (fields.size() < 2) throw ParseError("expected a label followed by at least one value", line_no);
    if (fields[0].empty()) throw ParseError("empty class label", line_no);

    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) values.push_back(parse_value(fields[i], line_no));
    dataset.series.emplace_back(std::move(values), std::string(fields[0]));
  }
  if (dataset.series.empty()) throw ParseError("no series in " + dataset.name);
  return dataset;
}

Dataset parse_ucr(const std::filesystem::path& path) {
  return parse_ucr_text(read_file(path), path.stem().string());
}

TimeSeries parse_series_text(std::string_view text) {
  std::vector<double> values;
  std::size_t line_no = 1, i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') ++line_no;
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    values.push_back(parse_value(text.substr(i, j - i), line_no));
    i = j;
  }
  if (values.empty()) throw ParseError("no values");
  return TimeSeries(std::move(values));
}

TimeSeries read_series_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_series_text(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_ucr(const std::vector<TimeSeries>& series) {
  std::string out;
  char buf[64];
  for (const auto& s : series) {
    out += s.label().value_or("0");
    for (double x : s.points()) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
      out += '\t';
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

std::string_view to_string(ClassMode mode) noexcept {
  return mode == ClassMode::one_class ? "one-class" : "mixed";
}

ClassMode parse_class_mode(std::string_view text) {
  if (text == "one-class" || text == "one_class" || text == "oneclass") return ClassMode::one_class;
  if (text == "mixed") return ClassMode::mixed;
  throw ConfigError("unknown class mode '" + std::string(text) + "' (expected one-class or mixed)");
}

ProblemInstance sample_instance(const Dataset& dataset, const SamplePlan& plan, double c) {
  if (plan.k == 0 || plan.n == 0) throw ConfigError("sample plan needs k >= 1 and n >= 1");

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < dataset.series.size(); ++i)
    if (dataset.series[i].size() >= plan.n) eligible.push_back(i);
  if (eligible.empty()) {
    throw ConfigError("n = " + std::to_string(plan.n) + " exceeds every series length in " +
                      dataset.name);
  }
  auto label_of = [&](std::size_t i) { return dataset.series[i].label().value_or(""); };

  Rng rng(plan.seed);
  std::vector<std::size_t> pool;

  if (plan.class_mode == ClassMode::one_class) {
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i : eligible) by_label[label_of(i)].push_back(i);
    if (plan.label) {
      auto it = by_label.find(*plan.label);
      if (it == by_label.end() || it->second.size() < plan.k) {
        throw ConfigError("label '" + *plan.label + "' has fewer than " + std::to_string(plan.k) +
                          " series of length >= " + std::to_string(plan.n));
      }
      pool = it->second;
    } else {
      std::vector<const std::vector<std::size_t>*> candidates;
      for (const auto& [label, members] : by_label)
        if (members.size() >= plan.k) candidates.push_back(&members);
      if (candidates.empty()) {
        throw ConfigError("no class has " + std::to_string(plan.k) + " series of length >= " +
                          std::to_string(plan.n));
      }
      pool = *candidates[rng.below(candidates.size())];
    }
  } else {
    pool = eligible;
    if (pool.size() < plan.k) {
      throw ConfigError("only " + std::to_string(pool.size()) + " series of length >= " +
                        std::to_string(plan.n) + ", need " + std::to_string(plan.k));
    }
  }

  const bool need_two_labels = plan.class_mode == ClassMode::mixed && plan.k >= 2 &&
                               std::any_of(pool.begin(), pool.end(), [&](std::size_t i) {
                                 return label_of(i) != label_of(pool.front());
                               });

  // Partial Fisher-Yates over a copy of the pool.
  std::vector<std::size_t> drawn;
  constexpr int kMaxRedraws = 100000;
  for (int attempt = 0;; ++attempt) {
    std::vector<std::size_t> order = pool;
    for (std::size_t j = 0; j < plan.k; ++j) {
      const std::size_t pick = j + rng.below(order.size() - j);
      std::swap(order[j], order[pick]);
    }
    drawn.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(plan.k));
    if (!need_two_labels) break;
    const bool mixed = std::any_of(drawn.begin(), drawn.end(),
                                   [&](std::size_t i) { return label_of(i) != label_of(drawn.front()); });
    if (mixed) break;
    if (attempt == kMaxRedraws) throw ConfigError("could not draw a mixed-class sample");
  }

  std::vector<TimeSeries> series;
  series.reserve(plan.k);
  for (std::size_t i : drawn) {
    const auto& source = dataset.series[i];
    const std::size_t offset = rng.below(source.size() - plan.n + 1);
    const auto first = source.values().begin() + static_cast<std::ptrdiff_t>(offset);
    series.emplace_back(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(plan.n)),
                        source.label());
  }
  return ProblemInstance(std::move(series), c);
}

}  // namespace msmmean
