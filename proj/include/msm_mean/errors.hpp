#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msmmean {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input data or solver configuration (bad window, negative c, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The estimated table size exceeds the configured memory cap.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, double estimated_bytes, double cap_bytes)
      : Error(what), estimated_bytes_(estimated_bytes), cap_bytes_(cap_bytes) {}

  double estimated_bytes() const noexcept { return estimated_bytes_; }
  double cap_bytes() const noexcept { return cap_bytes_; }

 private:
  double estimated_bytes_;
  double cap_bytes_;
};

/// A solve ran past its deadline.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

/// The filled table and its recurrence disagree. Signals a bug, never bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Line numbers are 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The brute-force oracle refused an instance outside its budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, double enumeration_size)
      : Error(what), enumeration_size_(enumeration_size) {}

  double enumeration_size() const noexcept { return enumeration_size_; }

 private:
  double enumeration_size_;
};

}  // namespace msmmean
