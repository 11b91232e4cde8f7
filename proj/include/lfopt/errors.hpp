#ifndef LFOPT_ERRORS_HPP_
#define LFOPT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lfopt {

// Bad arguments or malformed configuration supplied by the caller.
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A metric denominator evaluated to zero for the given confusion matrix.
class DegenerateMetric : public std::runtime_error {
 public:
  explicit DegenerateMetric(const std::string& what) : std::runtime_error(what) {}
};

// An empirical estimate has a zero denominator and carries no information.
class DegenerateEstimate : public std::runtime_error {
 public:
  explicit DegenerateEstimate(const std::string& what) : std::runtime_error(what) {}
};

// A request exceeds a hard size limit (e.g. exhaustive enumeration).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lfopt

#endif  // LFOPT_ERRORS_HPP_
