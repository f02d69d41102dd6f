#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qrep {

/// Malformed text input (quiver or representation files, scalar literals).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Quiver with a directed cycle; the message lists a witnessing cycle.
class CycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Objects living over different quivers/fields, or with incompatible shapes.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized search neither found a certificate nor could fall back to an
/// exhaustive one. Distinct from a definite negative answer.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroObjectError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qrep
