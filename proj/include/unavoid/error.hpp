#ifndef UNAVOID_ERROR_HPP
#define UNAVOID_ERROR_HPP

#include <stdexcept>
#include <string>

namespace unavoid {

/// Input violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// The host tournament is below every bound this library can guarantee.
class NoGuaranteeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction failed inside a region where success is a theorem.
/// This is an implementation bug; dump() holds enough to reproduce it.
class HardError : public std::logic_error {
 public:
  HardError(const std::string& what, std::string dump)
      : std::logic_error(what), dump_(std::move(dump)) {}
  const std::string& dump() const noexcept { return dump_; }

 private:
  std::string dump_;
};

}  // namespace unavoid

#endif  // UNAVOID_ERROR_HPP
