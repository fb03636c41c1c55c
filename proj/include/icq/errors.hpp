#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace icq {

/// Input of the wrong length was handed to a Boolean function or oracle.
class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive computation would exceed its configured budget
/// (truth-table size, operation tuples, matrix dimension, ...).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operations, spaces or labels do not fit the object they are plugged into.
class SignatureMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller-side precondition does not hold (e.g. a process that is not
/// causally definite handed to tree extraction).
class PreconditionViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-point search found zero or several consistent output tuples,
/// so the table is not a process function.
class InconsistentProcess : public std::runtime_error {
 public:
  InconsistentProcess(const std::string& what, std::uint64_t fixed_points)
      : std::runtime_error(what), fixed_points_(fixed_points) {}
  std::uint64_t fixed_points() const noexcept { return fixed_points_; }

 private:
  std::uint64_t fixed_points_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace icq
