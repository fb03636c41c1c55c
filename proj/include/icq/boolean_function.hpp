#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "icq/bits.hpp"

namespace icq {

/// Largest arity for which a truth table is materialized.
inline constexpr int kDefaultTableLimit = 24;

/// A total Boolean function f: {0,1}^n -> {0,1}.
///
/// Always carries an evaluator; carries a truth table (2^n entries, x_1 most
/// significant) only when n <= table_limit. Table-dependent analyses refuse
/// evaluator-only functions with BudgetExceeded.
class BooleanFunction {
 public:
  using Evaluator = std::function<bool(const BitString&)>;

  static BooleanFunction from_table(int arity, std::vector<std::uint8_t> table);
  static BooleanFunction from_evaluator(int arity, Evaluator evaluator, int table_limit = kDefaultTableLimit);
  static BooleanFunction constant(int arity, bool value);

  int arity() const noexcept { return arity_; }
  bool has_table() const noexcept { return table_ != nullptr; }

  /// f(x); throws ArityMismatch when |x| != n.
  bool operator()(const BitString& x) const;
  bool eval(const BitString& x) const { return (*this)(x); }

  /// f at table position `index` (x_1 most significant).
  bool value_at(std::uint64_t index) const;

  /// Throws BudgetExceeded when no table is materialized.
  std::span<const std::uint8_t> table() const;

  const Evaluator& evaluator() const noexcept { return evaluator_; }

 private:
  BooleanFunction(int arity, Evaluator evaluator, std::shared_ptr<const std::vector<std::uint8_t>> table);

  int arity_ = 1;
  Evaluator evaluator_;
  std::shared_ptr<const std::vector<std::uint8_t>> table_;
};

BooleanFunction and_function(int arity);
BooleanFunction or_function(int arity);
BooleanFunction parity_function(int arity);

/// The query oracle O_x: {1..n} -> {0,1}, O_x(i) = x_i.
class ClassicalOracle {
 public:
  explicit ClassicalOracle(BitString x) : x_(std::move(x)) {}

  int size() const noexcept { return static_cast<int>(x_.size()); }
  /// 1-based query; throws std::out_of_range outside 1..n.
  bool query(int i) const { return x_.at(i); }
  bool operator()(int i) const { return query(i); }
  const BitString& source() const noexcept { return x_; }

 private:
  BitString x_;
};

}  // namespace icq
