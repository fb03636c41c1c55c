#include "icq/boolean_function.hpp"

#include <string>

#include "icq/errors.hpp"

namespace icq {

namespace {

void check_arity(int arity) {
  if (arity < 1) throw std::invalid_argument("BooleanFunction: arity must be >= 1");
}

}  // namespace

BooleanFunction::BooleanFunction(int arity, Evaluator evaluator,
                                 std::shared_ptr<const std::vector<std::uint8_t>> table)
    : arity_(arity), evaluator_(std::move(evaluator)), table_(std::move(table)) {}

BooleanFunction BooleanFunction::from_table(int arity, std::vector<std::uint8_t> table) {
  check_arity(arity);
  if (arity > 62 || table.size() != (std::size_t{1} << arity)) {
    throw ArityMismatch("truth table of size " + std::to_string(table.size()) + " does not match arity " +
                        std::to_string(arity));
  }
  for (auto& v : table) {
    if (v > 1) throw std::invalid_argument("truth table entries must be 0 or 1");
  }
  auto shared = std::make_shared<const std::vector<std::uint8_t>>(std::move(table));
  Evaluator eval = [shared](const BitString& x) { return (*shared)[x.index()] != 0; };
  return BooleanFunction(arity, std::move(eval), std::move(shared));
}

BooleanFunction BooleanFunction::from_evaluator(int arity, Evaluator evaluator, int table_limit) {
  check_arity(arity);
  if (arity > table_limit) return BooleanFunction(arity, std::move(evaluator), nullptr);
  const std::uint64_t size = std::uint64_t{1} << arity;
  std::vector<std::uint8_t> table(size);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    table[idx] = evaluator(BitString::from_index(static_cast<std::size_t>(arity), idx)) ? 1 : 0;
  }
  return BooleanFunction(arity, std::move(evaluator), std::make_shared<const std::vector<std::uint8_t>>(std::move(table)));
}

BooleanFunction BooleanFunction::constant(int arity, bool value) {
  return from_evaluator(arity, [value](const BitString&) { return value; });
}

bool BooleanFunction::operator()(const BitString& x) const {
  if (x.size() != static_cast<std::size_t>(arity_)) {
    throw ArityMismatch("input of length " + std::to_string(x.size()) + " for a function of arity " +
                        std::to_string(arity_));
  }
  if (table_) return (*table_)[x.index()] != 0;
  return evaluator_(x);
}

bool BooleanFunction::value_at(std::uint64_t index) const {
  if (!table_) throw BudgetExceeded("truth table not materialized (arity above table limit)");
  return (*table_).at(index) != 0;
}

std::span<const std::uint8_t> BooleanFunction::table() const {
  if (!table_) throw BudgetExceeded("truth table not materialized (arity above table limit)");
  return *table_;
}

BooleanFunction and_function(int arity) {
  return BooleanFunction::from_evaluator(arity, [](const BitString& x) {
    for (auto b : x.bits()) {
      if (!b) return false;
    }
    return true;
  });
}

BooleanFunction or_function(int arity) {
  return BooleanFunction::from_evaluator(arity, [](const BitString& x) {
    for (auto b : x.bits()) {
      if (b) return true;
    }
    return false;
  });
}

BooleanFunction parity_function(int arity) {
  return BooleanFunction::from_evaluator(arity, [](const BitString& x) {
    bool p = false;
    for (auto b : x.bits()) p ^= (b != 0);
    return p;
  });
}

}  // namespace icq
