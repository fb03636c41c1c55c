#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "icq/boolean_function.hpp"
#include "icq/decision_tree.hpp"

namespace icq {

/// Coefficients of the unique multilinear polynomial representing f, indexed
/// by subset mask in the truth-table convention (variable i <-> bit n-i).
/// Computed with the Moebius transform coeff(S) = sum_{T⊆S} (-1)^{|S|-|T|} f(1_T).
std::vector<std::int64_t> multilinear_coefficients(const BooleanFunction& f);

/// Evaluates the polynomial given by `coefficients` at x.
std::int64_t evaluate_multilinear(std::span<const std::int64_t> coefficients, const BitString& x);

int degree(const BooleanFunction& f);

/// Minimum certificate for f at x as sorted 1-based indices. Among minimum
/// size sets the lexicographically smallest is returned.
std::vector<int> certificate(const BooleanFunction& f, const BitString& x);

/// True iff every y agreeing with x on `indices` (1-based) has f(y) = f(x).
bool is_certificate(const BooleanFunction& f, const BitString& x, std::span<const int> indices);

/// C(f) = max_x |certificate(f, x)|.
int certificate_complexity(const BooleanFunction& f);

struct QueryComplexity {
  int depth = 0;
  DecisionTree tree = DecisionTree::leaf(false);
};

/// Exact D(f) with an optimal witness tree.
///
/// D(g) = 0 for constant g, else 1 + min_i max_b D(g|x_i=b), memoized on the
/// restricted truth table. The witness queries the smallest optimal index.
QueryComplexity deterministic_query_complexity(const BooleanFunction& f);

/// A Boolean function with some inputs fixed.
class Restriction {
 public:
  explicit Restriction(BooleanFunction base);

  /// Fixes x_i (1-based) to `value`; returns *this for chaining.
  Restriction& assign(int index, bool value);
  std::optional<bool> assignment(int index) const;

  /// 1-based indices that remain free, increasing.
  std::vector<int> free_indices() const;

  /// Evaluates the base function with the assigned bits substituted into x.
  bool operator()(const BitString& x) const;

  /// The restriction as a function of its free variables (in increasing
  /// index order). Arity 0 restrictions are not representable; use value().
  BooleanFunction as_function() const;

  bool is_constant() const;
  /// Value of a fully determined restriction; throws if some input still matters.
  bool value() const;

  const BooleanFunction& base() const noexcept { return base_; }

 private:
  BooleanFunction base_;
  std::vector<std::optional<bool>> fixed_;
};

}  // namespace icq
