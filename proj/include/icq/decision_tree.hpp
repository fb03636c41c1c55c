#pragma once

#include <memory>

#include "icq/boolean_function.hpp"

namespace icq {

/// An adaptive classical query algorithm: either a leaf carrying the output
/// bit, or a query of x_i (1-based) with one subtree per answer.
///
/// Immutable; subtrees are shared between copies.
class DecisionTree {
 public:
  static DecisionTree leaf(bool value);
  static DecisionTree query(int index, DecisionTree on0, DecisionTree on1);

  bool is_leaf() const noexcept;
  bool leaf_value() const;
  int index() const;
  const DecisionTree& on0() const;
  const DecisionTree& on1() const;

  /// Length of the longest root-to-leaf path.
  int depth() const;
  /// Largest query index appearing anywhere (0 for a bare leaf).
  int max_index() const;

  /// Walks the tree against the oracle. Throws std::out_of_range when a query
  /// index lies outside the oracle domain.
  bool evaluate(const ClassicalOracle& oracle) const;
  bool evaluate(const BitString& x) const { return evaluate(ClassicalOracle(x)); }

  /// Number of oracle queries performed on x.
  int queries_used(const BitString& x) const;

  /// Tree with every leaf at depth `target_depth`: a short branch is
  /// extended by dummy queries of x_1 whose answer is ignored.
  DecisionTree padded(int target_depth) const;

  friend bool operator==(const DecisionTree& a, const DecisionTree& b);

 private:
  struct Node;
  explicit DecisionTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct DecisionTree::Node {
  bool is_leaf = true;
  bool value = false;
  int index = 0;
  DecisionTree on0{nullptr};
  DecisionTree on1{nullptr};
};

/// True iff the tree outputs f(x) on every x (exhaustive, needs f's table).
bool tree_computes(const DecisionTree& tree, const BooleanFunction& f);

}  // namespace icq
