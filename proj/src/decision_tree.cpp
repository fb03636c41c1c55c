#include "icq/decision_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace icq {

DecisionTree DecisionTree::leaf(bool value) {
  auto node = std::make_shared<Node>();
  node->is_leaf = true;
  node->value = value;
  return DecisionTree(std::move(node));
}

DecisionTree DecisionTree::query(int index, DecisionTree on0, DecisionTree on1) {
  if (index < 1) throw std::invalid_argument("DecisionTree: query indices are 1-based");
  if (!on0.node_ || !on1.node_) throw std::invalid_argument("DecisionTree: empty subtree");
  auto node = std::make_shared<Node>();
  node->is_leaf = false;
  node->index = index;
  node->on0 = std::move(on0);
  node->on1 = std::move(on1);
  return DecisionTree(std::move(node));
}

bool DecisionTree::is_leaf() const noexcept { return node_->is_leaf; }

bool DecisionTree::leaf_value() const {
  if (!node_->is_leaf) throw std::logic_error("DecisionTree: not a leaf");
  return node_->value;
}

int DecisionTree::index() const {
  if (node_->is_leaf) throw std::logic_error("DecisionTree: leaf has no query index");
  return node_->index;
}

const DecisionTree& DecisionTree::on0() const {
  if (node_->is_leaf) throw std::logic_error("DecisionTree: leaf has no children");
  return node_->on0;
}

const DecisionTree& DecisionTree::on1() const {
  if (node_->is_leaf) throw std::logic_error("DecisionTree: leaf has no children");
  return node_->on1;
}

int DecisionTree::depth() const {
  if (node_->is_leaf) return 0;
  return 1 + std::max(node_->on0.depth(), node_->on1.depth());
}

int DecisionTree::max_index() const {
  if (node_->is_leaf) return 0;
  return std::max({node_->index, node_->on0.max_index(), node_->on1.max_index()});
}

bool DecisionTree::evaluate(const ClassicalOracle& oracle) const {
  const Node* n = node_.get();
  while (!n->is_leaf) n = oracle.query(n->index) ? n->on1.node_.get() : n->on0.node_.get();
  return n->value;
}

int DecisionTree::queries_used(const BitString& x) const {
  int used = 0;
  const Node* n = node_.get();
  while (!n->is_leaf) {
    ++used;
    n = x.at(n->index) ? n->on1.node_.get() : n->on0.node_.get();
  }
  return used;
}

DecisionTree DecisionTree::padded(int target_depth) const {
  if (node_->is_leaf) {
    if (target_depth <= 0) return *this;
    DecisionTree rest = padded(target_depth - 1);
    return query(1, rest, rest);
  }
  if (target_depth < 1) throw std::invalid_argument("DecisionTree::padded: target shallower than tree");
  return query(node_->index, node_->on0.padded(target_depth - 1), node_->on1.padded(target_depth - 1));
}

bool operator==(const DecisionTree& a, const DecisionTree& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.leaf_value() == b.leaf_value();
  return a.index() == b.index() && a.on0() == b.on0() && a.on1() == b.on1();
}

bool tree_computes(const DecisionTree& tree, const BooleanFunction& f) {
  const auto table = f.table();
  const auto n = static_cast<std::size_t>(f.arity());
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    if (tree.evaluate(BitString::from_index(n, idx)) != (table[idx] != 0)) return false;
  }
  return true;
}

}  // namespace icq
