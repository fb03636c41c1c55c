#include "icq/causal.hpp"

#include <algorithm>

#include "icq/errors.hpp"

namespace icq {

std::string to_string(CausalRegime regime) {
  return regime == CausalRegime::ConstantOperations ? "constant-operations" : "all-operations";
}

namespace {

std::optional<Element> constant_input(const TableProcess& w, std::size_t k) {
  const auto& rows = w.rows();
  const Element first = rows.front().inputs[k];
  for (const auto& r : rows) {
    if (r.inputs[k] != first) return std::nullopt;
  }
  return first;
}

class DefinitenessSearch {
 public:
  explicit DefinitenessSearch(const CausalOptions& options) : options_(options) {}

  bool run(const TableProcess& w) {
    if (++examined_ > options_.budget) throw BudgetExceeded("is_causally_definite: budget exhausted");
    if (w.past().size > 1) {
      for (Element a = 0; a < w.past().size; ++a) {
        if (!run(reduce_by_past(w, a))) return false;
      }
      return true;
    }
    if (w.slot_count() <= 1) return true;
    for (std::size_t k = 0; k < w.slot_count(); ++k) {
      if (constant_input(w, k) && reductions_definite(w, k)) return true;
    }
    return false;
  }

  bool reductions_definite(const TableProcess& w, std::size_t k) {
    const Slot& s = w.slots()[k];
    if (options_.regime == CausalRegime::ConstantOperations) {
      for (Element o = 0; o < s.out.size; ++o) {
        if (!run(reduce_by_operation(w, k, LocalOperation::constant(s.in.size, s.out.size, o)))) return false;
      }
      return true;
    }
    std::uint64_t count = 1;
    for (std::uint64_t i = 0; i < s.in.size; ++i) {
      if (count > options_.budget / s.out.size) throw BudgetExceeded("is_causally_definite: too many operations");
      count *= s.out.size;
    }
    for (std::uint64_t code = 0; code < count; ++code) {
      if (!run(reduce_by_operation(w, k, LocalOperation::enumerate(s.in.size, s.out.size, code)))) return false;
    }
    return true;
  }

  std::uint64_t examined() const { return examined_; }

 private:
  CausalOptions options_;
  std::uint64_t examined_ = 0;
};

}  // namespace

CausalVerdict is_causally_definite(const TableProcess& w, const CausalOptions& options) {
  DefinitenessSearch search(options);
  CausalVerdict verdict;
  verdict.regime = options.regime;
  verdict.definite = search.run(w);
  verdict.processes_examined = search.examined();
  return verdict;
}

DecisionTree extract_decision_tree(const TableProcess& w) {
  if (w.past().size != 1) throw PreconditionViolated("extract_decision_tree: past space must be trivial");
  if (w.future().size != 2) throw PreconditionViolated("extract_decision_tree: future space must be binary");
  for (const auto& s : w.slots()) {
    if (s.out.size != 2) throw PreconditionViolated("extract_decision_tree: slot outputs must be binary");
  }
  if (w.slot_count() == 0) return DecisionTree::leaf(w.rows().front().future != 0);

  for (std::size_t k = 0; k < w.slot_count(); ++k) {
    const auto e = constant_input(w, k);
    if (!e) continue;
    const Slot& s = w.slots()[k];
    auto w0 = reduce_by_operation(w, k, LocalOperation::constant(s.in.size, 2, 0));
    auto w1 = reduce_by_operation(w, k, LocalOperation::constant(s.in.size, 2, 1));
    if (!is_causally_definite(w0).definite || !is_causally_definite(w1).definite) continue;
    return DecisionTree::query(static_cast<int>(*e) + 1, extract_decision_tree(w0), extract_decision_tree(w1));
  }
  throw PreconditionViolated("extract_decision_tree: process is not causally definite");
}

TableProcess process_from_tree(const DecisionTree& tree, int arity) {
  if (arity < 1) throw std::invalid_argument("process_from_tree: arity must be >= 1");
  if (tree.max_index() > arity) throw SignatureMismatch("process_from_tree: tree queries beyond the oracle domain");
  const int T = std::max(1, tree.depth());
  const DecisionTree padded = tree.padded(T);
  std::vector<Slot> slots(static_cast<std::size_t>(T),
                          Slot{FiniteSpace::indices(static_cast<std::uint64_t>(arity)), FiniteSpace::binary()});
  return TableProcess::from_rule(FiniteSpace::trivial(), FiniteSpace::binary(), std::move(slots),
                                 [&](Element, std::span<const Element> o) {
                                   ProcessRow r;
                                   const DecisionTree* node = &padded;
                                   for (int k = 0; k < T; ++k) {
                                     r.inputs.push_back(static_cast<Element>(node->index() - 1));
                                     node = o[static_cast<std::size_t>(k)] ? &node->on1() : &node->on0();
                                   }
                                   r.future = node->leaf_value() ? 1 : 0;
                                   return r;
                                 });
}

}  // namespace icq
