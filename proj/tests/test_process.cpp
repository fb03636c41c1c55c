#include <gtest/gtest.h>

#include <random>

#include "icq/causal.hpp"
#include "icq/complexity.hpp"
#include "icq/errors.hpp"
#include "icq/lugano.hpp"
#include "icq/process.hpp"

using namespace icq;

namespace {

Slot binary_slot() { return {FiniteSpace::binary(), FiniteSpace::binary()}; }

// w(o) = o on one binary slot: the input copies the output.
TableProcess identity_loop() {
  return TableProcess(FiniteSpace::trivial(), FiniteSpace::trivial(), {binary_slot()}, {{{0}, 0}, {{1}, 0}});
}

// Counts input tuples i with w_k(a, mu(i)) = i_k for every k.
std::uint64_t fixed_points_over_inputs(const TableProcess& w, Element a, const std::vector<LocalOperation>& ops) {
  const auto& slots = w.slots();
  std::uint64_t total = 1;
  for (const auto& s : slots) total *= s.in.size;
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Element> in(slots.size());
    std::uint64_t rest = code;
    for (std::size_t k = slots.size(); k-- > 0;) {
      in[k] = rest % slots[k].in.size;
      rest /= slots[k].in.size;
    }
    std::vector<Element> o(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) o[k] = ops[k](in[k]);
    if (w.row(a, o).inputs == in) ++count;
  }
  return count;
}

bool valid_by_inputs(const TableProcess& w) {
  const auto& slots = w.slots();
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 1;
  for (const auto& s : slots) {
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < s.in.size; ++i) c *= s.out.size;
    counts.push_back(c);
    total *= c;
  }
  for (Element a = 0; a < w.past().size; ++a) {
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<LocalOperation> ops;
      std::uint64_t rest = code;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        ops.push_back(LocalOperation::enumerate(slots[k].in.size, slots[k].out.size, rest % counts[k]));
        rest /= counts[k];
      }
      if (fixed_points_over_inputs(w, a, ops) != 1) return false;
    }
  }
  return true;
}

TableProcess random_binary_process(std::size_t T, std::mt19937_64& rng) {
  std::vector<Slot> slots(T, binary_slot());
  return TableProcess::from_rule(FiniteSpace::trivial(), FiniteSpace::binary(), slots,
                                 [&](Element, std::span<const Element>) {
                                   ProcessRow r;
                                   for (std::size_t k = 0; k < T; ++k) r.inputs.push_back(rng() & 1);
                                   r.future = rng() & 1;
                                   return r;
                                 });
}

DecisionTree random_tree(int depth, int n, std::mt19937_64& rng) {
  if (depth == 0 || rng() % 5 == 0) return DecisionTree::leaf(rng() & 1);
  const int i = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  return DecisionTree::query(i, random_tree(depth - 1, n, rng), random_tree(depth - 1, n, rng));
}

// Slot 1 queries x1 first. On o1 = 0 slot 2 runs before slot 3, on o1 = 1
// slot 3 runs before slot 2; the later slot queries an index that depends on
// the earlier answer.
TableProcess dynamical_order_process() {
  std::vector<Slot> slots(3, Slot{FiniteSpace::indices(4), FiniteSpace::binary()});
  return TableProcess::from_rule(FiniteSpace::trivial(), FiniteSpace::binary(), slots,
                                 [](Element, std::span<const Element> o) {
                                   ProcessRow r;
                                   r.inputs.resize(3);
                                   r.inputs[0] = 0;
                                   if (o[0] == 0) {
                                     r.inputs[1] = 1;
                                     r.inputs[2] = o[1] ? 2 : 3;
                                     r.future = o[1] ^ o[2];
                                   } else {
                                     r.inputs[2] = 2;
                                     r.inputs[1] = o[2] ? 1 : 3;
                                     r.future = o[1] & o[2];
                                   }
                                   return r;
                                 });
}

bool dynamical_order_reference(const BitString& x) {
  if (!x.at(1)) return x.at(2) != (x.at(2) ? x.at(3) : x.at(4));
  return x.at(3) && (x.at(3) ? x.at(2) : x.at(4));
}

}  // namespace

TEST(LocalOperationTest, EnumerationIsMixedRadix) {
  const auto op = LocalOperation::enumerate(3, 2, 0b110);
  EXPECT_EQ(op(0), 0u);
  EXPECT_EQ(op(1), 1u);
  EXPECT_EQ(op(2), 1u);
  EXPECT_TRUE(LocalOperation::constant(4, 2, 1).is_constant());
  EXPECT_FALSE(LocalOperation::identity(2).is_constant());
  const auto oracle = LocalOperation::oracle(ClassicalOracle(BitString::from_string("01")));
  EXPECT_EQ(oracle(0), 0u);
  EXPECT_EQ(oracle(1), 1u);
}

TEST(TableProcessTest, RejectsPartialOrOutOfRangeTables) {
  EXPECT_THROW(TableProcess(FiniteSpace::trivial(), FiniteSpace::trivial(), {binary_slot()}, {{{0}, 0}}),
               SignatureMismatch);
  EXPECT_THROW(TableProcess(FiniteSpace::trivial(), FiniteSpace::trivial(), {binary_slot()}, {{{0}, 0}, {{2}, 0}}),
               std::out_of_range);
}

TEST(InducedFunctionsTest, LuganoComponents) {
  const auto w = lugano();
  const std::vector<Element> o{0, 1, 0};
  const auto r = w.row(0, o);
  EXPECT_EQ(r.inputs, (std::vector<Element>{0, 0, 1}));
  EXPECT_EQ(w.row(0, std::vector<Element>{1, 1, 1}).inputs, (std::vector<Element>{0, 0, 0}));
  EXPECT_EQ(w.row(0, std::vector<Element>{0, 0, 0}).inputs, (std::vector<Element>{0, 0, 0}));
  const auto parts = induced_functions(w);
  ASSERT_EQ(parts.inputs.size(), 3u);
  EXPECT_EQ(assemble(w.past(), w.future(), w.slots(), parts), w);
}

TEST(ValidityTest, IdentityLoopIsInvalid) {
  const auto v = validate_process(identity_loop());
  EXPECT_FALSE(v.valid);
  ASSERT_TRUE(v.self_signalling_slot.has_value());
  EXPECT_EQ(*v.self_signalling_slot, 0u);
  EXPECT_NE(v.witness_fixed_points, 1u);
}

TEST(ValidityTest, ConstantSlotIsValid) {
  const TableProcess w(FiniteSpace::trivial(), FiniteSpace::binary(), {binary_slot()}, {{{1}, 0}, {{1}, 1}});
  const auto v = validate_process(w);
  EXPECT_TRUE(v.valid);
  EXPECT_EQ(v.tuples_checked, 4u);
  EXPECT_FALSE(v.self_signalling_slot.has_value());
}

TEST(ValidityTest, LuganoEnumeratesAllOperationTuples) {
  const auto v = validate_process(lugano());
  EXPECT_TRUE(v.valid);
  EXPECT_EQ(v.tuples_checked, 64u);
}

TEST(ValidityTest, BudgetIsEnforced) { EXPECT_THROW(validate_process(lugano_bar(), 1000), BudgetExceeded); }

TEST(ValidityTest, AgreesWithInputTupleCountOnRandomTables) {
  std::mt19937_64 rng(3);
  int valid = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto w = random_binary_process(1 + trial % 3, rng);
    const bool expected = valid_by_inputs(w);
    EXPECT_EQ(validate_process(w).valid, expected);
    valid += expected ? 1 : 0;
  }
  EXPECT_GT(valid, 0);
}

TEST(FixedPointTest, ConstantOperationsGiveRowInputs) {
  const auto w = lugano();
  for (std::uint64_t idx = 0; idx < 8; ++idx) {
    const auto o = w.outputs_at(idx);
    std::vector<LocalOperation> ops;
    for (Element v : o) ops.push_back(LocalOperation::constant(2, 2, v));
    EXPECT_EQ(fixed_point(w, 0, ops), w.row(0, o).inputs);
  }
}

TEST(FixedPointTest, InvalidProcessThrows) {
  const std::vector<LocalOperation> ops{LocalOperation(std::vector<Element>{1, 0}, 2)};
  EXPECT_EQ(count_fixed_points(identity_loop(), 0, ops), 0u);
  EXPECT_THROW(fixed_point(identity_loop(), 0, ops), InconsistentProcess);
}

TEST(FixedPointTest, SequentialWireLinksToIdentity) {
  // P -> I_1, O_1 -> F.
  const auto w = TableProcess::from_rule(FiniteSpace::binary(), FiniteSpace::binary(), {binary_slot()},
                                         [](Element a, std::span<const Element> o) { return ProcessRow{{a}, o[0]}; });
  const std::vector<LocalOperation> ops{LocalOperation::identity(2)};
  EXPECT_EQ(link(w, ops), (std::vector<Element>{0, 1}));
}

TEST(ReductionTest, LuganoReducedByConstantIsValid) {
  const auto w = lugano();
  for (Element c : {0, 1}) {
    const auto r = reduce_by_operation(w, 2, LocalOperation::constant(2, 2, c));
    EXPECT_EQ(r.slot_count(), 2u);
    const auto v = validate_process(r);
    EXPECT_TRUE(v.valid);
    EXPECT_EQ(v.tuples_checked, 16u);
  }
  // mu_3 = 1 forces o3 = 1, so w_2 = (1 + o3) o1 = 0.
  const auto r1 = reduce_by_operation(w, 2, LocalOperation::constant(2, 2, 1));
  for (std::uint64_t idx = 0; idx < 4; ++idx) EXPECT_EQ(r1.row_at(0, idx).inputs[1], 0u);
}

TEST(ReductionTest, OneSlotReducesToPointMap) {
  const auto w = TableProcess::from_rule(FiniteSpace::binary(), FiniteSpace::binary(), {binary_slot()},
                                         [](Element a, std::span<const Element> o) { return ProcessRow{{a}, o[0]}; });
  const auto r = reduce_by_operation(w, 0, LocalOperation::identity(2));
  EXPECT_EQ(r.slot_count(), 0u);
  EXPECT_EQ(r.row(0, {}).future, 0u);
  EXPECT_EQ(r.row(1, {}).future, 1u);
}

TEST(ReductionTest, ReduceThenLinkEqualsLinkAtPast) {
  std::mt19937_64 rng(5);
  const auto w = TableProcess::from_rule(FiniteSpace::binary(), FiniteSpace::binary(), {binary_slot(), binary_slot()},
                                         [](Element a, std::span<const Element> o) {
                                           return ProcessRow{{a, o[0]}, o[1]};
                                         });
  ASSERT_TRUE(validate_process(w).valid);
  for (std::uint64_t c = 0; c < 16; ++c) {
    const std::vector<LocalOperation> ops{LocalOperation::enumerate(2, 2, c % 4), LocalOperation::enumerate(2, 2, c / 4)};
    const auto full = link(w, ops);
    for (Element a = 0; a < 2; ++a) EXPECT_EQ(link(reduce_by_past(w, a), ops).front(), full[a]);
  }
}

TEST(ReductionTest, ReductionsOfValidProcessesStayValid) {
  std::mt19937_64 rng(9);
  std::vector<TableProcess> pool{lugano(), lugano_bar()};
  for (int t = 0; t < 10; ++t) pool.push_back(process_from_tree(random_tree(3, 3, rng), 3));
  for (int trial = 0; trial < 400 && pool.size() < 30; ++trial) {
    auto w = random_binary_process(2, rng);
    if (validate_process(w).valid) pool.push_back(std::move(w));
  }
  ASSERT_GT(pool.size(), 12u);
  for (const auto& w : pool) {
    ASSERT_TRUE(validate_process(w).valid);
    for (std::size_t k = 0; k < w.slot_count(); ++k) {
      const auto& s = w.slots()[k];
      std::uint64_t count = 1;
      for (std::uint64_t i = 0; i < s.in.size; ++i) count *= s.out.size;
      for (std::uint64_t c = 0; c < count; ++c) {
        EXPECT_TRUE(validate_process(reduce_by_operation(w, k, LocalOperation::enumerate(s.in.size, s.out.size, c))).valid);
      }
    }
  }
}

TEST(CausalTest, LuganoIsIndefinite) {
  EXPECT_FALSE(is_causally_definite(lugano()).definite);
  EXPECT_FALSE(is_causally_definite(lugano_bar()).definite);
  const CausalOptions all{CausalRegime::AllOperations};
  const auto v = is_causally_definite(lugano(), all);
  EXPECT_FALSE(v.definite);
  EXPECT_EQ(v.regime, CausalRegime::AllOperations);
}

TEST(CausalTest, OneSlotIsDefinite) { EXPECT_TRUE(is_causally_definite(identity_loop()).definite); }

TEST(CausalTest, TreeProcessesRoundTrip) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = random_tree(3, 4, rng);
    const auto w = process_from_tree(t, 4);
    EXPECT_TRUE(validate_process(w).valid);
    EXPECT_TRUE(is_causally_definite(w).definite);
    EXPECT_TRUE(is_causally_definite(w, {CausalRegime::AllOperations}).definite);
    const auto back = extract_decision_tree(w);
    EXPECT_EQ(back.depth(), static_cast<int>(w.slot_count()));
    for (std::uint64_t i = 0; i < 16; ++i) {
      const auto x = BitString::from_index(4, i);
      const bool via_process = link(w, oracle_operations(w, x)).front() != 0;
      EXPECT_EQ(via_process, t.evaluate(x));
      EXPECT_EQ(back.evaluate(x), t.evaluate(x));
    }
  }
}

TEST(CausalTest, LeafTreeGivesOneSlotConstantFuture) {
  const auto w = process_from_tree(DecisionTree::leaf(true), 3);
  EXPECT_EQ(w.slot_count(), 1u);
  for (const auto& r : w.rows()) EXPECT_EQ(r.future, 1u);
  const auto t = extract_decision_tree(w);
  EXPECT_EQ(t.depth(), 1);
}

TEST(CausalTest, DynamicalOrderProcess) {
  const auto w = dynamical_order_process();
  EXPECT_TRUE(validate_process(w).valid);
  EXPECT_TRUE(is_causally_definite(w).definite);
  const auto t = extract_decision_tree(w);
  EXPECT_EQ(t.depth(), 3);
  for (std::uint64_t i = 0; i < 16; ++i) {
    const auto x = BitString::from_index(4, i);
    const bool expected = dynamical_order_reference(x);
    EXPECT_EQ(link(w, oracle_operations(w, x)).front() != 0, expected) << x.to_string();
    EXPECT_EQ(t.evaluate(x), expected) << x.to_string();
  }
}

TEST(CausalTest, ExtractRejectsIndefinite) {
  EXPECT_THROW(extract_decision_tree(lugano()), PreconditionViolated);
}

TEST(ComputesTest, LuganoBarComputesF6cButNotF6q) {
  const auto w = lugano_bar();
  const auto yes = computes(w, f6c());
  EXPECT_TRUE(yes.holds);
  EXPECT_TRUE(yes.exhaustive);
  EXPECT_EQ(yes.checked, 64u);
  const auto no = computes(w, f6q());
  EXPECT_FALSE(no.holds);
  ASSERT_TRUE(no.counterexample.has_value());
  EXPECT_NE(f6c()(*no.counterexample), f6q()(*no.counterexample));
}

TEST(ComputesTest, SlotCountBoundsDegreeAndCertificate) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = random_tree(3, 4, rng);
    const auto w = process_from_tree(t, 4);
    const auto f = BooleanFunction::from_evaluator(4, [&](const BitString& x) { return t.evaluate(x); });
    ASSERT_TRUE(computes(w, f).holds);
    const int T = static_cast<int>(w.slot_count());
    EXPECT_GE(T, degree(f));
    EXPECT_GE(T, certificate_complexity(f));
  }
  const auto w = lugano_bar();
  EXPECT_GE(3, degree(f6c()));
  EXPECT_GE(3, certificate_complexity(f6c()));
  EXPECT_EQ(w.slot_count(), 3u);
}

TEST(ComputesTest, OptimalF6cTreeProcess) {
  const auto q = deterministic_query_complexity(f6c());
  const auto w = process_from_tree(q.tree, 6);
  EXPECT_EQ(w.slot_count(), 4u);
  EXPECT_TRUE(computes(w, f6c()).holds);
  EXPECT_TRUE(is_causally_definite(w).definite);
}
