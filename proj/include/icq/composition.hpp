#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "icq/boolean_function.hpp"
#include "icq/process.hpp"

namespace icq {

/// f^(l) on n^l bits: f^(1) = f, and f^(l+1) applies f to the n values of
/// f^(l) on consecutive blocks of n^l bits.
struct RecursiveFunction {
  BooleanFunction base;
  int depth = 1;
  /// Evaluator-backed; tabulated only when n^l <= table limit.
  BooleanFunction function;

  std::uint64_t arity() const { return static_cast<std::uint64_t>(function.arity()); }
  bool operator()(const BitString& x) const { return function(x); }
};

RecursiveFunction recurse_function(const BooleanFunction& f, int depth);

/// A process for f^(l) (trivial past, I_k = {1..n^l}) re-ranged so that past
/// value a (0-based) addresses block a: slot inputs become a n^l + i.
class ShiftedProcess final : public ProcessFunction {
 public:
  ShiftedProcess(std::shared_ptr<const ProcessFunction> inner, std::uint64_t blocks);

  const FiniteSpace& past() const override { return past_; }
  const FiniteSpace& future() const override { return inner_->future(); }
  const std::vector<Slot>& slots() const override { return slots_; }
  ProcessRow row(Element a, std::span<const Element> outputs) const override;
  /// Runs the inner link once per block on the restricted operations.
  std::vector<Element> link(std::span<const LocalOperation> ops) const override;

  std::uint64_t block_size() const noexcept { return block_; }
  const ProcessFunction& inner() const noexcept { return *inner_; }

 private:
  std::shared_ptr<const ProcessFunction> inner_;
  std::uint64_t block_;
  FiniteSpace past_;
  std::vector<Slot> slots_;
};

std::shared_ptr<const ShiftedProcess> shift_process(std::shared_ptr<const ProcessFunction> inner, std::uint64_t n);

/// The outer process with each of its T slots filled by a copy of a shifted
/// process: outer slot k's input is the inner past, the inner future is
/// outer slot k's output. Slot (k, j) of the result is slot k*T_inner + j.
class ComposedProcess final : public ProcessFunction {
 public:
  ComposedProcess(std::shared_ptr<const ProcessFunction> outer, std::shared_ptr<const ProcessFunction> inner);

  const FiniteSpace& past() const override { return outer_->past(); }
  const FiniteSpace& future() const override { return outer_->future(); }
  const std::vector<Slot>& slots() const override { return slots_; }
  /// One explicit row of the composite.
  ProcessRow row(Element a, std::span<const Element> outputs) const override;
  /// Inner link tables first, then the outer fixed-point search.
  std::vector<Element> link(std::span<const LocalOperation> ops) const override;

  const ProcessFunction& outer() const noexcept { return *outer_; }
  const ProcessFunction& inner() const noexcept { return *inner_; }

 private:
  std::shared_ptr<const ProcessFunction> outer_;
  std::shared_ptr<const ProcessFunction> inner_;
  std::vector<Slot> slots_;
};

std::shared_ptr<const ComposedProcess> compose_process(std::shared_ptr<const ProcessFunction> outer,
                                                       std::shared_ptr<const ProcessFunction> shifted_inner);

/// w^(l): w for l = 1, and w composed with the shifted w^(l-1) otherwise.
/// `w` must have a trivial past, binary outputs and I_k = {1..n}.
std::shared_ptr<const ProcessFunction> recursive_process(std::shared_ptr<const ProcessFunction> w, int depth);

struct CompositionCheckOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  bool structured = true;
};

struct CompositionCheck {
  int depth = 0;
  std::uint64_t slots = 0;
  std::uint64_t input_bits = 0;
  std::uint64_t checked = 0;
  std::uint64_t agreed = 0;
  std::uint64_t structured_checked = 0;
  std::optional<BitString> first_mismatch;
  bool exhaustive = false;
};

/// Compares recursive_process(w, l) on oracle copies against f^(l).
/// Exhaustive when n^l <= 20, otherwise `samples` seeded random inputs plus
/// (if requested) all-zeros, all-ones and the 2^n block-constant inputs.
CompositionCheck verify_composition(std::shared_ptr<const ProcessFunction> w, const BooleanFunction& f, int depth,
                                    const CompositionCheckOptions& options = {});

struct SeparationRow {
  int depth = 0;
  std::uint64_t witnessed_slots = 0;
  std::uint64_t decision_tree_depth = 0;
  /// False when decision_tree_depth is D(f)^l from the composition theorem
  /// for decision trees rather than recomputed.
  bool computed = false;
};

/// Rows l = 1..max_depth: slots of the l-fold composite of a T-slot witness
/// against D(f^(l)). D is computed at l = 1 and taken as D(f)^l beyond.
/// Throws std::invalid_argument for max_depth < 1.
std::vector<SeparationRow> separation_report(const BooleanFunction& f, std::uint64_t T, int max_depth);

}  // namespace icq
