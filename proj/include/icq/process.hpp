#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icq/bits.hpp"
#include "icq/boolean_function.hpp"

namespace icq {

/// Elements of every finite space are stored as 0..size-1.
using Element = std::uint64_t;

/// A nonempty finite set {0, ..., size-1}. `label_offset` is added when an
/// element is displayed (oracle domains use offset 1 so that element e is
/// shown as query index e+1).
struct FiniteSpace {
  std::uint64_t size = 1;
  std::int64_t label_offset = 0;

  static FiniteSpace trivial() { return {1, 0}; }
  static FiniteSpace binary() { return {2, 0}; }
  static FiniteSpace indices(std::uint64_t n) { return {n, 1}; }

  std::int64_t label(Element e) const { return static_cast<std::int64_t>(e) + label_offset; }
  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;
};

/// The (I_k, O_k) pair of one slot.
struct Slot {
  FiniteSpace in;
  FiniteSpace out;
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// One value w(a, o) = (i_1..i_T, b).
struct ProcessRow {
  std::vector<Element> inputs;
  Element future = 0;
  friend bool operator==(const ProcessRow&, const ProcessRow&) = default;
};

/// A total map mu_k: I_k -> O_k.
class LocalOperation {
 public:
  LocalOperation() = default;
  LocalOperation(std::vector<Element> map, std::uint64_t out_size);

  static LocalOperation constant(std::uint64_t in_size, std::uint64_t out_size, Element value);
  static LocalOperation identity(std::uint64_t size);
  /// O_x on the domain {0..n-1}: element e answers x_{e+1}.
  static LocalOperation oracle(const ClassicalOracle& oracle);
  /// Operation number `code` in the mixed-radix enumeration of all
  /// out_size^in_size maps (value at element 0 is the least significant digit).
  static LocalOperation enumerate(std::uint64_t in_size, std::uint64_t out_size, std::uint64_t code);

  std::uint64_t in_size() const noexcept { return map_.size(); }
  std::uint64_t out_size() const noexcept { return out_size_; }
  Element operator()(Element i) const { return map_.at(i); }
  std::span<const Element> map() const noexcept { return map_; }
  bool is_constant() const;

  friend bool operator==(const LocalOperation&, const LocalOperation&) = default;

 private:
  std::vector<Element> map_;
  std::uint64_t out_size_ = 1;
};

/// A map w: P x O_1 x ... x O_T -> I_1 x ... x I_T x F.
///
/// Output tuples are indexed row-major with o_1 most significant.
class ProcessFunction {
 public:
  virtual ~ProcessFunction() = default;

  virtual const FiniteSpace& past() const = 0;
  virtual const FiniteSpace& future() const = 0;
  virtual const std::vector<Slot>& slots() const = 0;
  std::size_t slot_count() const { return slots().size(); }

  virtual ProcessRow row(Element a, std::span<const Element> outputs) const = 0;

  /// w * mu as a table over P. The default searches fixed points over all
  /// output tuples for each a. Throws InconsistentProcess when some a has
  /// zero or several fixed points.
  virtual std::vector<Element> link(std::span<const LocalOperation> ops) const;

  /// Number of output tuples, prod_k |O_k|.
  std::uint64_t output_tuple_count() const;
  std::vector<Element> outputs_at(std::uint64_t index) const;
  std::uint64_t output_index(std::span<const Element> outputs) const;

  /// Throws SignatureMismatch unless ops fit the slots.
  void check_operations(std::span<const LocalOperation> ops) const;
};

/// A process function stored as an explicit table indexed by (a, o).
///
/// The constructor checks totality and ranges only; validity is a separate
/// question answered by validate_process.
class TableProcess final : public ProcessFunction {
 public:
  using Rule = std::function<ProcessRow(Element a, std::span<const Element> outputs)>;

  TableProcess(FiniteSpace past, FiniteSpace future, std::vector<Slot> slots, std::vector<ProcessRow> rows);
  static TableProcess from_rule(FiniteSpace past, FiniteSpace future, std::vector<Slot> slots, const Rule& rule);
  /// Materializes any process function (beware of size).
  static TableProcess materialize(const ProcessFunction& w);

  const FiniteSpace& past() const override { return past_; }
  const FiniteSpace& future() const override { return future_; }
  const std::vector<Slot>& slots() const override { return slots_; }
  ProcessRow row(Element a, std::span<const Element> outputs) const override;
  const ProcessRow& row_at(Element a, std::uint64_t output_index) const;

  const std::vector<ProcessRow>& rows() const noexcept { return rows_; }

  friend bool operator==(const TableProcess& a, const TableProcess& b);

 private:
  FiniteSpace past_;
  FiniteSpace future_;
  std::vector<Slot> slots_;
  std::vector<ProcessRow> rows_;
};

/// The component maps w_1..w_T and w_F, each a table indexed like the rows.
struct InducedFunctions {
  std::vector<std::vector<Element>> inputs;
  std::vector<Element> future;
};

InducedFunctions induced_functions(const TableProcess& w);
TableProcess assemble(FiniteSpace past, FiniteSpace future, std::vector<Slot> slots, const InducedFunctions& parts);

/// All i such that mu(i) = o for the o that produced i, at past value a.
std::vector<ProcessRow> fixed_points(const ProcessFunction& w, Element a, std::span<const LocalOperation> ops);
std::uint64_t count_fixed_points(const ProcessFunction& w, Element a, std::span<const LocalOperation> ops);
/// The unique fixed point's slot inputs; throws InconsistentProcess otherwise.
std::vector<Element> fixed_point(const ProcessFunction& w, Element a, std::span<const LocalOperation> ops);

inline std::vector<Element> link(const ProcessFunction& w, std::span<const LocalOperation> ops) { return w.link(ops); }

inline constexpr std::uint64_t kDefaultValidationBudget = std::uint64_t{1} << 22;

struct ValidityVerdict {
  bool valid = false;
  std::uint64_t tuples_checked = 0;
  /// Slot k (0-based) whose induced input depends on its own output.
  std::optional<std::size_t> self_signalling_slot;
  /// First (a, mu) whose fixed-point count differs from 1.
  std::optional<Element> witness_past;
  std::vector<LocalOperation> witness_ops;
  std::uint64_t witness_fixed_points = 0;
};

/// Checks the unique fixed-point property for every a and every tuple of
/// local operations. Throws BudgetExceeded when |P| prod_k |O_k|^|I_k|
/// exceeds `budget`.
ValidityVerdict validate_process(const TableProcess& w, std::uint64_t budget = kDefaultValidationBudget);

/// Slot k (0-based) whose input w_k changes with o_k, if any.
std::optional<std::size_t> find_self_signalling(const TableProcess& w);

/// w^{|mu_k}: slot k (0-based) removed by plugging in `op`.
TableProcess reduce_by_operation(const TableProcess& w, std::size_t k, const LocalOperation& op);
/// w^{|a}: the past fixed to `a`, leaving a trivial past space.
TableProcess reduce_by_past(const TableProcess& w, Element a);

/// Operations handing every slot the oracle O_x. Requires each I_k to have
/// size |x| and binary O_k.
std::vector<LocalOperation> oracle_operations(const ProcessFunction& w, const BitString& x);

struct ComputesOptions {
  /// Exhaustive over all x when n <= this, otherwise sampled.
  int exhaustive_bits = 20;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
};

struct ComputesVerdict {
  bool holds = false;
  bool exhaustive = false;
  std::uint64_t checked = 0;
  std::optional<BitString> counterexample;
};

/// Whether (w * O_x^T)(a) = f(x) for the checked x and every a in P.
ComputesVerdict computes(const ProcessFunction& w, const BooleanFunction& f, const ComputesOptions& options = {});

}  // namespace icq
