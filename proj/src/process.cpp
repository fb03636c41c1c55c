#include "icq/process.hpp"

#include <random>
#include <string>

#include "icq/errors.hpp"

namespace icq {

namespace {

// a * b, saturating at UINT64_MAX.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return UINT64_MAX;
  return r;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

void check_space(const FiniteSpace& s, const char* what) {
  if (s.size < 1) throw std::invalid_argument(std::string(what) + ": spaces must be nonempty");
}

}  // namespace

LocalOperation::LocalOperation(std::vector<Element> map, std::uint64_t out_size)
    : map_(std::move(map)), out_size_(out_size) {
  if (map_.empty() || out_size_ < 1) throw std::invalid_argument("LocalOperation: empty space");
  for (Element v : map_) {
    if (v >= out_size_) throw std::out_of_range("LocalOperation: value outside output space");
  }
}

LocalOperation LocalOperation::constant(std::uint64_t in_size, std::uint64_t out_size, Element value) {
  return LocalOperation(std::vector<Element>(in_size, value), out_size);
}

LocalOperation LocalOperation::identity(std::uint64_t size) {
  std::vector<Element> map(size);
  for (std::uint64_t i = 0; i < size; ++i) map[i] = i;
  return LocalOperation(std::move(map), size);
}

LocalOperation LocalOperation::oracle(const ClassicalOracle& oracle) {
  std::vector<Element> map(static_cast<std::size_t>(oracle.size()));
  for (int i = 0; i < oracle.size(); ++i) map[static_cast<std::size_t>(i)] = oracle.query(i + 1) ? 1 : 0;
  return LocalOperation(std::move(map), 2);
}

LocalOperation LocalOperation::enumerate(std::uint64_t in_size, std::uint64_t out_size, std::uint64_t code) {
  std::vector<Element> map(in_size);
  for (auto& v : map) {
    v = code % out_size;
    code /= out_size;
  }
  return LocalOperation(std::move(map), out_size);
}

bool LocalOperation::is_constant() const {
  for (Element v : map_) {
    if (v != map_.front()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::uint64_t ProcessFunction::output_tuple_count() const {
  std::uint64_t n = 1;
  for (const auto& s : slots()) n = sat_mul(n, s.out.size);
  return n;
}

std::vector<Element> ProcessFunction::outputs_at(std::uint64_t index) const {
  const auto& s = slots();
  std::vector<Element> o(s.size());
  for (std::size_t k = s.size(); k-- > 0;) {
    o[k] = index % s[k].out.size;
    index /= s[k].out.size;
  }
  return o;
}

std::uint64_t ProcessFunction::output_index(std::span<const Element> outputs) const {
  const auto& s = slots();
  if (outputs.size() != s.size()) throw SignatureMismatch("output tuple length differs from slot count");
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (outputs[k] >= s[k].out.size) throw std::out_of_range("output outside O_k");
    idx = idx * s[k].out.size + outputs[k];
  }
  return idx;
}

void ProcessFunction::check_operations(std::span<const LocalOperation> ops) const {
  const auto& s = slots();
  if (ops.size() != s.size()) {
    throw SignatureMismatch("expected " + std::to_string(s.size()) + " operations, got " + std::to_string(ops.size()));
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (ops[k].in_size() != s[k].in.size || ops[k].out_size() != s[k].out.size) {
      throw SignatureMismatch("operation " + std::to_string(k + 1) + " does not fit its slot");
    }
  }
}

std::vector<Element> ProcessFunction::link(std::span<const LocalOperation> ops) const {
  std::vector<Element> out(past().size);
  for (Element a = 0; a < past().size; ++a) {
    auto fps = fixed_points(*this, a, ops);
    if (fps.size() != 1) {
      throw InconsistentProcess("link: " + std::to_string(fps.size()) + " fixed points at a=" + std::to_string(a),
                                fps.size());
    }
    out[a] = fps.front().future;
  }
  return out;
}

// ---------------------------------------------------------------------------

TableProcess::TableProcess(FiniteSpace past, FiniteSpace future, std::vector<Slot> slots, std::vector<ProcessRow> rows)
    : past_(past), future_(future), slots_(std::move(slots)), rows_(std::move(rows)) {
  check_space(past_, "TableProcess");
  check_space(future_, "TableProcess");
  for (const auto& s : slots_) {
    check_space(s.in, "TableProcess");
    check_space(s.out, "TableProcess");
  }
  const std::uint64_t expected = sat_mul(past_.size, output_tuple_count());
  if (expected != rows_.size()) {
    throw SignatureMismatch("TableProcess: expected " + std::to_string(expected) + " rows, got " +
                            std::to_string(rows_.size()));
  }
  for (const auto& r : rows_) {
    if (r.inputs.size() != slots_.size()) throw SignatureMismatch("TableProcess: row has wrong input count");
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      if (r.inputs[k] >= slots_[k].in.size) throw std::out_of_range("TableProcess: input outside I_k");
    }
    if (r.future >= future_.size) throw std::out_of_range("TableProcess: future value outside F");
  }
}

TableProcess TableProcess::from_rule(FiniteSpace past, FiniteSpace future, std::vector<Slot> slots, const Rule& rule) {
  std::uint64_t tuples = 1;
  for (const auto& s : slots) tuples = sat_mul(tuples, s.out.size);
  if (sat_mul(tuples, past.size) > (std::uint64_t{1} << 26)) throw BudgetExceeded("TableProcess: table too large");
  std::vector<ProcessRow> rows;
  rows.reserve(past.size * tuples);
  std::vector<Element> o(slots.size());
  for (Element a = 0; a < past.size; ++a) {
    for (std::uint64_t idx = 0; idx < tuples; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t k = slots.size(); k-- > 0;) {
        o[k] = rest % slots[k].out.size;
        rest /= slots[k].out.size;
      }
      rows.push_back(rule(a, o));
    }
  }
  return TableProcess(past, future, std::move(slots), std::move(rows));
}

TableProcess TableProcess::materialize(const ProcessFunction& w) {
  return from_rule(w.past(), w.future(), w.slots(),
                   [&w](Element a, std::span<const Element> o) { return w.row(a, o); });
}

ProcessRow TableProcess::row(Element a, std::span<const Element> outputs) const {
  return row_at(a, output_index(outputs));
}

const ProcessRow& TableProcess::row_at(Element a, std::uint64_t output_index) const {
  if (a >= past_.size) throw std::out_of_range("past value outside P");
  return rows_.at(a * output_tuple_count() + output_index);
}

bool operator==(const TableProcess& a, const TableProcess& b) {
  return a.past_ == b.past_ && a.future_ == b.future_ && a.slots_ == b.slots_ && a.rows_ == b.rows_;
}

// ---------------------------------------------------------------------------

InducedFunctions induced_functions(const TableProcess& w) {
  InducedFunctions parts;
  parts.inputs.assign(w.slot_count(), std::vector<Element>(w.rows().size()));
  parts.future.resize(w.rows().size());
  for (std::size_t r = 0; r < w.rows().size(); ++r) {
    for (std::size_t k = 0; k < w.slot_count(); ++k) parts.inputs[k][r] = w.rows()[r].inputs[k];
    parts.future[r] = w.rows()[r].future;
  }
  return parts;
}

TableProcess assemble(FiniteSpace past, FiniteSpace future, std::vector<Slot> slots, const InducedFunctions& parts) {
  if (parts.inputs.size() != slots.size()) throw SignatureMismatch("assemble: component count differs from slots");
  std::vector<ProcessRow> rows(parts.future.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r].inputs.resize(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k) rows[r].inputs[k] = parts.inputs[k].at(r);
    rows[r].future = parts.future[r];
  }
  return TableProcess(past, future, std::move(slots), std::move(rows));
}

// ---------------------------------------------------------------------------

std::vector<ProcessRow> fixed_points(const ProcessFunction& w, Element a, std::span<const LocalOperation> ops) {
  w.check_operations(ops);
  const auto& slots = w.slots();
  const std::uint64_t tuples = w.output_tuple_count();
  std::vector<ProcessRow> found;
  std::vector<Element> o(slots.size(), 0);
  for (std::uint64_t idx = 0; idx < tuples; ++idx) {
    ProcessRow r = w.row(a, o);
    bool consistent = true;
    for (std::size_t k = 0; k < slots.size() && consistent; ++k) consistent = ops[k](r.inputs[k]) == o[k];
    if (consistent) found.push_back(std::move(r));
    // Odometer increment, last slot fastest.
    for (std::size_t k = slots.size(); k-- > 0;) {
      if (++o[k] < slots[k].out.size) break;
      o[k] = 0;
    }
  }
  return found;
}

std::uint64_t count_fixed_points(const ProcessFunction& w, Element a, std::span<const LocalOperation> ops) {
  return fixed_points(w, a, ops).size();
}

std::vector<Element> fixed_point(const ProcessFunction& w, Element a, std::span<const LocalOperation> ops) {
  auto fps = fixed_points(w, a, ops);
  if (fps.size() != 1) {
    throw InconsistentProcess("fixed_point: found " + std::to_string(fps.size()) + " fixed points", fps.size());
  }
  return std::move(fps.front().inputs);
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> find_self_signalling(const TableProcess& w) {
  const auto& slots = w.slots();
  const std::uint64_t tuples = w.output_tuple_count();
  for (Element a = 0; a < w.past().size; ++a) {
    for (std::uint64_t idx = 0; idx < tuples; ++idx) {
      const auto o = w.outputs_at(idx);
      const auto& base = w.row_at(a, idx);
      for (std::size_t k = 0; k < slots.size(); ++k) {
        auto other = o;
        for (Element v = 0; v < slots[k].out.size; ++v) {
          other[k] = v;
          if (w.row_at(a, w.output_index(other)).inputs[k] != base.inputs[k]) return k;
        }
      }
    }
  }
  return std::nullopt;
}

ValidityVerdict validate_process(const TableProcess& w, std::uint64_t budget) {
  const auto& slots = w.slots();
  std::uint64_t total = w.past().size;
  for (const auto& s : slots) total = sat_mul(total, sat_pow(s.out.size, s.in.size));
  if (total > budget) {
    throw BudgetExceeded("validate_process: " + std::to_string(total) + " operation tuples exceed budget " +
                         std::to_string(budget));
  }

  ValidityVerdict verdict;
  verdict.self_signalling_slot = find_self_signalling(w);

  const std::size_t T = slots.size();
  std::vector<std::uint64_t> op_counts(T);
  for (std::size_t k = 0; k < T; ++k) op_counts[k] = sat_pow(slots[k].out.size, slots[k].in.size);

  const std::uint64_t tuples = w.output_tuple_count();
  std::vector<std::vector<Element>> outputs(tuples);
  for (std::uint64_t idx = 0; idx < tuples; ++idx) outputs[idx] = w.outputs_at(idx);

  std::vector<std::uint64_t> codes(T, 0);
  std::vector<LocalOperation> ops(T);
  for (Element a = 0; a < w.past().size; ++a) {
    std::fill(codes.begin(), codes.end(), 0);
    for (std::size_t k = 0; k < T; ++k) ops[k] = LocalOperation::enumerate(slots[k].in.size, slots[k].out.size, 0);
    while (true) {
      std::uint64_t count = 0;
      for (std::uint64_t idx = 0; idx < tuples; ++idx) {
        const auto& r = w.row_at(a, idx);
        bool consistent = true;
        for (std::size_t k = 0; k < T && consistent; ++k) consistent = ops[k](r.inputs[k]) == outputs[idx][k];
        if (consistent) ++count;
      }
      ++verdict.tuples_checked;
      if (count != 1) {
        verdict.valid = false;
        verdict.witness_past = a;
        verdict.witness_ops = ops;
        verdict.witness_fixed_points = count;
        return verdict;
      }
      std::size_t k = T;
      while (k-- > 0) {
        if (++codes[k] < op_counts[k]) {
          ops[k] = LocalOperation::enumerate(slots[k].in.size, slots[k].out.size, codes[k]);
          break;
        }
        codes[k] = 0;
        ops[k] = LocalOperation::enumerate(slots[k].in.size, slots[k].out.size, 0);
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  verdict.valid = true;
  return verdict;
}

// ---------------------------------------------------------------------------

TableProcess reduce_by_operation(const TableProcess& w, std::size_t k, const LocalOperation& op) {
  const auto& slots = w.slots();
  if (k >= slots.size()) throw std::out_of_range("reduce_by_operation: slot index out of range");
  if (op.in_size() != slots[k].in.size || op.out_size() != slots[k].out.size) {
    throw SignatureMismatch("reduce_by_operation: operation does not fit the slot");
  }
  std::vector<Slot> rest = slots;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
  return TableProcess::from_rule(w.past(), w.future(), rest, [&](Element a, std::span<const Element> o) {
    std::vector<Element> full(slots.size());
    for (std::size_t j = 0, m = 0; j < slots.size(); ++j) full[j] = j == k ? 0 : o[m++];
    // w_k does not depend on o_k, so probing with o_k = 0 is enough.
    full[k] = op(w.row(a, full).inputs[k]);
    ProcessRow r = w.row(a, full);
    r.inputs.erase(r.inputs.begin() + static_cast<std::ptrdiff_t>(k));
    return r;
  });
}

TableProcess reduce_by_past(const TableProcess& w, Element a) {
  if (a >= w.past().size) throw std::out_of_range("reduce_by_past: value outside P");
  return TableProcess::from_rule(FiniteSpace::trivial(), w.future(), w.slots(),
                                 [&](Element, std::span<const Element> o) { return w.row(a, o); });
}

// ---------------------------------------------------------------------------

std::vector<LocalOperation> oracle_operations(const ProcessFunction& w, const BitString& x) {
  const auto op = LocalOperation::oracle(ClassicalOracle(x));
  std::vector<LocalOperation> ops(w.slot_count(), op);
  w.check_operations(ops);
  return ops;
}

ComputesVerdict computes(const ProcessFunction& w, const BooleanFunction& f, const ComputesOptions& options) {
  if (w.future().size != 2) throw SignatureMismatch("computes: future space must be binary");
  const int n = f.arity();
  ComputesVerdict verdict;
  auto check = [&](const BitString& x) {
    const auto out = w.link(oracle_operations(w, x));
    ++verdict.checked;
    for (Element b : out) {
      if ((b != 0) != f(x)) {
        verdict.counterexample = x;
        return false;
      }
    }
    return true;
  };
  if (n <= options.exhaustive_bits) {
    verdict.exhaustive = true;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
      if (!check(BitString::from_index(static_cast<std::size_t>(n), idx))) return verdict;
    }
  } else {
    std::mt19937_64 rng(options.seed);
    std::bernoulli_distribution coin(0.5);
    for (std::uint64_t s = 0; s < options.samples; ++s) {
      BitString x(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) x.set(static_cast<std::size_t>(i), coin(rng));
      if (!check(x)) return verdict;
    }
  }
  verdict.holds = true;
  return verdict;
}

}  // namespace icq
