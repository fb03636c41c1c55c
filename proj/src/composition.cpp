#include "icq/composition.hpp"

#include <random>
#include <string>

#include "icq/complexity.hpp"
#include "icq/errors.hpp"

namespace icq {

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

bool eval_recursive(const BooleanFunction& f, const BitString& x, std::size_t offset, int depth) {
  const auto n = static_cast<std::size_t>(f.arity());
  if (depth == 1) return f(x.slice(offset, n));
  const std::size_t block = ipow(n, depth - 1);
  BitString values(n);
  for (std::size_t b = 0; b < n; ++b) values.set(b, eval_recursive(f, x, offset + b * block, depth - 1));
  return f(values);
}

}  // namespace

RecursiveFunction recurse_function(const BooleanFunction& f, int depth) {
  if (depth < 1) throw std::invalid_argument("recurse_function: depth must be >= 1");
  const std::uint64_t bits = ipow(static_cast<std::uint64_t>(f.arity()), depth);
  if (bits > 62) throw BudgetExceeded("recurse_function: more than 62 input bits");
  if (depth == 1) return {f, 1, f};
  auto eval = [f, depth](const BitString& x) { return eval_recursive(f, x, 0, depth); };
  return {f, depth, BooleanFunction::from_evaluator(static_cast<int>(bits), eval)};
}

// ---------------------------------------------------------------------------

ShiftedProcess::ShiftedProcess(std::shared_ptr<const ProcessFunction> inner, std::uint64_t blocks)
    : inner_(std::move(inner)), block_(0), past_{blocks, 1} {
  if (inner_->past().size != 1) throw SignatureMismatch("shift_process: inner past must be trivial");
  if (blocks < 1) throw std::invalid_argument("shift_process: need at least one block");
  const auto& inner_slots = inner_->slots();
  if (inner_slots.empty()) throw SignatureMismatch("shift_process: inner process has no slots");
  block_ = inner_slots.front().in.size;
  for (const auto& s : inner_slots) {
    if (s.in.size != block_) throw SignatureMismatch("shift_process: inner slot inputs differ in size");
    slots_.push_back(Slot{FiniteSpace{blocks * block_, s.in.label_offset}, s.out});
  }
}

ProcessRow ShiftedProcess::row(Element a, std::span<const Element> outputs) const {
  if (a >= past_.size) throw std::out_of_range("ShiftedProcess: past value outside P");
  ProcessRow r = inner_->row(0, outputs);
  for (auto& i : r.inputs) i += a * block_;
  return r;
}

std::vector<Element> ShiftedProcess::link(std::span<const LocalOperation> ops) const {
  check_operations(ops);
  std::vector<Element> out(past_.size);
  std::vector<LocalOperation> restricted(ops.size());
  for (Element a = 0; a < past_.size; ++a) {
    for (std::size_t k = 0; k < ops.size(); ++k) {
      auto full = ops[k].map();
      restricted[k] = LocalOperation(std::vector<Element>(full.begin() + static_cast<std::ptrdiff_t>(a * block_),
                                                          full.begin() + static_cast<std::ptrdiff_t>((a + 1) * block_)),
                                     ops[k].out_size());
    }
    out[a] = inner_->link(restricted).front();
  }
  return out;
}

std::shared_ptr<const ShiftedProcess> shift_process(std::shared_ptr<const ProcessFunction> inner, std::uint64_t n) {
  return std::make_shared<const ShiftedProcess>(std::move(inner), n);
}

// ---------------------------------------------------------------------------

ComposedProcess::ComposedProcess(std::shared_ptr<const ProcessFunction> outer,
                                 std::shared_ptr<const ProcessFunction> inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  for (const auto& s : outer_->slots()) {
    if (s.in.size != inner_->past().size || s.out.size != inner_->future().size) {
      throw SignatureMismatch("compose_process: outer slot does not match inner (P, F)");
    }
    for (const auto& t : inner_->slots()) slots_.push_back(t);
  }
}

ProcessRow ComposedProcess::row(Element a, std::span<const Element> outputs) const {
  const std::size_t T = outer_->slot_count();
  const std::size_t Ti = inner_->slot_count();
  if (outputs.size() != T * Ti) throw SignatureMismatch("ComposedProcess: output tuple length");
  // The inner future ignores the inner past, so it can be read at 0 first.
  std::vector<Element> b(T);
  for (std::size_t k = 0; k < T; ++k) b[k] = inner_->row(0, outputs.subspan(k * Ti, Ti)).future;
  const ProcessRow outer_row = outer_->row(a, b);
  ProcessRow r;
  r.future = outer_row.future;
  for (std::size_t k = 0; k < T; ++k) {
    const ProcessRow inner_row = inner_->row(outer_row.inputs[k], outputs.subspan(k * Ti, Ti));
    r.inputs.insert(r.inputs.end(), inner_row.inputs.begin(), inner_row.inputs.end());
  }
  return r;
}

std::vector<Element> ComposedProcess::link(std::span<const LocalOperation> ops) const {
  check_operations(ops);
  const std::size_t T = outer_->slot_count();
  const std::size_t Ti = inner_->slot_count();
  std::vector<LocalOperation> outer_ops;
  outer_ops.reserve(T);
  for (std::size_t k = 0; k < T; ++k) {
    outer_ops.emplace_back(inner_->link(ops.subspan(k * Ti, Ti)), inner_->future().size);
  }
  return outer_->link(outer_ops);
}

std::shared_ptr<const ComposedProcess> compose_process(std::shared_ptr<const ProcessFunction> outer,
                                                       std::shared_ptr<const ProcessFunction> shifted_inner) {
  return std::make_shared<const ComposedProcess>(std::move(outer), std::move(shifted_inner));
}

std::shared_ptr<const ProcessFunction> recursive_process(std::shared_ptr<const ProcessFunction> w, int depth) {
  if (depth < 1) throw std::invalid_argument("recursive_process: depth must be >= 1");
  if (depth == 1) return w;
  const std::uint64_t n = w->slots().at(0).in.size;
  return compose_process(w, shift_process(recursive_process(w, depth - 1), n));
}

// ---------------------------------------------------------------------------

CompositionCheck verify_composition(std::shared_ptr<const ProcessFunction> w, const BooleanFunction& f, int depth,
                                    const CompositionCheckOptions& options) {
  const auto process = recursive_process(w, depth);
  const auto rf = recurse_function(f, depth);
  const std::size_t n = static_cast<std::size_t>(f.arity());
  const std::size_t bits = rf.arity();

  CompositionCheck check;
  check.depth = depth;
  check.slots = process->slot_count();
  check.input_bits = bits;

  auto run = [&](const BitString& x) {
    const bool got = process->link(oracle_operations(*process, x)).front() != 0;
    ++check.checked;
    if (got == rf(x)) {
      ++check.agreed;
    } else if (!check.first_mismatch) {
      check.first_mismatch = x;
    }
  };

  if (bits <= 20) {
    check.exhaustive = true;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << bits); ++idx) run(BitString::from_index(bits, idx));
    return check;
  }

  if (options.structured) {
    const std::size_t block = bits / n;
    std::vector<BitString> structured;
    structured.emplace_back(std::vector<std::uint8_t>(bits, 0));
    structured.emplace_back(std::vector<std::uint8_t>(bits, 1));
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n); ++pattern) {
      BitString x(bits);
      const BitString p = BitString::from_index(n, pattern);
      for (std::size_t i = 0; i < bits; ++i) x.set(i, p[i / block]);
      structured.push_back(std::move(x));
    }
    for (const auto& x : structured) run(x);
    check.structured_checked = structured.size();
  }

  std::mt19937_64 rng(options.seed);
  std::bernoulli_distribution coin(0.5);
  for (std::uint64_t s = 0; s < options.samples; ++s) {
    BitString x(bits);
    for (std::size_t i = 0; i < bits; ++i) x.set(i, coin(rng));
    run(x);
  }
  return check;
}

std::vector<SeparationRow> separation_report(const BooleanFunction& f, std::uint64_t T, int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("separation_report: depth must be >= 1");
  const auto base = static_cast<std::uint64_t>(deterministic_query_complexity(f).depth);
  std::vector<SeparationRow> rows;
  for (int l = 1; l <= max_depth; ++l) rows.push_back({l, ipow(T, l), ipow(base, l), l == 1});
  return rows;
}

}  // namespace icq
