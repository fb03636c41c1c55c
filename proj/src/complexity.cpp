#include "icq/complexity.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "icq/errors.hpp"

namespace icq {

std::vector<std::int64_t> multilinear_coefficients(const BooleanFunction& f) {
  const auto table = f.table();
  std::vector<std::int64_t> coeff(table.begin(), table.end());
  for (std::size_t bit = 1; bit < coeff.size(); bit <<= 1) {
    for (std::size_t mask = 0; mask < coeff.size(); ++mask) {
      if (mask & bit) coeff[mask] -= coeff[mask ^ bit];
    }
  }
  return coeff;
}

std::int64_t evaluate_multilinear(std::span<const std::int64_t> coefficients, const BitString& x) {
  const std::uint64_t xi = x.index();
  std::int64_t sum = 0;
  for (std::size_t mask = 0; mask < coefficients.size(); ++mask) {
    // A monomial is 1 exactly when all of its variables are 1.
    if ((mask & xi) == mask) sum += coefficients[mask];
  }
  return sum;
}

int degree(const BooleanFunction& f) {
  const auto coeff = multilinear_coefficients(f);
  int deg = 0;
  for (std::size_t mask = 0; mask < coeff.size(); ++mask) {
    if (coeff[mask] != 0) deg = std::max(deg, std::popcount(mask));
  }
  return deg;
}

namespace {

// Bit (n - i) of a table index holds x_i.
std::uint64_t index_bit(int n, int one_based) { return std::uint64_t{1} << (n - one_based); }

bool certifies(std::span<const std::uint8_t> table, int n, std::uint64_t x, std::uint64_t fixed_mask) {
  const std::uint8_t fx = table[x];
  const std::uint64_t free_mask = (~fixed_mask) & ((std::uint64_t{1} << n) - 1);
  // Enumerate all submasks of the free positions.
  std::uint64_t sub = free_mask;
  const std::uint64_t base = x & fixed_mask;
  while (true) {
    if (table[base | sub] != fx) return false;
    if (sub == 0) break;
    sub = (sub - 1) & free_mask;
  }
  return true;
}

// Advances `comb` (strictly increasing, values in 1..n) to the next
// combination in lexicographic order. Returns false when exhausted.
bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

std::vector<int> minimal_certificate(std::span<const std::uint8_t> table, int n, std::uint64_t x) {
  for (int size = 0; size <= n; ++size) {
    std::vector<int> comb(static_cast<std::size_t>(size));
    for (int j = 0; j < size; ++j) comb[static_cast<std::size_t>(j)] = j + 1;
    do {
      std::uint64_t mask = 0;
      for (int i : comb) mask |= index_bit(n, i);
      if (certifies(table, n, x, mask)) return comb;
    } while (next_combination(comb, n));
  }
  throw std::logic_error("certificate: the full index set must certify");
}

}  // namespace

bool is_certificate(const BooleanFunction& f, const BitString& x, std::span<const int> indices) {
  const auto table = f.table();
  if (x.size() != static_cast<std::size_t>(f.arity())) throw ArityMismatch("certificate: input length mismatch");
  std::uint64_t mask = 0;
  for (int i : indices) {
    if (i < 1 || i > f.arity()) throw std::out_of_range("certificate index outside 1..n");
    mask |= index_bit(f.arity(), i);
  }
  return certifies(table, f.arity(), x.index(), mask);
}

std::vector<int> certificate(const BooleanFunction& f, const BitString& x) {
  const auto table = f.table();
  if (x.size() != static_cast<std::size_t>(f.arity())) throw ArityMismatch("certificate: input length mismatch");
  return minimal_certificate(table, f.arity(), x.index());
}

int certificate_complexity(const BooleanFunction& f) {
  const auto table = f.table();
  int worst = 0;
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    worst = std::max(worst, static_cast<int>(minimal_certificate(table, f.arity(), x).size()));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Decision-tree complexity

namespace {

/// Truth table over m variables, packed 64 entries per word; variable 0 is
/// the most significant index bit.
struct PackedTable {
  int vars = 0;
  std::vector<std::uint64_t> words;

  std::uint64_t size() const { return std::uint64_t{1} << vars; }
  bool get(std::uint64_t i) const { return (words[i >> 6] >> (i & 63)) & 1U; }
  void set(std::uint64_t i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }

  static PackedTable zeros(int m) {
    PackedTable t;
    t.vars = m;
    t.words.assign(std::max<std::uint64_t>(1, (std::uint64_t{1} << m) / 64 + ((std::uint64_t{1} << m) % 64 ? 1 : 0)), 0);
    return t;
  }

  bool constant(bool* value) const {
    const bool first = get(0);
    const std::uint64_t n = size();
    const std::uint64_t full_words = n / 64;
    for (std::uint64_t w = 0; w < full_words; ++w) {
      if (words[w] != (first ? ~std::uint64_t{0} : 0)) return false;
    }
    for (std::uint64_t i = full_words * 64; i < n; ++i) {
      if (get(i) != first) return false;
    }
    if (value) *value = first;
    return true;
  }

  PackedTable restrict(int var, bool value) const {
    PackedTable out = zeros(vars - 1);
    const int pos = vars - 1 - var;
    const std::uint64_t low_mask = (std::uint64_t{1} << pos) - 1;
    const std::uint64_t b = value ? 1 : 0;
    for (std::uint64_t j = 0; j < out.size(); ++j) {
      const std::uint64_t old = ((j >> pos) << (pos + 1)) | (b << pos) | (j & low_mask);
      if (get(old)) out.set(j);
    }
    return out;
  }

  std::string key() const {
    std::string k(1, static_cast<char>(vars));
    k.append(reinterpret_cast<const char*>(words.data()), words.size() * sizeof(std::uint64_t));
    return k;
  }
};

class QueryDepthSolver {
 public:
  int depth(const PackedTable& g) {
    if (g.constant(nullptr)) return 0;
    auto key = g.key();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    int best = std::numeric_limits<int>::max();
    for (int v = 0; v < g.vars && best > 1; ++v) {
      const int d0 = depth(g.restrict(v, false));
      if (1 + d0 >= best) continue;
      const int d1 = depth(g.restrict(v, true));
      best = std::min(best, 1 + std::max(d0, d1));
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

  DecisionTree witness(const PackedTable& g, const std::vector<int>& original_index) {
    bool value = false;
    if (g.constant(&value)) return DecisionTree::leaf(value);
    const int target = depth(g);
    // Free variables are kept in increasing original index order, so the
    // first optimal v is the smallest optimal index.
    for (int v = 0; v < g.vars; ++v) {
      PackedTable g0 = g.restrict(v, false);
      PackedTable g1 = g.restrict(v, true);
      if (1 + std::max(depth(g0), depth(g1)) != target) continue;
      std::vector<int> rest = original_index;
      rest.erase(rest.begin() + v);
      return DecisionTree::query(original_index[static_cast<std::size_t>(v)], witness(g0, rest), witness(g1, rest));
    }
    throw std::logic_error("witness: no optimal query found");
  }

 private:
  std::unordered_map<std::string, int> memo_;
};

}  // namespace

QueryComplexity deterministic_query_complexity(const BooleanFunction& f) {
  const auto table = f.table();
  PackedTable g = PackedTable::zeros(f.arity());
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    if (table[i]) g.set(i);
  }
  QueryDepthSolver solver;
  QueryComplexity result;
  result.depth = solver.depth(g);
  std::vector<int> indices(static_cast<std::size_t>(f.arity()));
  for (int i = 0; i < f.arity(); ++i) indices[static_cast<std::size_t>(i)] = i + 1;
  result.tree = solver.witness(g, indices);
  return result;
}

// ---------------------------------------------------------------------------

Restriction::Restriction(BooleanFunction base)
    : base_(std::move(base)), fixed_(static_cast<std::size_t>(base_.arity())) {}

Restriction& Restriction::assign(int index, bool value) {
  if (index < 1 || index > base_.arity()) throw std::out_of_range("Restriction::assign: index outside 1..n");
  fixed_[static_cast<std::size_t>(index - 1)] = value;
  return *this;
}

std::optional<bool> Restriction::assignment(int index) const {
  if (index < 1 || index > base_.arity()) throw std::out_of_range("Restriction::assignment: index outside 1..n");
  return fixed_[static_cast<std::size_t>(index - 1)];
}

std::vector<int> Restriction::free_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < fixed_.size(); ++i) {
    if (!fixed_[i]) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

bool Restriction::operator()(const BitString& x) const {
  if (x.size() != fixed_.size()) throw ArityMismatch("Restriction: input length mismatch");
  BitString y = x;
  for (std::size_t i = 0; i < fixed_.size(); ++i) {
    if (fixed_[i]) y.set(i, *fixed_[i]);
  }
  return base_(y);
}

BooleanFunction Restriction::as_function() const {
  const auto free = free_indices();
  if (free.empty()) throw PreconditionViolated("Restriction::as_function: no free variables left");
  auto self = *this;
  return BooleanFunction::from_evaluator(static_cast<int>(free.size()), [self, free](const BitString& z) {
    BitString y(self.fixed_.size());
    for (std::size_t j = 0; j < free.size(); ++j) y.set(static_cast<std::size_t>(free[j] - 1), z[j]);
    return self(y);
  });
}

bool Restriction::is_constant() const {
  const auto free = free_indices();
  if (free.empty()) return true;
  const auto g = as_function();
  const auto t = g.table();
  return std::all_of(t.begin(), t.end(), [&](std::uint8_t v) { return v == t[0]; });
}

bool Restriction::value() const {
  if (!is_constant()) throw PreconditionViolated("Restriction::value: restriction is not constant");
  return (*this)(BitString(fixed_.size()));
}

}  // namespace icq
