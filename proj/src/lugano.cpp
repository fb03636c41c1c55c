#include "icq/lugano.hpp"

namespace icq {

namespace {

std::vector<Slot> binary_slots(std::size_t T, FiniteSpace in) {
  return std::vector<Slot>(T, Slot{in, FiniteSpace::binary()});
}

// w_k for 0-based k.
Element lugano_component(std::span<const Element> o, std::size_t k) {
  return (1 - o[(k + 1) % 3]) * o[(k + 2) % 3];
}

}  // namespace

TableProcess lugano() {
  return TableProcess::from_rule(FiniteSpace::trivial(), FiniteSpace::trivial(),
                                 binary_slots(3, FiniteSpace::binary()), [](Element, std::span<const Element> o) {
                                   ProcessRow r;
                                   for (std::size_t k = 0; k < 3; ++k) r.inputs.push_back(lugano_component(o, k));
                                   return r;
                                 });
}

bool lugano_bar_future(bool o1, bool o2, bool o3) {
  return (o1 && !o2 && o3) ^ (o2 && !o3 && o1) ^ (o3 && !o1 && o2) ^ (o1 && o2 && o3);
}

TableProcess lugano_bar() {
  return TableProcess::from_rule(FiniteSpace::trivial(), FiniteSpace::binary(),
                                 binary_slots(3, FiniteSpace::indices(6)), [](Element, std::span<const Element> o) {
                                   ProcessRow r;
                                   for (std::size_t k = 0; k < 3; ++k) r.inputs.push_back(k + 3 * lugano_component(o, k));
                                   r.future = lugano_bar_future(o[0] != 0, o[1] != 0, o[2] != 0) ? 1 : 0;
                                   return r;
                                 });
}

namespace {

bool f6c_value(bool x1, bool x2, bool x3, bool x4, bool x5, bool x6) {
  return (x4 && !x2 && x3) ^ (x5 && !x3 && x1) ^ (x6 && !x1 && x2) ^ (x1 && x2 && x3);
}

}  // namespace

BooleanFunction f6c() {
  return BooleanFunction::from_evaluator(6, [](const BitString& x) {
    return f6c_value(x[0], x[1], x[2], x[3], x[4], x[5]);
  });
}

BooleanFunction f6q() {
  return BooleanFunction::from_evaluator(6, [](const BitString& x) {
    return f6c_value(x[0] != x[3], x[1] != x[4], x[2] != x[5], x[3], x[4], x[5]);
  });
}

std::string BitExpr::to_string() const { return var == 0 ? (value ? "1" : "0") : "x" + std::to_string(var); }

namespace {

const BitExpr k0 = BitExpr::constant(false);
const BitExpr k1 = BitExpr::constant(true);
const BitExpr x4 = BitExpr::variable(4);
const BitExpr x5 = BitExpr::variable(5);
const BitExpr x6 = BitExpr::variable(6);

}  // namespace

const std::array<ReducedRow, 8>& f6c_reduced_table() {
  static const std::array<ReducedRow, 8> rows{{
      {{0, 0, 0}, k0},
      {{1, 0, 0}, x5},
      {{0, 1, 0}, x6},
      {{0, 0, 1}, x4},
      {{1, 1, 0}, x5},
      {{1, 0, 1}, x4},
      {{0, 1, 1}, x6},
      {{1, 1, 1}, k1},
  }};
  return rows;
}

const std::array<ReducedRow, 8>& f6q_reduced_table() {
  // Same shape; the key is the parity triple.
  return f6c_reduced_table();
}

const std::array<FixedPointRow, 8>& lugano_bar_fixed_point_rows() {
  static const std::array<FixedPointRow, 8> rows{{
      {{0, 0, 0}, {1, 2, 3}, {k0, k0, k0}, k0},
      {{1, 0, 0}, {1, 5, 3}, {k1, x5, k0}, x5},
      {{0, 1, 0}, {1, 2, 6}, {k0, k1, x6}, x6},
      {{0, 0, 1}, {4, 2, 3}, {x4, k0, k1}, x4},
      {{1, 1, 0}, {1, 5, 3}, {k1, x5, k0}, x5},
      {{1, 0, 1}, {4, 2, 3}, {x4, k0, k1}, x4},
      {{0, 1, 1}, {1, 2, 6}, {k0, k1, x6}, x6},
      {{1, 1, 1}, {1, 2, 3}, {k1, k1, k1}, k1},
  }};
  return rows;
}

const std::array<QuantumRegisterRow, 8>& quantum_register_rows() {
  static const std::array<QuantumRegisterRow, 8> rows{{
      {{0, 0, 0}, {k0, k0, k0}, {0, 0, 0}, k0},
      {{1, 0, 0}, {k1, x5, k0}, {0, 1, 0}, x5},
      {{0, 1, 0}, {k0, k1, x6}, {0, 0, 1}, x6},
      {{0, 0, 1}, {x4, k0, k1}, {1, 0, 0}, x4},
      {{1, 1, 0}, {k1, x5, k0}, {0, 1, 0}, x5},
      {{1, 0, 1}, {x4, k0, k1}, {1, 0, 0}, x4},
      {{0, 1, 1}, {k0, k1, x6}, {0, 0, 1}, x6},
      {{1, 1, 1}, {k1, k1, k1}, {0, 0, 0}, k1},
  }};
  return rows;
}

}  // namespace icq
