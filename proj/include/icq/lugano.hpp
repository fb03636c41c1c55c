#pragma once

#include <array>
#include <string>

#include "icq/boolean_function.hpp"
#include "icq/process.hpp"

namespace icq {

/// The 3-slot Lugano process with binary slots and trivial past/future:
/// w_k(o) = (1 + o_{k+1}) o_{k+2}, slot indices taken cyclically.
TableProcess lugano();

/// Lugano with I_k = {1..6}: slot k receives k when w_k = 0 and k+3 when
/// w_k = 1. The binary future is
///   o1(1+o2)o3 + o2(1+o3)o1 + o3(1+o1)o2 + o1o2o3  (mod 2).
TableProcess lugano_bar();

/// Future bit of lugano_bar.
bool lugano_bar_future(bool o1, bool o2, bool o3);

/// f(x) = x4(1+x2)x3 + x5(1+x3)x1 + x6(1+x1)x2 + x1x2x3  (mod 2).
BooleanFunction f6c();
/// f6c(x1+x4, x2+x5, x3+x6, x4, x5, x6).
BooleanFunction f6q();

/// A bit that is either a constant or one input variable x_i (1-based).
struct BitExpr {
  int var = 0;
  bool value = false;

  static BitExpr constant(bool v) { return {0, v}; }
  static BitExpr variable(int i) { return {i, false}; }

  bool operator()(const BitString& x) const { return var == 0 ? value : x.at(var); }
  std::string to_string() const;
  friend bool operator==(const BitExpr&, const BitExpr&) = default;
};

/// One row of the reduced truth table, keyed by three selector bits: for
/// f6c these are (x1, x2, x3), for f6q the parities (x1+x4, x2+x5, x3+x6).
struct ReducedRow {
  std::array<int, 3> key;
  BitExpr value;
};
const std::array<ReducedRow, 8>& f6c_reduced_table();
const std::array<ReducedRow, 8>& f6q_reduced_table();

/// lugano_bar on three copies of O_x: the fixed-point queries j_k (1-based
/// indices), the answers o_k = x_{j_k} and the future bit, keyed by (x1,x2,x3).
struct FixedPointRow {
  std::array<int, 3> key;
  std::array<int, 3> queries;
  std::array<BitExpr, 3> answers;
  BitExpr future;
};
const std::array<FixedPointRow, 8>& lugano_bar_fixed_point_rows();

/// Registers after the quantum Lugano supermap acts on three phase oracles,
/// keyed by the parities: F holds (o1,o2,o3), alpha the three slot inputs.
struct QuantumRegisterRow {
  std::array<int, 3> parities;
  std::array<BitExpr, 3> f_register;
  std::array<int, 3> alpha;
  BitExpr value;
};
const std::array<QuantumRegisterRow, 8>& quantum_register_rows();

/// The row whose key matches `key`; rows are not in binary order.
template <class Row>
const Row& row_for_key(const std::array<Row, 8>& rows, const std::array<int, 3>& key) {
  for (const auto& r : rows) {
    if constexpr (requires { r.parities; }) {
      if (r.parities == key) return r;
    } else {
      if (r.key == key) return r;
    }
  }
  return rows.front();
}

}  // namespace icq
