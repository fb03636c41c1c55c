#pragma once

#include <cstdint>
#include <string>

#include "icq/decision_tree.hpp"
#include "icq/process.hpp"

namespace icq {

/// Which local operations the recursive definiteness test plugs in.
enum class CausalRegime {
  /// Only constant operations mu(.) = o. Sufficient for query processes
  /// with a trivial past; the default.
  ConstantOperations,
  /// Every map I_k -> O_k. Exact but exponential in |I_k|.
  AllOperations,
};

std::string to_string(CausalRegime regime);

struct CausalOptions {
  CausalRegime regime = CausalRegime::ConstantOperations;
  /// Maximum number of reduced processes examined.
  std::uint64_t budget = std::uint64_t{1} << 20;
};

struct CausalVerdict {
  bool definite = false;
  CausalRegime regime = CausalRegime::ConstantOperations;
  std::uint64_t processes_examined = 0;
};

/// A process is causally definite when T <= 1, or (for each past value a)
/// some induced input w_k is constant and every reduced process w^{|mu_k}
/// is again causally definite.
CausalVerdict is_causally_definite(const TableProcess& w, const CausalOptions& options = {});

/// Reads off the query algorithm of a causally definite process with trivial
/// past, binary outputs and binary future. A slot whose constant input is
/// element e becomes a query of x_{e+1}. The tree has depth T.
DecisionTree extract_decision_tree(const TableProcess& w);

/// The T-slot process running `tree` on an n-bit oracle, T = max(1, depth).
/// Slot k receives the index queried at level k of the path fixed by
/// o_1..o_{k-1}; the future is the leaf reached.
TableProcess process_from_tree(const DecisionTree& tree, int arity);

}  // namespace icq
