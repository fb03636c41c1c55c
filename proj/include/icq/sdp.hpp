#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "icq/boolean_function.hpp"

namespace icq::sdp {

/// E_0 (all ones) and E_i with <x|E_i|y> = (-1)^{x_i + y_i}; F_0, F_1 the
/// diagonal indicators of f^{-1}(0) and f^{-1}(1). Indices use the truth
/// table convention.
struct OracleMatrices {
  std::vector<Eigen::MatrixXd> E;
  Eigen::MatrixXd F0;
  Eigen::MatrixXd F1;
};

OracleMatrices oracle_matrices(const BooleanFunction& f);

/// Coefficient on Y_b(row, col), row <= col, read as the symmetric entry.
struct Term {
  int block = 0;
  int row = 0;
  int col = 0;
  double coeff = 0.0;
};

/// sum of terms = rhs.
struct Constraint {
  std::vector<Term> terms;
  double rhs = 0.0;
};

inline constexpr int kMaxSdpBits = 8;

/// The sequential-query SDP for T queries to f, minimizing epsilon over PSD
/// blocks M_i^(j) (i = 0..n, j = 0..T-1), Gamma_0, Gamma_1 of size 2^n and a
/// 1x1 block for epsilon, subject to
///   sum_i M_i^(0) = E_0
///   sum_i M_i^(j) = sum_i E_i o M_i^(j-1)          (j = 1..T-1)
///   Gamma_0 + Gamma_1 = sum_i E_i o M_i^(T-1)
///   Gamma_z(x,x) + epsilon = 1  whenever f(x) = z
/// where o is the entrywise product. Matrix equations are imposed on the
/// upper triangle.
struct SdpInstance {
  int n = 0;
  int T = 0;
  std::vector<std::uint8_t> table;
  std::vector<std::string> block_names;
  std::vector<int> block_sizes;
  std::vector<Constraint> constraints;

  int dim() const { return 1 << n; }
  int epsilon_block() const { return static_cast<int>(block_names.size()) - 1; }
  /// Number of 2^n x 2^n matrix variables, (n+1)T + 2.
  int matrix_variables() const { return static_cast<int>(block_names.size()) - 1; }
  int block_index(const std::string& name) const;
};

std::string m_block_name(int i, int j);

/// Throws BudgetExceeded for n > kMaxSdpBits.
SdpInstance build_sdp(const BooleanFunction& f, int T);

/// One SDPA sparse problem in the dual standard form
///   maximize F_0 . Y  subject to  F_i . Y = c_i,  Y block diagonal PSD.
struct SdpaEntry {
  int matrix = 0;
  int block = 0;  // 1-based
  int row = 0;    // 1-based, row <= col
  int col = 0;
  double value = 0.0;
  friend bool operator==(const SdpaEntry&, const SdpaEntry&) = default;
  friend auto operator<=>(const SdpaEntry&, const SdpaEntry&) = default;
};

struct SdpaProblem {
  std::vector<std::string> comments;
  int constraints = 0;
  std::vector<int> block_sizes;
  std::vector<double> c;
  std::vector<SdpaEntry> entries;
};

/// Off-diagonal entries carry half the coefficient, so F_i . Y equals the
/// term sum of the constraint. F_0 is -1 on the epsilon block. The comment
/// lines record n, T, the truth table and the block order.
SdpaProblem to_sdpa(const SdpInstance& inst);
void write_sdpa(std::ostream& out, const SdpaProblem& problem);
SdpaProblem parse_sdpa(std::istream& in);
void export_sdpa(const SdpInstance& inst, const std::string& path);
SdpaProblem read_sdpa_file(const std::string& path);

/// Rebuilds the instance from the comment lines of an exported file.
SdpInstance instance_from_sdpa(const SdpaProblem& problem);

/// A candidate assignment: epsilon plus one dense symmetric matrix per block.
struct SdpSolution {
  double epsilon = 0.0;
  std::map<std::string, Eigen::MatrixXd> blocks;
};

/// Solution JSON: {"epsilon": e, "blocks": {"M_0_0": [[...], ...], ...}}.
SdpSolution parse_solution_json(const std::string& text);
std::string solution_to_json(const SdpSolution& sol);

struct ResidualReport {
  double max_residual = 0.0;
  std::size_t worst_constraint = 0;
  double min_eigenvalue = 0.0;
  double epsilon = 0.0;
  bool feasible = false;
};

inline constexpr double kDefaultFeasibilityTol = 1e-6;

/// Throws SignatureMismatch when a block is missing or has the wrong size.
ResidualReport verify_solution(const SdpInstance& inst, const SdpSolution& sol, double tol = kDefaultFeasibilityTol);

/// All blocks zero (epsilon 0).
SdpSolution zero_solution(const SdpInstance& inst);

}  // namespace icq::sdp
