#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "icq/complexity.hpp"
#include "icq/errors.hpp"
#include "icq/lugano.hpp"
#include "icq/sdp.hpp"

using namespace icq;
using namespace icq::sdp;

namespace {

using TermKey = std::tuple<std::string, int, int>;
using CanonicalConstraint = std::pair<std::map<TermKey, double>, double>;

std::vector<CanonicalConstraint> canonical(const SdpInstance& inst) {
  std::vector<CanonicalConstraint> out;
  for (const auto& c : inst.constraints) {
    std::map<TermKey, double> terms;
    for (const auto& t : c.terms) {
      terms[{inst.block_names[static_cast<std::size_t>(t.block)], std::min(t.row, t.col), std::max(t.row, t.col)}] +=
          t.coeff;
    }
    out.emplace_back(std::move(terms), c.rhs);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The constraint system written out from the definition: one equation per
// upper-triangle entry for each of the T+1 matrix identities, plus one
// diagonal equation per input.
std::vector<CanonicalConstraint> expected_constraints(const BooleanFunction& f, int T) {
  const int n = f.arity();
  const int N = 1 << n;
  auto e = [n](int i, int x, int y) -> double {
    if (i == 0) return 1.0;
    const int bx = (x >> (n - i)) & 1;
    const int by = (y >> (n - i)) & 1;
    return (bx + by) % 2 == 0 ? 1.0 : -1.0;
  };
  std::vector<CanonicalConstraint> out;
  for (int x = 0; x < N; ++x) {
    for (int y = x; y < N; ++y) {
      std::map<TermKey, double> first;
      for (int i = 0; i <= n; ++i) first[{"M_" + std::to_string(i) + "_0", x, y}] = 1.0;
      out.emplace_back(first, 1.0);
      for (int j = 1; j <= T; ++j) {
        std::map<TermKey, double> c;
        if (j < T) {
          for (int i = 0; i <= n; ++i) c[{"M_" + std::to_string(i) + "_" + std::to_string(j), x, y}] = 1.0;
        } else {
          c[{"Gamma_0", x, y}] = 1.0;
          c[{"Gamma_1", x, y}] = 1.0;
        }
        for (int i = 0; i <= n; ++i) c[{"M_" + std::to_string(i) + "_" + std::to_string(j - 1), x, y}] = -e(i, x, y);
        out.emplace_back(c, 0.0);
      }
    }
  }
  for (int x = 0; x < N; ++x) {
    std::map<TermKey, double> c;
    c[{f.value_at(static_cast<std::uint64_t>(x)) ? "Gamma_1" : "Gamma_0", x, x}] = 1.0;
    c[{"epsilon", 0, 0}] = 1.0;
    out.emplace_back(c, 1.0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Gram matrices of the classical strategy that runs `tree` (padded to depth
// T) with the query state (|0> + |i>)/sqrt2 at each level.
SdpSolution tree_solution(const SdpInstance& inst, const DecisionTree& tree) {
  const int n = inst.n;
  const int N = inst.dim();
  const int T = inst.T;
  const auto padded = tree.padded(T);
  // path[x][j]: node reached after j queries, identified by the answers so far.
  std::vector<std::vector<const DecisionTree*>> node(static_cast<std::size_t>(N));
  std::vector<std::vector<int>> path(static_cast<std::size_t>(N));
  for (int x = 0; x < N; ++x) {
    const auto bx = BitString::from_index(static_cast<std::size_t>(n), static_cast<std::uint64_t>(x));
    const DecisionTree* t = &padded;
    int code = 1;
    for (int j = 0; j <= T; ++j) {
      node[static_cast<std::size_t>(x)].push_back(t);
      path[static_cast<std::size_t>(x)].push_back(code);
      if (j == T) break;
      const bool answer = bx.at(t->index());
      code = code * 2 + (answer ? 1 : 0);
      t = answer ? &t->on1() : &t->on0();
    }
  }
  SdpSolution sol;
  sol.epsilon = 0.0;
  for (const auto& name : inst.block_names) {
    if (name != "epsilon") sol.blocks[name] = Eigen::MatrixXd::Zero(N, N);
  }
  for (int x = 0; x < N; ++x) {
    for (int y = 0; y < N; ++y) {
      const auto ux = static_cast<std::size_t>(x);
      const auto uy = static_cast<std::size_t>(y);
      for (int j = 0; j < T; ++j) {
        if (path[ux][static_cast<std::size_t>(j)] != path[uy][static_cast<std::size_t>(j)]) continue;
        const int i = node[ux][static_cast<std::size_t>(j)]->index();
        sol.blocks[m_block_name(0, j)](x, y) = 0.5;
        sol.blocks[m_block_name(i, j)](x, y) = 0.5;
      }
      if (path[ux].back() == path[uy].back()) {
        const bool z = node[ux].back()->leaf_value();
        sol.blocks[z ? "Gamma_1" : "Gamma_0"](x, y) = 1.0;
      }
    }
  }
  return sol;
}

}  // namespace

TEST(OracleMatricesTest, Entries) {
  const auto om = oracle_matrices(f6q());
  ASSERT_EQ(om.E.size(), 7u);
  EXPECT_EQ(om.E[0], Eigen::MatrixXd::Ones(64, 64));
  // x = 100000 is index 32.
  EXPECT_EQ(om.E[1](32, 0), -1.0);
  EXPECT_EQ(om.E[1](32, 32), 1.0);
  EXPECT_EQ(om.F0(0, 0), 1.0);
  EXPECT_EQ(om.F1(0, 0), 0.0);
  EXPECT_EQ(om.F0 + om.F1, Eigen::MatrixXd::Identity(64, 64));
  for (const auto& e : om.E) {
    EXPECT_EQ(e.cwiseProduct(e), om.E[0]);
    EXPECT_EQ(e, e.transpose());
  }
}

TEST(BuildSdpTest, F6qShape) {
  const auto inst = build_sdp(f6q(), 3);
  EXPECT_EQ(inst.matrix_variables(), 23);
  EXPECT_EQ(inst.block_names.size(), 24u);
  for (int b = 0; b < inst.epsilon_block(); ++b) EXPECT_EQ(inst.block_sizes[static_cast<std::size_t>(b)], 64);
  EXPECT_EQ(inst.block_sizes.back(), 1);
  EXPECT_EQ(inst.constraints.size(), 4u * 64 * 65 / 2 + 64);
  EXPECT_EQ(inst.block_names.front(), "M_0_0");
  EXPECT_EQ(inst.block_index("Gamma_1"), 22);
}

TEST(BuildSdpTest, ConstraintPatternMatchesDefinition) {
  for (int T : {1, 2, 3}) {
    EXPECT_EQ(canonical(build_sdp(f6q(), T)), expected_constraints(f6q(), T)) << T;
  }
  EXPECT_EQ(canonical(build_sdp(and_function(3), 2)), expected_constraints(and_function(3), 2));
}

TEST(BuildSdpTest, Limits) {
  EXPECT_THROW(build_sdp(parity_function(9), 1), BudgetExceeded);
  EXPECT_THROW(build_sdp(parity_function(2), 0), std::invalid_argument);
}

TEST(SdpaTest, RoundTripIsBitExact) {
  const auto inst = build_sdp(f6q(), 3);
  const auto p = to_sdpa(inst);
  std::stringstream ss;
  write_sdpa(ss, p);
  const auto q = parse_sdpa(ss);
  EXPECT_EQ(q.constraints, p.constraints);
  EXPECT_EQ(q.block_sizes, p.block_sizes);
  EXPECT_EQ(q.c, p.c);
  auto a = p.entries;
  auto b = q.entries;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
  const auto rebuilt = instance_from_sdpa(q);
  EXPECT_EQ(rebuilt.n, 6);
  EXPECT_EQ(rebuilt.T, 3);
  EXPECT_EQ(rebuilt.block_names, inst.block_names);
  EXPECT_EQ(canonical(rebuilt), canonical(inst));
}

TEST(SdpaTest, FileRoundTrip) {
  const auto inst = build_sdp(f6c(), 2);
  const auto path = std::filesystem::temp_directory_path() / "icq_test_f6c_T2.dat-s";
  export_sdpa(inst, path.string());
  const auto q = read_sdpa_file(path.string());
  EXPECT_EQ(q.entries.size(), to_sdpa(inst).entries.size());
  std::filesystem::remove(path);
  EXPECT_THROW(read_sdpa_file(path.string()), std::runtime_error);
}

TEST(SdpaTest, ConstraintMatricesReproduceTermSums) {
  const auto inst = build_sdp(parity_function(2), 2);
  const auto p = to_sdpa(inst);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<Eigen::MatrixXd> y;
  for (int size : inst.block_sizes) {
    Eigen::MatrixXd m(size, size);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) m(r, c) = normal(rng);
    y.push_back(0.5 * (m + m.transpose()));
  }
  std::vector<double> via_sdpa(inst.constraints.size(), 0.0);
  for (const auto& e : p.entries) {
    if (e.matrix == 0) continue;
    const auto& m = y[static_cast<std::size_t>(e.block - 1)];
    const double factor = e.row == e.col ? 1.0 : 2.0;
    via_sdpa[static_cast<std::size_t>(e.matrix - 1)] += factor * e.value * m(e.row - 1, e.col - 1);
  }
  for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
    double direct = 0.0;
    for (const auto& t : inst.constraints[k].terms) direct += t.coeff * y[static_cast<std::size_t>(t.block)](t.row, t.col);
    EXPECT_NEAR(via_sdpa[k], direct, 1e-12);
  }
}

TEST(SdpaTest, ParseRejectsGarbage) {
  std::stringstream ss("* comment\nnot a number\n");
  EXPECT_THROW(parse_sdpa(ss), ParseError);
}

TEST(VerifyTest, ZeroSolutionIsInfeasible) {
  const auto inst = build_sdp(f6q(), 3);
  const auto r = verify_solution(inst, zero_solution(inst));
  EXPECT_FALSE(r.feasible);
  EXPECT_DOUBLE_EQ(r.max_residual, 1.0);
}

TEST(VerifyTest, TreeStrategyIsFeasible) {
  const auto q = deterministic_query_complexity(f6c());
  const auto inst = build_sdp(f6c(), q.depth);
  const auto sol = tree_solution(inst, q.tree);
  const auto r = verify_solution(inst, sol);
  EXPECT_TRUE(r.feasible) << r.max_residual << ' ' << r.min_eigenvalue;
  EXPECT_LE(r.max_residual, 1e-12);
  EXPECT_DOUBLE_EQ(r.epsilon, 0.0);
}

TEST(VerifyTest, TreeStrategiesOnRandomFunctions) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint8_t> t(8);
    for (auto& v : t) v = rng() & 1;
    const auto f = BooleanFunction::from_table(3, t);
    const auto q = deterministic_query_complexity(f);
    const int T = std::max(1, q.depth) + static_cast<int>(rng() % 2);
    const auto inst = build_sdp(f, T);
    EXPECT_TRUE(verify_solution(inst, tree_solution(inst, q.tree)).feasible) << trial;
  }
}

TEST(VerifyTest, PerturbedStrategyIsRejected) {
  const auto q = deterministic_query_complexity(f6c());
  const auto inst = build_sdp(f6c(), 4);
  auto sol = tree_solution(inst, q.tree);
  sol.blocks["Gamma_0"](0, 0) = 0.5;
  EXPECT_FALSE(verify_solution(inst, sol).feasible);
}

TEST(VerifyTest, JsonRoundTrip) {
  const auto q = deterministic_query_complexity(and_function(2));
  const auto inst = build_sdp(and_function(2), q.depth);
  const auto sol = tree_solution(inst, q.tree);
  const auto back = parse_solution_json(solution_to_json(sol));
  EXPECT_EQ(back.epsilon, sol.epsilon);
  ASSERT_EQ(back.blocks.size(), sol.blocks.size());
  for (const auto& [name, m] : sol.blocks) EXPECT_EQ(back.blocks.at(name), m) << name;
  EXPECT_TRUE(verify_solution(inst, back).feasible);
}

TEST(VerifyTest, ShapeErrors) {
  const auto inst = build_sdp(and_function(2), 1);
  auto sol = zero_solution(inst);
  sol.blocks.erase("Gamma_0");
  EXPECT_THROW(verify_solution(inst, sol), SignatureMismatch);
  sol = zero_solution(inst);
  sol.blocks["M_0_0"] = Eigen::MatrixXd::Zero(3, 3);
  EXPECT_THROW(verify_solution(inst, sol), SignatureMismatch);
  EXPECT_THROW(parse_solution_json("{\"blocks\": {}}"), ParseError);
}

TEST(VerifyTest, NegativeEigenvalueIsReported) {
  const auto q = deterministic_query_complexity(and_function(2));
  const auto inst = build_sdp(and_function(2), q.depth);
  auto sol = tree_solution(inst, q.tree);
  sol.epsilon = -0.25;
  const auto r = verify_solution(inst, sol);
  EXPECT_FALSE(r.feasible);
  EXPECT_LE(r.min_eigenvalue, -0.25);
}
