#include "icq/sdp.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "icq/errors.hpp"

namespace icq::sdp {

namespace {

int bit_of(int index, int n, int one_based) { return (index >> (n - one_based)) & 1; }

}  // namespace

OracleMatrices oracle_matrices(const BooleanFunction& f) {
  const int n = f.arity();
  if (n > kMaxSdpBits) throw BudgetExceeded("oracle_matrices: more than 8 input bits");
  const int N = 1 << n;
  OracleMatrices m;
  m.E.push_back(Eigen::MatrixXd::Ones(N, N));
  for (int i = 1; i <= n; ++i) {
    Eigen::MatrixXd e(N, N);
    for (int x = 0; x < N; ++x) {
      for (int y = 0; y < N; ++y) e(x, y) = (bit_of(x, n, i) ^ bit_of(y, n, i)) ? -1.0 : 1.0;
    }
    m.E.push_back(std::move(e));
  }
  m.F0 = Eigen::MatrixXd::Zero(N, N);
  m.F1 = Eigen::MatrixXd::Zero(N, N);
  for (int x = 0; x < N; ++x) (f.value_at(static_cast<std::uint64_t>(x)) ? m.F1 : m.F0)(x, x) = 1.0;
  return m;
}

std::string m_block_name(int i, int j) { return "M_" + std::to_string(i) + "_" + std::to_string(j); }

int SdpInstance::block_index(const std::string& name) const {
  for (std::size_t b = 0; b < block_names.size(); ++b) {
    if (block_names[b] == name) return static_cast<int>(b);
  }
  return -1;
}

SdpInstance build_sdp(const BooleanFunction& f, int T) {
  const int n = f.arity();
  if (n > kMaxSdpBits) throw BudgetExceeded("build_sdp: more than 8 input bits");
  if (T < 1) throw std::invalid_argument("build_sdp: T must be >= 1");
  const auto om = oracle_matrices(f);
  for (const auto& e : om.E) {
    if (e.cwiseProduct(e) != om.E[0]) throw std::logic_error("build_sdp: E_i o E_i differs from E_0");
  }

  SdpInstance inst;
  inst.n = n;
  inst.T = T;
  const auto table = f.table();
  inst.table.assign(table.begin(), table.end());
  const int N = 1 << n;
  auto m_index = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < T; ++j) {
    for (int i = 0; i <= n; ++i) inst.block_names.push_back(m_block_name(i, j));
  }
  const int gamma0 = static_cast<int>(inst.block_names.size());
  inst.block_names.push_back("Gamma_0");
  inst.block_names.push_back("Gamma_1");
  const int eps = static_cast<int>(inst.block_names.size());
  inst.block_names.push_back("epsilon");
  inst.block_sizes.assign(inst.block_names.size(), N);
  inst.block_sizes.back() = 1;

  for (int x = 0; x < N; ++x) {
    for (int y = x; y < N; ++y) {
      Constraint first;
      for (int i = 0; i <= n; ++i) first.terms.push_back({m_index(i, 0), x, y, 1.0});
      first.rhs = om.E[0](x, y);
      inst.constraints.push_back(std::move(first));
      for (int j = 1; j <= T; ++j) {
        Constraint c;
        if (j < T) {
          for (int i = 0; i <= n; ++i) c.terms.push_back({m_index(i, j), x, y, 1.0});
        } else {
          c.terms.push_back({gamma0, x, y, 1.0});
          c.terms.push_back({gamma0 + 1, x, y, 1.0});
        }
        for (int i = 0; i <= n; ++i) c.terms.push_back({m_index(i, j - 1), x, y, -om.E[static_cast<std::size_t>(i)](x, y)});
        c.rhs = 0.0;
        inst.constraints.push_back(std::move(c));
      }
    }
  }
  for (int x = 0; x < N; ++x) {
    Constraint c;
    c.terms.push_back({gamma0 + (inst.table[static_cast<std::size_t>(x)] ? 1 : 0), x, x, 1.0});
    c.terms.push_back({eps, 0, 0, 1.0});
    c.rhs = 1.0;
    inst.constraints.push_back(std::move(c));
  }
  return inst;
}

// ---------------------------------------------------------------------------

namespace {

std::string table_string(const std::vector<std::uint8_t>& table) {
  std::string s;
  for (auto v : table) s.push_back(v ? '1' : '0');
  return s;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SdpaProblem to_sdpa(const SdpInstance& inst) {
  SdpaProblem p;
  p.comments.push_back("sequential query SDP, dual standard form: maximize F0.Y s.t. Fi.Y = ci, Y psd");
  p.comments.push_back("off-diagonal entries hold half the coefficient; F0 = -1 on the epsilon block");
  p.comments.push_back("n=" + std::to_string(inst.n));
  p.comments.push_back("T=" + std::to_string(inst.T));
  p.comments.push_back("f=" + table_string(inst.table));
  std::string blocks = "blocks=";
  for (std::size_t b = 0; b < inst.block_names.size(); ++b) {
    if (b) blocks += ',';
    blocks += inst.block_names[b];
  }
  p.comments.push_back(blocks);
  p.constraints = static_cast<int>(inst.constraints.size());
  p.block_sizes = inst.block_sizes;
  for (const auto& c : inst.constraints) p.c.push_back(c.rhs);
  p.entries.push_back({0, inst.epsilon_block() + 1, 1, 1, -1.0});
  for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
    for (const auto& t : inst.constraints[k].terms) {
      const double v = t.row == t.col ? t.coeff : 0.5 * t.coeff;
      p.entries.push_back({static_cast<int>(k) + 1, t.block + 1, t.row + 1, t.col + 1, v});
    }
  }
  return p;
}

void write_sdpa(std::ostream& out, const SdpaProblem& p) {
  for (const auto& c : p.comments) out << "* " << c << '\n';
  out << p.constraints << " = mDIM\n";
  out << p.block_sizes.size() << " = nBLOCK\n";
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) out << (b ? " " : "") << p.block_sizes[b];
  out << " = bLOCKsTRUCT\n";
  for (std::size_t i = 0; i < p.c.size(); ++i) out << (i ? " " : "") << format_double(p.c[i]);
  out << '\n';
  for (const auto& e : p.entries) {
    out << e.matrix << ' ' << e.block << ' ' << e.row << ' ' << e.col << ' ' << format_double(e.value) << '\n';
  }
}

namespace {

// SDPA allows the separators ",(){}" and trailing text after the numbers.
std::string clean_line(std::string line) {
  for (char& ch : line) {
    if (ch == ',' || ch == '(' || ch == ')' || ch == '{' || ch == '}') ch = ' ';
  }
  return line;
}

}  // namespace

SdpaProblem parse_sdpa(std::istream& in) {
  SdpaProblem p;
  std::string line;
  std::vector<std::string> body;
  bool in_header = true;
  while (std::getline(in, line)) {
    if (in_header && !line.empty() && (line[0] == '*' || line[0] == '"')) {
      std::string c = line.substr(1);
      if (!c.empty() && c[0] == ' ') c.erase(0, 1);
      p.comments.push_back(c);
      continue;
    }
    in_header = false;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    body.push_back(clean_line(line));
  }
  if (body.size() < 4) throw ParseError("parse_sdpa: truncated file");
  auto first_int = [](const std::string& s, const char* what) {
    std::istringstream ss(s);
    long v = 0;
    if (!(ss >> v)) throw ParseError(std::string("parse_sdpa: cannot read ") + what);
    return static_cast<int>(v);
  };
  p.constraints = first_int(body[0], "mDIM");
  const int nblocks = first_int(body[1], "nBLOCK");
  {
    std::istringstream ss(body[2]);
    for (int b = 0; b < nblocks; ++b) {
      int s = 0;
      if (!(ss >> s)) throw ParseError("parse_sdpa: short block structure");
      p.block_sizes.push_back(s);
    }
  }
  std::size_t line_no = 3;
  {
    // The c vector may span several lines.
    while (static_cast<int>(p.c.size()) < p.constraints) {
      if (line_no >= body.size()) throw ParseError("parse_sdpa: short c vector");
      std::istringstream ss(body[line_no++]);
      double v = 0.0;
      while (static_cast<int>(p.c.size()) < p.constraints && ss >> v) p.c.push_back(v);
    }
  }
  for (; line_no < body.size(); ++line_no) {
    std::istringstream ss(body[line_no]);
    SdpaEntry e;
    if (!(ss >> e.matrix >> e.block >> e.row >> e.col >> e.value)) {
      throw ParseError("parse_sdpa: bad entry line " + std::to_string(line_no + 1));
    }
    if (e.matrix < 0 || e.matrix > p.constraints || e.block < 1 || e.block > nblocks) {
      throw ParseError("parse_sdpa: entry index out of range");
    }
    const int size = std::abs(p.block_sizes[static_cast<std::size_t>(e.block - 1)]);
    if (e.row < 1 || e.col < 1 || e.row > size || e.col > size) throw ParseError("parse_sdpa: entry outside its block");
    if (e.row > e.col) std::swap(e.row, e.col);
    p.entries.push_back(e);
  }
  return p;
}

void export_sdpa(const SdpInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_sdpa(out, to_sdpa(inst));
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

SdpaProblem read_sdpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_sdpa(in);
}

SdpInstance instance_from_sdpa(const SdpaProblem& problem) {
  int n = -1;
  int T = -1;
  std::string table;
  for (const auto& c : problem.comments) {
    if (c.rfind("n=", 0) == 0) n = std::stoi(c.substr(2));
    if (c.rfind("T=", 0) == 0) T = std::stoi(c.substr(2));
    if (c.rfind("f=", 0) == 0) table = c.substr(2);
  }
  if (n < 1 || T < 1 || table.size() != (std::size_t{1} << n)) {
    throw ParseError("instance_from_sdpa: header lacks n, T or the truth table");
  }
  std::vector<std::uint8_t> bits;
  for (char ch : table) {
    if (ch != '0' && ch != '1') throw ParseError("instance_from_sdpa: bad truth table");
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return build_sdp(BooleanFunction::from_table(n, std::move(bits)), T);
}

// ---------------------------------------------------------------------------

SdpSolution parse_solution_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("solution JSON: ") + e.what());
  }
  SdpSolution sol;
  if (!j.contains("epsilon") || !j.contains("blocks")) throw ParseError("solution JSON needs epsilon and blocks");
  sol.epsilon = j.at("epsilon").get<double>();
  for (const auto& [name, rows] : j.at("blocks").items()) {
    const auto r = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(r, r);
    for (Eigen::Index a = 0; a < r; ++a) {
      const auto& row = rows.at(static_cast<std::size_t>(a));
      if (static_cast<Eigen::Index>(row.size()) != r) throw ParseError("solution JSON: block " + name + " is not square");
      for (Eigen::Index b = 0; b < r; ++b) m(a, b) = row.at(static_cast<std::size_t>(b)).get<double>();
    }
    sol.blocks.emplace(name, std::move(m));
  }
  return sol;
}

std::string solution_to_json(const SdpSolution& sol) {
  nlohmann::json j;
  j["epsilon"] = sol.epsilon;
  j["blocks"] = nlohmann::json::object();
  for (const auto& [name, m] : sol.blocks) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index b = 0; b < m.cols(); ++b) row.push_back(m(a, b));
      rows.push_back(std::move(row));
    }
    j["blocks"][name] = std::move(rows);
  }
  return j.dump();
}

SdpSolution zero_solution(const SdpInstance& inst) {
  SdpSolution sol;
  for (int b = 0; b < inst.epsilon_block(); ++b) {
    sol.blocks.emplace(inst.block_names[static_cast<std::size_t>(b)], Eigen::MatrixXd::Zero(inst.dim(), inst.dim()));
  }
  return sol;
}

ResidualReport verify_solution(const SdpInstance& inst, const SdpSolution& sol, double tol) {
  std::vector<const Eigen::MatrixXd*> blocks;
  for (int b = 0; b < inst.epsilon_block(); ++b) {
    const auto& name = inst.block_names[static_cast<std::size_t>(b)];
    auto it = sol.blocks.find(name);
    if (it == sol.blocks.end()) throw SignatureMismatch("verify_solution: missing block " + name);
    if (it->second.rows() != inst.dim() || it->second.cols() != inst.dim()) {
      throw SignatureMismatch("verify_solution: block " + name + " has the wrong size");
    }
    blocks.push_back(&it->second);
  }
  const Eigen::MatrixXd eps_block = Eigen::MatrixXd::Constant(1, 1, sol.epsilon);

  ResidualReport report;
  report.epsilon = sol.epsilon;
  for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
    const auto& c = inst.constraints[k];
    double lhs = 0.0;
    for (const auto& t : c.terms) {
      const Eigen::MatrixXd& m = t.block == inst.epsilon_block() ? eps_block : *blocks[static_cast<std::size_t>(t.block)];
      lhs += t.coeff * 0.5 * (m(t.row, t.col) + m(t.col, t.row));
    }
    const double r = std::abs(lhs - c.rhs);
    if (r > report.max_residual) {
      report.max_residual = r;
      report.worst_constraint = k;
    }
  }
  report.min_eigenvalue = sol.epsilon;
  for (const auto* m : blocks) {
    const Eigen::MatrixXd sym = 0.5 * (*m + m->transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    report.min_eigenvalue = std::min(report.min_eigenvalue, solver.eigenvalues().minCoeff());
  }
  report.feasible = report.max_residual <= tol && report.min_eigenvalue >= -tol;
  return report;
}

}  // namespace icq::sdp
