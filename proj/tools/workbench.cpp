// workbench: command-line front end for the icq library.
//
// Exit codes: 0 all checks passed, 1 a verification mismatch, 2 usage or
// input errors.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "icq/causal.hpp"
#include "icq/complexity.hpp"
#include "icq/composition.hpp"
#include "icq/errors.hpp"
#include "icq/io.hpp"
#include "icq/lugano.hpp"
#include "icq/process.hpp"
#include "icq/quantum/supermap.hpp"
#include "icq/sdp.hpp"

#ifndef ICQ_VERSION
#define ICQ_VERSION "0.0.0"
#endif

namespace {

using json = nlohmann::json;
using namespace icq;

constexpr int kSchemaVersion = 1;
constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  bool json_stdout = false;
};

json report_header(const std::string& command, const Globals& g) {
  return {{"schema_version", kSchemaVersion}, {"version", ICQ_VERSION}, {"command", command}, {"seed", g.seed}};
}

void emit(const json& report, const Globals& g) {
  if (g.json_stdout) std::cout << report.dump(2) << '\n';
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw UsageError("cannot write " + g.out);
    f << report.dump(2) << '\n';
  }
}

// Human-readable text goes to stdout unless JSON was requested there.
std::ostream& text(const Globals& g) {
  static std::ostringstream sink;
  if (g.json_stdout) {
    sink.str("");
    return sink;
  }
  return std::cout;
}

BooleanFunction builtin_function(const std::string& name, int n) {
  if (name == "f6c") return f6c();
  if (name == "f6q") return f6q();
  if (name == "const0") return BooleanFunction::constant(n, false);
  if (name == "const1") return BooleanFunction::constant(n, true);
  if (name == "and") return and_function(n);
  if (name == "or") return or_function(n);
  if (name == "xor") return parity_function(n);
  throw UsageError("unknown builtin function '" + name + "' (f6c, f6q, const0, const1, and, or, xor)");
}

TableProcess builtin_process(const std::string& name) {
  if (name == "lugano") return lugano();
  if (name == "lugano_bar") return lugano_bar();
  throw UsageError("unknown builtin process '" + name + "' (lugano, lugano_bar)");
}

BooleanFunction load_function(const std::string& builtin, const std::string& file, int n) {
  if (!builtin.empty() && !file.empty()) throw UsageError("give either --builtin or --fn-file, not both");
  if (!file.empty()) return read_truth_table_file(file);
  if (builtin.empty()) throw UsageError("a function is required (--builtin or --fn-file)");
  return builtin_function(builtin, n);
}

BitString parse_bits(const std::string& s, std::size_t n) {
  try {
    BitString x = BitString::from_string(s);
    if (x.size() != n) throw UsageError("expected " + std::to_string(n) + " bits, got '" + s + "'");
    return x;
  } catch (const std::invalid_argument&) {
    throw UsageError("not a bit string: '" + s + "'");
  }
}

std::string bits_of(const std::array<int, 3>& a) {
  return std::to_string(a[0]) + std::to_string(a[1]) + std::to_string(a[2]);
}

// ---------------------------------------------------------------------------
// analyze

int run_analyze(const std::string& builtin, const std::string& file, int n, const Globals& g) {
  const auto f = load_function(builtin, file, n);
  const auto t0 = std::chrono::steady_clock::now();
  const auto qc = deterministic_query_complexity(f);
  const int deg = degree(f);
  const int cert = certificate_complexity(f);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  auto& out = text(g);
  out << "function: " << (builtin.empty() ? file : builtin) << " (n=" << f.arity() << ")\n";
  out << "D   = " << qc.depth << '\n' << "deg = " << deg << '\n' << "C   = " << cert << '\n';
  out << "optimal tree: " << tree_to_json(qc.tree).dump() << '\n';

  json r = report_header("analyze", g);
  r["function"] = builtin.empty() ? file : builtin;
  r["arity"] = f.arity();
  r["D"] = qc.depth;
  r["deg"] = deg;
  r["C"] = cert;
  r["tree"] = tree_to_json(qc.tree);
  r["seconds"] = seconds;
  emit(r, g);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// process

int run_process(const std::string& builtin, const std::string& file, const std::string& regime,
                const std::string& computes_name, std::uint64_t budget, const Globals& g) {
  if (!builtin.empty() && !file.empty()) throw UsageError("give either --builtin or --file, not both");
  if (builtin.empty() && file.empty()) throw UsageError("a process is required (--builtin or --file)");
  const TableProcess w = file.empty() ? builtin_process(builtin) : read_process_file(file);
  CausalOptions copt;
  if (regime == "all") {
    copt.regime = CausalRegime::AllOperations;
  } else if (regime != "constants") {
    throw UsageError("--regime must be constants or all");
  }

  auto& out = text(g);
  json r = report_header("process", g);
  r["process"] = builtin.empty() ? file : builtin;
  r["slots"] = w.slot_count();

  const auto v = validate_process(w, budget);
  out << "valid: " << (v.valid ? "yes" : "no") << " (" << v.tuples_checked << " operation tuples)\n";
  r["valid"] = v.valid;
  r["tuples_checked"] = v.tuples_checked;
  if (v.self_signalling_slot) {
    out << "slot " << *v.self_signalling_slot + 1 << " signals to itself\n";
    r["self_signalling_slot"] = *v.self_signalling_slot + 1;
  }
  if (!v.valid && v.witness_past) {
    out << "witness: a=" << *v.witness_past << " has " << v.witness_fixed_points << " fixed points\n";
    r["witness_fixed_points"] = v.witness_fixed_points;
  }

  int code = kExitPass;
  if (v.valid) {
    const auto c = is_causally_definite(w, copt);
    out << "causally definite: " << (c.definite ? "yes" : "no") << " [" << to_string(c.regime) << "]\n";
    r["causally_definite"] = c.definite;
    r["causal_regime"] = to_string(c.regime);
  }
  if (!computes_name.empty()) {
    const auto f = builtin_function(computes_name, 6);
    const auto verdict = computes(w, f);
    out << "computes " << computes_name << ": " << (verdict.holds ? "yes" : "no") << " (" << verdict.checked
        << " inputs)\n";
    r["computes"] = {{"function", computes_name}, {"holds", verdict.holds}, {"checked", verdict.checked}};
    if (verdict.counterexample) {
      out << "counterexample: " << verdict.counterexample->to_string() << '\n';
      r["computes"]["counterexample"] = verdict.counterexample->to_string();
    }
    if (!verdict.holds) code = kExitMismatch;
  }
  emit(r, g);
  return code;
}

// ---------------------------------------------------------------------------
// demo

json fixed_point_rows_to_json(const std::array<FixedPointRow, 8>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json answers = json::array();
    for (const auto& a : row.answers) answers.push_back(a.to_string());
    arr.push_back({{"key", row.key}, {"queries", row.queries}, {"answers", answers}, {"future", row.future.to_string()}});
  }
  return {{"rows", arr}};
}

BitExpr parse_expr(const std::string& s) {
  if (s == "0") return BitExpr::constant(false);
  if (s == "1") return BitExpr::constant(true);
  if (s.size() >= 2 && s[0] == 'x') return BitExpr::variable(std::stoi(s.substr(1)));
  throw ParseError("bad bit expression '" + s + "'");
}

std::array<FixedPointRow, 8> fixed_point_rows_from_json(const json& j) {
  std::array<FixedPointRow, 8> rows{};
  const auto& arr = j.at("rows");
  if (arr.size() != 8) throw ParseError("expected 8 rows");
  for (std::size_t r = 0; r < 8; ++r) {
    const auto& e = arr[r];
    rows[r].key = e.at("key").get<std::array<int, 3>>();
    rows[r].queries = e.at("queries").get<std::array<int, 3>>();
    for (std::size_t k = 0; k < 3; ++k) rows[r].answers[k] = parse_expr(e.at("answers")[k].get<std::string>());
    rows[r].future = parse_expr(e.at("future").get<std::string>());
  }
  return rows;
}

int demo_f6c(const std::string& expect_file, const std::string& dump_expected, const Globals& g) {
  std::array<FixedPointRow, 8> expected = lugano_bar_fixed_point_rows();
  if (!dump_expected.empty()) {
    std::ofstream f(dump_expected);
    if (!f) throw UsageError("cannot write " + dump_expected);
    f << fixed_point_rows_to_json(expected).dump(2) << '\n';
  }
  if (!expect_file.empty()) {
    std::ifstream f(expect_file);
    if (!f) throw UsageError("cannot open " + expect_file);
    try {
      expected = fixed_point_rows_from_json(json::parse(f));
    } catch (const json::exception& e) {
      throw ParseError(std::string("expectation file: ") + e.what());
    }
  }

  const auto f = f6c();
  const auto w = lugano_bar();
  auto& out = text(g);
  std::uint64_t truth_ok = 0;
  std::uint64_t fixed_ok = 0;
  json rows = json::array();
  out << " x       | f6c  reduced | j1 j2 j3  o1 o2 o3  wF | expected          | status\n";
  for (std::uint64_t idx = 0; idx < 64; ++idx) {
    const auto x = BitString::from_index(6, idx);
    const std::array<int, 3> key{x[0], x[1], x[2]};
    const auto& reduced = row_for_key(f6c_reduced_table(), key);
    const bool value = f(x);
    const bool truth_match = value == reduced.value(x);

    const auto ops = oracle_operations(w, x);
    const auto i = fixed_point(w, 0, ops);
    std::array<int, 3> j{};
    std::array<int, 3> o{};
    for (std::size_t k = 0; k < 3; ++k) {
      j[k] = static_cast<int>(i[k]) + 1;
      o[k] = x.at(j[k]) ? 1 : 0;
    }
    const bool future = w.link(ops).front() != 0;
    const auto& exp = row_for_key(expected, key);
    bool fp_match = exp.queries == j && exp.future(x) == future;
    for (std::size_t k = 0; k < 3; ++k) fp_match = fp_match && exp.answers[k](x) == (o[k] != 0);
    fp_match = fp_match && future == value;

    truth_ok += truth_match;
    fixed_ok += fp_match;
    out << ' ' << x.to_string() << "  |  " << value << "   " << std::setw(3) << reduced.value.to_string() << "    | "
        << std::setw(2) << j[0] << ' ' << std::setw(2) << j[1] << ' ' << std::setw(2) << j[2] << "   " << o[0] << "  "
        << o[1] << "  " << o[2] << "   " << future << " | " << std::setw(2) << exp.queries[0] << ' ' << std::setw(2)
        << exp.queries[1] << ' ' << std::setw(2) << exp.queries[2] << "  wF=" << std::setw(3) << exp.future.to_string()
        << "  | " << (truth_match && fp_match ? "ok" : "MISMATCH") << '\n';
    rows.push_back({{"x", x.to_string()},
                    {"f6c", value},
                    {"queries", j},
                    {"answers", o},
                    {"future", future},
                    {"truth_table_match", truth_match},
                    {"fixed_point_match", fp_match}});
  }
  out << "truth table rows matched: " << truth_ok << "/64\n";
  out << "fixed-point rows matched: " << fixed_ok << "/64\n";
  json r = report_header("demo f6c", g);
  r["truth_table_matches"] = truth_ok;
  r["fixed_point_matches"] = fixed_ok;
  r["rows"] = rows;
  emit(r, g);
  return truth_ok == 64 && fixed_ok == 64 ? kExitPass : kExitMismatch;
}

struct QuantumRowResult {
  quantum::RegisterReading reading;
  quantum::Decoded decoded;
  double purity = 0.0;
  bool match = false;
};

QuantumRowResult quantum_row(const BitString& x, const BooleanFunction& f, const quantum::Completion& completion,
                             const std::string& csv_dir) {
  const auto rho = quantum::run_f6q(x, completion);
  QuantumRowResult res;
  res.reading = quantum::dominant_reading(rho);
  res.decoded = quantum::measure_and_decode(rho);
  res.purity = quantum::purity(rho);
  const std::array<int, 3> parities{x[0] != x[3], x[1] != x[4], x[2] != x[5]};
  const auto& expected = row_for_key(quantum_register_rows(), parities);
  bool match = res.reading.alpha == expected.alpha && std::abs(res.reading.probability - 1.0) <= 1e-9;
  for (std::size_t k = 0; k < 3; ++k) match = match && (res.reading.f[k] != 0) == expected.f_register[k](x);
  match = match && res.decoded.bit == f(x) && res.decoded.probability >= 1.0 - 1e-9;
  res.match = match;
  if (!csv_dir.empty()) {
    std::ofstream csv(csv_dir + "/state_" + x.to_string() + ".csv");
    if (!csv) throw UsageError("cannot write into " + csv_dir);
    quantum::write_state_csv(csv, rho);
  }
  return res;
}

int run_quantum_rows(const std::vector<BitString>& xs, const quantum::Completion& completion,
                     const std::string& csv_dir, const std::string& command, const Globals& g) {
  const auto f = f6q();
  auto& out = text(g);
  std::uint64_t ok = 0;
  json rows = json::array();
  out << " x       | parities | F    alpha | f6q decoded  prob        | status\n";
  for (const auto& x : xs) {
    const auto res = quantum_row(x, f, completion, csv_dir);
    ok += res.match;
    out << ' ' << x.to_string() << "  |   " << (x[0] != x[3]) << (x[1] != x[4]) << (x[2] != x[5]) << "    | "
        << bits_of(res.reading.f) << "  " << bits_of(res.reading.alpha) << "   |  " << f(x) << "     " << res.decoded.bit
        << "     " << std::fixed << std::setprecision(12) << res.decoded.probability << std::defaultfloat << " | "
        << (res.match ? "ok" : "MISMATCH") << '\n';
    rows.push_back({{"x", x.to_string()},
                    {"F", bits_of(res.reading.f)},
                    {"alpha", bits_of(res.reading.alpha)},
                    {"decoded", res.decoded.bit},
                    {"probability", res.decoded.probability},
                    {"purity", res.purity},
                    {"match", res.match}});
  }
  out << "rows matched: " << ok << '/' << xs.size() << '\n';
  json r = report_header(command, g);
  r["completion"] = completion.kind == quantum::Completion::Kind::GramSchmidt ? "gram-schmidt" : "random";
  r["matches"] = ok;
  r["rows"] = rows;
  emit(r, g);
  return ok == xs.size() ? kExitPass : kExitMismatch;
}

std::vector<BitString> all_inputs(std::size_t n) {
  std::vector<BitString> xs;
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) xs.push_back(BitString::from_index(n, idx));
  return xs;
}

int demo_tables(int row, const Globals& g) {
  if (row < -1 || row > 7) throw UsageError("--row must be in 0..7");
  auto& out = text(g);
  json r = report_header("demo tables", g);
  const auto pick = [row](int i) { return row < 0 || row == i; };
  out << "f6c reduced truth table (x1 x2 x3 | f)\n";
  json t2 = json::array();
  for (int i = 0; i < 8; ++i) {
    if (!pick(i)) continue;
    const auto& e = f6c_reduced_table()[static_cast<std::size_t>(i)];
    out << "  " << bits_of(e.key) << " | " << e.value.to_string() << '\n';
    t2.push_back({{"key", bits_of(e.key)}, {"value", e.value.to_string()}});
  }
  out << "lugano_bar fixed points (x1 x2 x3 | j | o | wF)\n";
  json t3 = json::array();
  for (int i = 0; i < 8; ++i) {
    if (!pick(i)) continue;
    const auto& e = lugano_bar_fixed_point_rows()[static_cast<std::size_t>(i)];
    out << "  " << bits_of(e.key) << " | " << e.queries[0] << ' ' << e.queries[1] << ' ' << e.queries[2] << " | "
        << e.answers[0].to_string() << ' ' << e.answers[1].to_string() << ' ' << e.answers[2].to_string() << " | "
        << e.future.to_string() << '\n';
    t3.push_back({{"key", bits_of(e.key)}, {"queries", e.queries}, {"future", e.future.to_string()}});
  }
  out << "quantum registers (parities | F | alpha | f6q)\n";
  json t4 = json::array();
  for (int i = 0; i < 8; ++i) {
    if (!pick(i)) continue;
    const auto& e = quantum_register_rows()[static_cast<std::size_t>(i)];
    out << "  " << bits_of(e.parities) << " | " << e.f_register[0].to_string() << ' ' << e.f_register[1].to_string()
        << ' ' << e.f_register[2].to_string() << " | " << bits_of(e.alpha) << " | " << e.value.to_string() << '\n';
    t4.push_back({{"parities", bits_of(e.parities)}, {"alpha", bits_of(e.alpha)}, {"value", e.value.to_string()}});
  }
  r["f6c_reduced"] = t2;
  r["fixed_points"] = t3;
  r["quantum_registers"] = t4;
  emit(r, g);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// compose

int run_compose(const std::string& base, int depth, std::uint64_t samples, const Globals& g) {
  if (depth < 1) throw UsageError("--depth must be >= 1");
  const auto f = builtin_function(base, 6);
  std::shared_ptr<const ProcessFunction> w;
  std::uint64_t T = 0;
  if (base == "f6c") {
    w = std::make_shared<const TableProcess>(lugano_bar());
    T = 3;
  } else {
    const auto qc = deterministic_query_complexity(f);
    w = std::make_shared<const TableProcess>(process_from_tree(qc.tree, f.arity()));
    T = w->slot_count();
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto check = verify_composition(w, f, depth, {samples, g.seed, true});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto report = separation_report(f, T, depth);

  auto& out = text(g);
  out << "base " << base << ", depth " << depth << ": " << check.slots << " slots on " << check.input_bits
      << "-bit inputs\n";
  out << "agreement: " << check.agreed << '/' << check.checked
      << (check.exhaustive ? " (exhaustive)" : " (" + std::to_string(check.structured_checked) + " structured + " +
                                                   std::to_string(samples) + " random)")
      << '\n';
  if (check.first_mismatch) out << "first mismatch: " << check.first_mismatch->to_string() << '\n';
  out << " l | witnessed slots | D(f^(l))\n";
  json rows = json::array();
  for (const auto& row : report) {
    out << ' ' << row.depth << " | " << std::setw(15) << row.witnessed_slots << " | " << row.decision_tree_depth
        << (row.computed ? "" : " (composition theorem)") << '\n';
    rows.push_back({{"depth", row.depth},
                    {"witnessed_slots", row.witnessed_slots},
                    {"decision_tree_depth", row.decision_tree_depth},
                    {"computed", row.computed}});
  }
  json r = report_header("compose", g);
  r["base"] = base;
  r["depth"] = depth;
  r["slots"] = check.slots;
  r["input_bits"] = check.input_bits;
  r["checked"] = check.checked;
  r["agreed"] = check.agreed;
  r["structured"] = check.structured_checked;
  r["samples"] = check.exhaustive ? 0 : samples;
  r["exhaustive"] = check.exhaustive;
  r["seconds"] = seconds;
  r["separation"] = rows;
  if (check.first_mismatch) r["first_mismatch"] = check.first_mismatch->to_string();
  emit(r, g);
  return check.agreed == check.checked ? kExitPass : kExitMismatch;
}

// ---------------------------------------------------------------------------
// sdp

int run_sdp_build(const std::string& fname, const std::string& fn_file, int n, int T, const std::string& path,
                  const Globals& g) {
  if (path.empty()) throw UsageError("sdp build needs --out <path.dat-s>");
  const auto f = load_function(fname, fn_file, n);
  const auto inst = sdp::build_sdp(f, T);
  sdp::export_sdpa(inst, path);
  auto& out = text(g);
  out << "wrote " << path << ": " << inst.constraints.size() << " constraints, " << inst.matrix_variables()
      << " matrix variables of size " << inst.dim() << " plus epsilon\n";
  json r = report_header("sdp build", g);
  r["path"] = path;
  r["n"] = inst.n;
  r["T"] = inst.T;
  r["constraints"] = inst.constraints.size();
  r["matrix_variables"] = inst.matrix_variables();
  r["block_sizes"] = inst.block_sizes;
  emit(r, g);
  return kExitPass;
}

int run_sdp_verify(const std::string& inst_path, const std::string& sol_path, double tol, const Globals& g) {
  const auto inst = sdp::instance_from_sdpa(sdp::read_sdpa_file(inst_path));
  std::ifstream in(sol_path);
  if (!in) throw UsageError("cannot open " + sol_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto sol = sdp::parse_solution_json(buf.str());
  const auto rep = sdp::verify_solution(inst, sol, tol);
  auto& out = text(g);
  out << "epsilon: " << rep.epsilon << '\n'
      << "max residual: " << rep.max_residual << " (constraint " << rep.worst_constraint + 1 << ")\n"
      << "min eigenvalue: " << rep.min_eigenvalue << '\n'
      << "feasible at tol " << tol << ": " << (rep.feasible ? "yes" : "no") << '\n';
  json r = report_header("sdp verify", g);
  r["epsilon"] = rep.epsilon;
  r["max_residual"] = rep.max_residual;
  r["worst_constraint"] = rep.worst_constraint + 1;
  r["min_eigenvalue"] = rep.min_eigenvalue;
  r["tol"] = tol;
  r["feasible"] = rep.feasible;
  emit(r, g);
  return rep.feasible ? kExitPass : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query-complexity workbench for process functions and quantum supermaps"};
  app.set_version_flag("--version", std::string(ICQ_VERSION));
  app.require_subcommand(1);
  // Global flags may also follow the subcommand.
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for sampled checks")->capture_default_str();
  app.add_option("--out", g.out, "Write the JSON report to this file");
  app.add_flag("--json", g.json_stdout, "Print the JSON report instead of text");

  std::string builtin;
  std::string fn_file;
  int n = 3;

  auto* analyze = app.add_subcommand("analyze", "D, deg and C of a Boolean function with an optimal tree");
  analyze->add_option("--builtin", builtin, "f6c, f6q, const0, const1, and, or, xor");
  analyze->add_option("--fn-file", fn_file, "Truth-table file");
  analyze->add_option("--n", n, "Arity for const0/const1/and/or/xor")->check(CLI::Range(1, 24));

  std::string proc_builtin;
  std::string proc_file;
  std::string regime = "constants";
  std::string computes_name;
  std::uint64_t budget = kDefaultValidationBudget;
  auto* process = app.add_subcommand("process", "Validity and causal definiteness of a process function");
  process->add_option("--builtin", proc_builtin, "lugano or lugano_bar");
  process->add_option("--file", proc_file, "Process JSON file");
  process->add_option("--regime", regime, "Operations tried in the definiteness test: constants or all")
      ->capture_default_str();
  process->add_option("--computes", computes_name, "Check that the process computes this 6-bit builtin");
  process->add_option("--budget", budget, "Operation tuples allowed in validation")->capture_default_str();

  std::string demo_name;
  std::string expect_file;
  std::string dump_expected;
  int row = -1;
  std::string csv_dir;
  auto* demo = app.add_subcommand("demo", "Reproduce the f6c, f6q and reference tables");
  demo->add_option("name", demo_name, "f6c, f6q or tables")->required()->check(CLI::IsMember({"f6c", "f6q", "tables"}));
  demo->add_option("--expect-file", expect_file, "Fixed-point expectations to check against (f6c)");
  demo->add_option("--dump-expected", dump_expected, "Write the built-in fixed-point expectations (f6c)");
  demo->add_option("--row", row, "Only this reference row (tables)");

  std::string base = "f6c";
  int depth = 2;
  std::uint64_t samples = 10000;
  auto* compose = app.add_subcommand("compose", "Check the recursive process composition against f^(l)");
  compose->add_option("--base", base, "Builtin 6-bit base function")->capture_default_str();
  compose->add_option("--depth", depth, "Recursion depth l")->capture_default_str();
  compose->add_option("--samples", samples, "Random inputs when exhaustion is out of reach")->capture_default_str();

  std::string qname;
  bool all = false;
  std::string xbits;
  std::string completion = "gram-schmidt";
  std::uint64_t completion_seed = 7;
  auto* quantum_cmd = app.add_subcommand("quantum", "Run the quantum Lugano supermap on phase oracles");
  quantum_cmd->add_option("name", qname, "f6q")->required()->check(CLI::IsMember({"f6q"}));
  quantum_cmd->add_flag("--all", all, "All 64 inputs");
  quantum_cmd->add_option("--x", xbits, "One 6-bit input");
  quantum_cmd->add_option("--completion", completion, "gram-schmidt or random")->capture_default_str();
  quantum_cmd->add_option("--completion-seed", completion_seed, "Seed of the random completion")->capture_default_str();
  quantum_cmd->add_option("--csv", csv_dir, "Directory for per-input state CSV files");

  auto* sdp_cmd = app.add_subcommand("sdp", "Build or verify the sequential-query SDP");
  sdp_cmd->require_subcommand(1);
  std::string sdp_f;
  std::string sdp_fn_file;
  int sdp_n = 3;
  int sdp_T = 3;
  std::string sdp_path;
  auto* sdp_build = sdp_cmd->add_subcommand("build", "Export an instance in SDPA sparse format");
  sdp_build->add_option("--f", sdp_f, "Builtin function");
  sdp_build->add_option("--fn-file", sdp_fn_file, "Truth-table file");
  sdp_build->add_option("--n", sdp_n, "Arity for parametrized builtins")->check(CLI::Range(1, 8));
  sdp_build->add_option("--T", sdp_T, "Number of queries")->capture_default_str()->check(CLI::PositiveNumber);
  sdp_build->add_option("--out,--file", sdp_path, "Output .dat-s path");
  std::string inst_path;
  std::string sol_path;
  double tol = sdp::kDefaultFeasibilityTol;
  auto* sdp_verify = sdp_cmd->add_subcommand("verify", "Check a solution JSON against an exported instance");
  sdp_verify->add_option("--inst", inst_path, "Instance .dat-s file")->required();
  sdp_verify->add_option("--sol", sol_path, "Solution JSON")->required();
  sdp_verify->add_option("--tol", tol, "Feasibility tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(builtin, fn_file, n, g);
    if (*process) return run_process(proc_builtin, proc_file, regime, computes_name, budget, g);
    if (*demo) {
      if (demo_name == "f6c") return demo_f6c(expect_file, dump_expected, g);
      if (demo_name == "f6q") return run_quantum_rows(all_inputs(6), {}, csv_dir, "demo f6q", g);
      return demo_tables(row, g);
    }
    if (*compose) return run_compose(base, depth, samples, g);
    if (*quantum_cmd) {
      quantum::Completion c;
      if (completion == "random") {
        c = quantum::Completion::random(completion_seed);
      } else if (completion != "gram-schmidt") {
        throw UsageError("--completion must be gram-schmidt or random");
      }
      if (all == !xbits.empty()) throw UsageError("give exactly one of --all and --x");
      const auto xs = all ? all_inputs(6) : std::vector<BitString>{parse_bits(xbits, 6)};
      return run_quantum_rows(xs, c, csv_dir, "quantum f6q", g);
    }
    if (*sdp_build) return run_sdp_build(sdp_f, sdp_fn_file, sdp_n, sdp_T, sdp_path, g);
    if (*sdp_verify) return run_sdp_verify(inst_path, sol_path, tol, g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
