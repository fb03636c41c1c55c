#include "icq/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "icq/errors.hpp"

namespace icq {

BooleanFunction read_truth_table(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("truth table: missing header line");
  while (!header.empty() && (header.back() == '\r' || header.back() == ' ')) header.pop_back();
  if (header.rfind("n=", 0) != 0) throw ParseError("truth table: header must read n=<arity>");
  int n = 0;
  try {
    n = std::stoi(header.substr(2));
  } catch (const std::exception&) {
    throw ParseError("truth table: bad arity in header");
  }
  if (n < 1 || n > kDefaultTableLimit) throw ParseError("truth table: arity outside 1..24");
  std::string bits;
  std::string line;
  while (std::getline(in, line)) {
    for (char ch : line) {
      if (ch == '0' || ch == '1') {
        bits.push_back(ch);
      } else if (ch != ' ' && ch != '\r' && ch != '\t') {
        throw ParseError(std::string("truth table: unexpected character '") + ch + "'");
      }
    }
  }
  if (bits.size() != (std::size_t{1} << n)) {
    throw ParseError("truth table: expected " + std::to_string(std::size_t{1} << n) + " entries, found " +
                     std::to_string(bits.size()));
  }
  std::vector<std::uint8_t> table(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) table[i] = bits[i] == '1' ? 1 : 0;
  return BooleanFunction::from_table(n, std::move(table));
}

BooleanFunction read_truth_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_truth_table(in);
}

void write_truth_table(std::ostream& out, const BooleanFunction& f) {
  out << "n=" << f.arity() << '\n';
  for (auto v : f.table()) out << (v ? '1' : '0');
  out << '\n';
}

nlohmann::json tree_to_json(const DecisionTree& tree) {
  if (tree.is_leaf()) return {{"leaf", tree.leaf_value() ? 1 : 0}};
  return {{"query", tree.index()}, {"on0", tree_to_json(tree.on0())}, {"on1", tree_to_json(tree.on1())}};
}

DecisionTree tree_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("tree JSON: node must be an object");
  if (j.contains("leaf")) {
    const auto& v = j.at("leaf");
    if (v.is_boolean()) return DecisionTree::leaf(v.get<bool>());
    if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) return DecisionTree::leaf(v.get<int>() == 1);
    throw ParseError("tree JSON: leaf must be 0 or 1");
  }
  if (!j.contains("query") || !j.contains("on0") || !j.contains("on1")) {
    throw ParseError("tree JSON: node needs query, on0 and on1");
  }
  const int index = j.at("query").get<int>();
  if (index < 1) throw ParseError("tree JSON: query indices start at 1");
  return DecisionTree::query(index, tree_from_json(j.at("on0")), tree_from_json(j.at("on1")));
}

nlohmann::json process_to_json(const TableProcess& w) {
  nlohmann::json j;
  j["past"] = w.past().size;
  j["future"] = w.future().size;
  if (w.past().label_offset) j["past_offset"] = w.past().label_offset;
  if (w.future().label_offset) j["future_offset"] = w.future().label_offset;
  j["slots"] = nlohmann::json::array();
  for (const auto& s : w.slots()) {
    nlohmann::json slot{{"in", s.in.size}, {"out", s.out.size}};
    if (s.in.label_offset) slot["in_offset"] = s.in.label_offset;
    if (s.out.label_offset) slot["out_offset"] = s.out.label_offset;
    j["slots"].push_back(std::move(slot));
  }
  j["table"] = nlohmann::json::array();
  for (const auto& r : w.rows()) {
    nlohmann::json row = r.inputs;
    row.push_back(r.future);
    j["table"].push_back(std::move(row));
  }
  return j;
}

TableProcess process_from_json(const nlohmann::json& j) {
  try {
    FiniteSpace past{j.at("past").get<std::uint64_t>(), j.value("past_offset", std::int64_t{0})};
    FiniteSpace future{j.at("future").get<std::uint64_t>(), j.value("future_offset", std::int64_t{0})};
    std::vector<Slot> slots;
    for (const auto& s : j.at("slots")) {
      slots.push_back({{s.at("in").get<std::uint64_t>(), s.value("in_offset", std::int64_t{0})},
                       {s.at("out").get<std::uint64_t>(), s.value("out_offset", std::int64_t{0})}});
    }
    std::vector<ProcessRow> rows;
    for (const auto& r : j.at("table")) {
      auto values = r.get<std::vector<Element>>();
      if (values.size() != slots.size() + 1) throw ParseError("process JSON: row length must be T+1");
      ProcessRow row;
      row.future = values.back();
      values.pop_back();
      row.inputs = std::move(values);
      rows.push_back(std::move(row));
    }
    return TableProcess(past, future, std::move(slots), std::move(rows));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("process JSON: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(std::string("process JSON: ") + e.what());
  } catch (const SignatureMismatch& e) {
    throw ParseError(std::string("process JSON: ") + e.what());
  }
}

TableProcess read_process_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("process JSON: ") + e.what());
  }
  return process_from_json(j);
}

}  // namespace icq
