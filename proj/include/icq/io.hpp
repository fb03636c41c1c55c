#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "icq/boolean_function.hpp"
#include "icq/decision_tree.hpp"
#include "icq/process.hpp"

namespace icq {

/// Truth-table files: a line `n=<arity>` followed by 2^n characters 0/1,
/// x_1 most significant.
BooleanFunction read_truth_table(std::istream& in);
BooleanFunction read_truth_table_file(const std::string& path);
void write_truth_table(std::ostream& out, const BooleanFunction& f);

/// {"query": i, "on0": ..., "on1": ...} or {"leaf": b}.
nlohmann::json tree_to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const nlohmann::json& j);

/// {"past": p, "future": f, "slots": [{"in": dI, "out": dO}, ...],
///  "table": [[i_1, ..., i_T, b], ...]} with rows indexed by (a, o) row-major
/// and raw 0-based elements. Optional "past_offset", "future_offset" and
/// per-slot "in_offset"/"out_offset" set display offsets.
nlohmann::json process_to_json(const TableProcess& w);
TableProcess process_from_json(const nlohmann::json& j);
TableProcess read_process_file(const std::string& path);

}  // namespace icq
