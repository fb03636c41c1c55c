#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "icq/complexity.hpp"
#include "icq/errors.hpp"
#include "icq/io.hpp"
#include "icq/lugano.hpp"

using namespace icq;

TEST(TruthTableIoTest, RoundTrip) {
  std::stringstream ss;
  write_truth_table(ss, f6c());
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, 4), "n=6\n");
  const auto g = read_truth_table(ss);
  EXPECT_EQ(g.arity(), 6);
  for (std::uint64_t i = 0; i < 64; ++i) EXPECT_EQ(g.value_at(i), f6c().value_at(i));
}

TEST(TruthTableIoTest, FirstBitIsMostSignificant) {
  std::stringstream ss("n=2\n0010\n");
  const auto f = read_truth_table(ss);
  EXPECT_TRUE(f(BitString::from_string("10")));
  EXPECT_FALSE(f(BitString::from_string("01")));
}

TEST(TruthTableIoTest, Errors) {
  for (const char* bad : {"", "m=2\n0000\n", "n=2\n000\n", "n=2\n00x0\n", "n=0\n0\n", "n=abc\n"}) {
    std::stringstream ss(bad);
    EXPECT_THROW(read_truth_table(ss), ParseError) << bad;
  }
  EXPECT_THROW(read_truth_table_file("/nonexistent/table.txt"), ParseError);
}

TEST(TreeJsonTest, RoundTrip) {
  const auto tree = deterministic_query_complexity(f6c()).tree;
  const auto j = tree_to_json(tree);
  EXPECT_EQ(tree_from_json(j), tree);
  EXPECT_EQ(tree_from_json(nlohmann::json::parse(j.dump())), tree);
  EXPECT_EQ(tree_to_json(DecisionTree::leaf(true)), nlohmann::json::parse(R"({"leaf": 1})"));
}

TEST(TreeJsonTest, Errors) {
  EXPECT_THROW(tree_from_json(nlohmann::json::parse(R"({"leaf": 2})")), ParseError);
  EXPECT_THROW(tree_from_json(nlohmann::json::parse(R"({"query": 1, "on0": {"leaf": 0}})")), ParseError);
  EXPECT_THROW(tree_from_json(nlohmann::json::parse(R"({"query": 0, "on0": {"leaf": 0}, "on1": {"leaf": 1}})")),
               ParseError);
  EXPECT_THROW(tree_from_json(nlohmann::json::parse("[1]")), ParseError);
}

TEST(ProcessJsonTest, RoundTrip) {
  for (const auto& w : {lugano(), lugano_bar()}) {
    const auto j = process_to_json(w);
    EXPECT_EQ(process_from_json(j), w);
    EXPECT_EQ(process_from_json(nlohmann::json::parse(j.dump())), w);
  }
  const auto j = process_to_json(lugano_bar());
  EXPECT_EQ(j.at("slots").at(0).at("in_offset"), 1);
  EXPECT_EQ(j.at("table").size(), 8u);
  EXPECT_EQ(j.at("table").at(0), nlohmann::json::parse("[0, 1, 2, 0]"));
}

TEST(ProcessJsonTest, Errors) {
  EXPECT_THROW(process_from_json(nlohmann::json::parse(R"({"past": 1})")), ParseError);
  // Row with the wrong length.
  EXPECT_THROW(process_from_json(nlohmann::json::parse(
                   R"({"past": 1, "future": 1, "slots": [{"in": 2, "out": 2}], "table": [[0], [0, 0]]})")),
               ParseError);
  // Value outside its space.
  EXPECT_THROW(process_from_json(nlohmann::json::parse(
                   R"({"past": 1, "future": 1, "slots": [{"in": 2, "out": 2}], "table": [[0, 0], [3, 0]]})")),
               ParseError);
  // Missing rows.
  EXPECT_THROW(process_from_json(nlohmann::json::parse(
                   R"({"past": 1, "future": 1, "slots": [{"in": 2, "out": 2}], "table": [[0, 0]]})")),
               ParseError);
  EXPECT_THROW(read_process_file("/nonexistent/process.json"), ParseError);
}
