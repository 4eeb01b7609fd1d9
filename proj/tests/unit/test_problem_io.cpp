#include "oracles.hpp"

#include <csplab/algebra.hpp>
#include <csplab/error.hpp>
#include <csplab/generators.hpp>
#include <csplab/problem_io.hpp>

#include <gtest/gtest.h>

#include <filesystem>

using namespace csplab;

TEST(ProblemIo, RoundTripsEveryConstraintKind)
{
    const Problem p({"w1", "w2", "n"}, {{Value{"ab"}, Value{"ba"}}, {Value{"ab"}, Value{"bb"}}, {Value{3}, Value{-1}}},
                    {Constraint::letter_equality(0, 1, 1, 0), Constraint::not_equal(0, 1),
                     Constraint::extensional({2, 0}, {{1, 0}, {0, 1}})});
    const auto text = problem_to_json(p);
    const auto q = parse_problem(text);
    EXPECT_TRUE(problems_equal(p, q));
    EXPECT_EQ(problem_to_json(q), text);
}

TEST(ProblemIo, FieldOrderIsStable)
{
    const auto text = problem_to_json(oracle::coloring());
    const auto v = text.find("\"variables\"");
    const auto d = text.find("\"domains\"");
    const auto c = text.find("\"constraints\"");
    EXPECT_LT(v, d);
    EXPECT_LT(d, c);
    EXPECT_NE(text.find("\"kind\":\"extensional\""), std::string::npos);
}

TEST(ProblemIo, ParsesHandWrittenFile)
{
    const auto p = parse_problem(R"({
      "variables": ["x", "y"],
      "domains": {"x": [1, 2], "y": ["a", "b"]},
      "constraints": [
        {"scope": ["x", "y"], "kind": "extensional", "tuples": [[1, "b"], [2, "a"]]},
        {"scope": ["y", "x"], "kind": "not_equal"}
      ]})");
    EXPECT_EQ(p.num_variables(), 2);
    EXPECT_EQ(p.num_constraints(), 2);
    EXPECT_EQ(count_solutions(p), 2U);
}

TEST(ProblemIo, RejectsMalformedDocuments)
{
    EXPECT_THROW(parse_problem("{"), ParseError);
    EXPECT_THROW(parse_problem(R"({"variables": ["x"], "domains": {}, "constraints": []})"), ParseError);
    EXPECT_THROW(parse_problem(R"({"variables": ["x"], "domains": {"x": [1]},
        "constraints": [{"scope": ["z"], "kind": "extensional", "tuples": [[1]]}]})"),
                 ParseError);
    EXPECT_THROW(parse_problem(R"({"variables": ["x"], "domains": {"x": [1]},
        "constraints": [{"scope": ["x"], "kind": "extensional", "tuples": [[2]]}]})"),
                 ParseError);
    EXPECT_THROW(parse_problem(R"({"variables": ["x"], "domains": {"x": [1.5]}, "constraints": []})"), ParseError);
    EXPECT_THROW(parse_problem(R"({"variables": ["x"], "domains": {"x": [1]},
        "constraints": [{"scope": ["x"], "kind": "bogus"}]})"),
                 ParseError);
    EXPECT_THROW(parse_problem(R"({"variables": ["x", "x"], "domains": {"x": [1]}, "constraints": []})"),
                 ParseError);
}

TEST(ProblemIo, SaveAndLoadThroughFiles)
{
    const auto dir = std::filesystem::temp_directory_path() / "csplab_io_test";
    std::filesystem::create_directories(dir);
    const auto p = gen_random({5, 3, 2, 6, 4, 11});
    save_problem(p, dir / "p.json");
    EXPECT_TRUE(problems_equal(p, load_problem(dir / "p.json")));
    EXPECT_THROW((void)load_problem(dir / "missing.json"), IoError);
    EXPECT_THROW(save_problem(p, dir / "no_such_dir" / "p.json"), IoError);
    std::filesystem::remove_all(dir);
}

TEST(OrderIo, ParsesAndValidates)
{
    const auto p = oracle::coloring();
    EXPECT_EQ(parse_order(p, "x3\nx1\r\n  x4 \nx2\n\n"), (std::vector<VarId>{2, 0, 3, 1}));
    EXPECT_EQ(parse_order(p, order_to_text(p, {3, 2, 1, 0})), (std::vector<VarId>{3, 2, 1, 0}));
    EXPECT_THROW((void)parse_order(p, "x1\nx2\n"), ParseError);
    EXPECT_THROW((void)parse_order(p, "x1\nx1\nx2\nx3\n"), ParseError);
    EXPECT_THROW((void)parse_order(p, "x1\nx2\nx3\nx9\n"), ParseError);
}
