#include "oracles.hpp"

#include <csplab/error.hpp>
#include <csplab/generators.hpp>
#include <csplab/heuristics.hpp>
#include <csplab/problem_io.hpp>

#include <gtest/gtest.h>

using namespace csplab;

namespace {

// x: domain 2, degree 1; y: domain 2, degree 3; z: domain 3, degree 4.
Problem degree_fixture()
{
    const std::vector<Value> two{Value{0}, Value{1}};
    const std::vector<Value> three{Value{0}, Value{1}, Value{2}};
    const std::vector<Value> one{Value{0}};
    std::vector<Constraint> cs{Constraint::not_equal(0, 1), Constraint::not_equal(1, 2),
                               Constraint::not_equal(1, 2), Constraint::not_equal(2, 3),
                               Constraint::not_equal(2, 4)};
    return Problem({"x", "y", "z", "u", "w"}, {two, two, three, one, one}, cs);
}

VarId pick(const Problem& p, const HeuristicSpec& spec, std::vector<char> assigned = {})
{
    DomainState ds(p);
    if (assigned.empty()) {
        assigned.assign(static_cast<std::size_t>(p.num_variables()), 0);
    }
    return select_variable(p, ds, assigned, {}, spec);
}

} // namespace

TEST(SelectVariable, DegreeTieBreaksAndRatios)
{
    const auto p = degree_fixture();
    ASSERT_EQ(p.degree(0), 1);
    ASSERT_EQ(p.degree(1), 3);
    ASSERT_EQ(p.degree(2), 4);
    // u and w (domain 1) are taken out of the running.
    const std::vector<char> assigned{0, 0, 0, 1, 1};
    EXPECT_EQ(pick(p, HeuristicSpec::dom(), assigned), 0);
    EXPECT_EQ(pick(p, HeuristicSpec::dom_plus_deg(), assigned), 1);
    // 2/3 < 3/4 < 2/1.
    EXPECT_EQ(pick(p, HeuristicSpec::dom_div_deg(), assigned), 1);
    EXPECT_EQ(pick(p, HeuristicSpec::lex(), assigned), 0);
    EXPECT_EQ(pick(p, HeuristicSpec::given({2, 0, 1, 3, 4}), assigned), 2);
}

TEST(SelectVariable, AllEqualPicksSmallestIndex)
{
    const std::vector<Value> d{Value{0}, Value{1}};
    const Problem p({"a", "b", "c"}, {d, d, d},
                    {Constraint::not_equal(0, 1), Constraint::not_equal(1, 2), Constraint::not_equal(2, 0)});
    for (const auto& spec : {HeuristicSpec::lex(), HeuristicSpec::dom(), HeuristicSpec::dom_plus_deg(),
                             HeuristicSpec::dom_div_deg()}) {
        EXPECT_EQ(pick(p, spec), 0);
        EXPECT_EQ(pick(p, spec, {1, 0, 0}), 1);
    }
}

TEST(SelectVariable, DomDivDegIsExactAndHandlesDegreeZero)
{
    // An unconstrained variable ranks after any constrained one.
    std::vector<Value> d5;
    for (int i = 0; i < 5; ++i) {
        d5.emplace_back(std::int64_t{i});
    }
    const Problem p({"free", "a"}, {d5, d5}, {Constraint::extensional({1}, {{0}, {1}, {2}, {3}, {4}})});
    EXPECT_EQ(pick(p, HeuristicSpec::dom_div_deg()), 1);

    // 2/3 < 7/10.
    std::vector<Value> d7(d5);
    d7.emplace_back(std::int64_t{5});
    d7.emplace_back(std::int64_t{6});
    const std::vector<Value> d2{Value{0}, Value{1}};
    std::vector<Constraint> cs;
    for (int i = 0; i < 10; ++i) {
        cs.push_back(Constraint::extensional({0}, {{0}, {1}, {2}, {3}, {4}, {5}, {6}}));
    }
    for (int i = 0; i < 3; ++i) {
        cs.push_back(Constraint::extensional({1}, {{0}, {1}}));
    }
    const Problem q({"seven", "two"}, {d7, d2}, cs);
    EXPECT_EQ(pick(q, HeuristicSpec::dom_div_deg()), 1);
}

TEST(SelectVariable, UsesCurrentDomains)
{
    const auto p = degree_fixture();
    DomainState ds(p);
    const std::vector<std::uint64_t> none(ds.explanation_words(), 0);
    ds.remove(2, 0, -3, none);
    ds.remove(2, 1, -3, none);
    const std::vector<char> assigned{0, 0, 0, 1, 1};
    EXPECT_EQ(select_variable(p, ds, assigned, {}, HeuristicSpec::dom()), 2);
}

TEST(SelectVariable, ErrorsAndValidation)
{
    const auto p = degree_fixture();
    EXPECT_THROW((void)pick(p, HeuristicSpec::lex(), {1, 1, 1, 1, 1}), PreconditionError);
    EXPECT_THROW(validate_order(p, {0, 1, 2}), PreconditionError);
    EXPECT_THROW(validate_order(p, {0, 1, 2, 3, 3}), PreconditionError);
    EXPECT_NO_THROW(validate_order(p, {4, 3, 2, 1, 0}));
}

TEST(SelectVariable, CrosswordDegrees)
{
    const auto grid = parse_grid(read_text_file(std::string(CSPLAB_DATA_DIR) + "/grids/puzzle-5x5.grid"));
    const auto dict = parse_dictionary(read_text_file(std::string(CSPLAB_DATA_DIR) + "/words-1k.txt"));
    const auto p = build_crossword(grid, dict.words);
    // Row 1 across: length 5, crosses 5 downs, 3 other length-5 slots.
    const auto v = p.find("A1_0");
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(p.degree(*v), 8);
    // Row 0 across: length 3, crosses 3 downs, one other length-3 slot.
    EXPECT_EQ(p.degree(*p.find("A0_0")), 4);
}

TEST(ParseHeuristic, Tokens)
{
    EXPECT_EQ(parse_heuristic("dom+deg").kind, HeuristicKind::DomPlusDeg);
    EXPECT_EQ(parse_heuristic("dom/deg").kind, HeuristicKind::DomDivDeg);
    EXPECT_EQ(parse_heuristic("given").kind, HeuristicKind::Given);
    EXPECT_EQ(heuristic_name(parse_heuristic("lex")), "lex");
    EXPECT_THROW((void)parse_heuristic("random"), ParseError);
}
