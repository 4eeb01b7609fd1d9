#include "oracles.hpp"

#include <csplab/algebra.hpp>
#include <csplab/domain_state.hpp>
#include <csplab/gac.hpp>
#include <csplab/generators.hpp>
#include <csplab/problem_io.hpp>

#include <gtest/gtest.h>

using namespace csplab;

namespace {

Problem two_vars(Constraint c, int d = 2)
{
    std::vector<Value> dom;
    for (int i = 1; i <= d; ++i) {
        dom.emplace_back(std::int64_t{i});
    }
    return Problem({"x", "y"}, {dom, dom}, {std::move(c)});
}

} // namespace

TEST(Revise, FullySupportedRemovesNothing)
{
    const auto p = two_vars(Constraint::not_equal(0, 1));
    DomainState ds(p);
    EXPECT_TRUE(revise(p, 0, 0, ds).empty());
    EXPECT_EQ(ds.size(0), 2);
}

TEST(Revise, NotEqualWithSingletonsWipesOut)
{
    const Problem p({"x", "y"}, {{Value{1}}, {Value{1}}}, {Constraint::not_equal(0, 1)});
    DomainState ds(p);
    EXPECT_EQ(revise(p, 0, 1, ds), std::vector<ValueIndex>{0});
    EXPECT_EQ(ds.size(1), 0);
}

TEST(Revise, ExtensionalMatchesSupportScan)
{
    // rel {(1,2)}: revising x drops 2, revising y drops 1.
    const auto p = two_vars(Constraint::extensional({0, 1}, {{0, 1}}));
    DomainState ds(p);
    EXPECT_EQ(revise(p, 0, 0, ds), std::vector<ValueIndex>{1});
    EXPECT_EQ(revise(p, 0, 1, ds), std::vector<ValueIndex>{0});
    EXPECT_EQ(oracle::unsupported_values(p, ds), 0U);
}

TEST(Revise, LetterEqualityUsesCurrentDomain)
{
    const Problem p({"a", "d"}, {{Value{"cat"}, Value{"dog"}}, {Value{"tap"}, Value{"ton"}, Value{"gem"}}},
                    {Constraint::letter_equality(0, 1, 2, 0)});
    DomainState ds(p);
    // "dog" ends in g, matched by "gem"; "cat" ends in t.
    EXPECT_TRUE(revise(p, 0, 0, ds).empty());
    const std::vector<std::uint64_t> none(ds.explanation_words(), 0);
    ds.remove(1, 2, 0, none);
    EXPECT_EQ(revise(p, 0, 0, ds), std::vector<ValueIndex>{1});
}

TEST(EnforceGac, PigeonholeSmallGroupWipesOut)
{
    const Problem p({"y1", "y2"}, {{Value{1}}, {Value{1}}}, {Constraint::not_equal(0, 1)});
    DomainState ds(p);
    const auto r = enforce_gac(p, ds, false);
    EXPECT_TRUE(r.wipeout);
    ASSERT_TRUE(r.wiped.has_value());
}

TEST(EnforceGac, AlreadyConsistentIsIdempotent)
{
    const auto p = oracle::coloring();
    DomainState ds(p);
    const auto first = enforce_gac(p, ds, false);
    EXPECT_FALSE(first.wipeout);
    // x4 = r removes r from x2 and x3.
    EXPECT_EQ(first.removals.size(), 2U);
    const auto second = enforce_gac(p, ds, false);
    EXPECT_TRUE(second.removals.empty());
}

TEST(EnforceGac, ExplanationsCiteInstantiationLevels)
{
    // x <- 1 at level 1; x != y then removes 1 from y with explanation {1}.
    const auto p = two_vars(Constraint::not_equal(0, 1), 3);
    DomainState ds(p, 4);
    ds.assign(0, 0, 1);
    const auto r = enforce_gac(p, ds, true);
    ASSERT_EQ(r.removals.size(), 1U);
    EXPECT_EQ(r.removals[0].var, 1);
    EXPECT_EQ(r.removals[0].value, 0);
    EXPECT_TRUE(r.removals[0].explanation.contains(1));
    EXPECT_EQ(r.removals[0].explanation.max(), 1);
}

TEST(EnforceGac, WipeoutExplanationCollectsCauses)
{
    // a <- 1 (level 1) and b <- 2 (level 2) leave c in {1,2} with nothing.
    const std::vector<Value> d{Value{1}, Value{2}};
    const Problem p({"a", "b", "c", "z"}, {d, d, d, d},
                    {Constraint::not_equal(0, 2), Constraint::not_equal(1, 2), Constraint::not_equal(3, 0)});
    DomainState ds(p, 4);
    ds.assign(3, 1, 1);
    ds.assign(0, 0, 2);
    ds.assign(1, 1, 3);
    const auto r = enforce_gac(p, ds, true);
    ASSERT_TRUE(r.wipeout);
    // Either c or b (whose value c can no longer support) wipes out first.
    EXPECT_TRUE(*r.wiped == 1 || *r.wiped == 2);
    EXPECT_TRUE(r.wipeout_explanation.contains(2));
    EXPECT_TRUE(r.wipeout_explanation.contains(3));
    EXPECT_FALSE(r.wipeout_explanation.contains(1));
}

TEST(EnforceGac, TrailRestoresDomains)
{
    const auto p = oracle::small_random(5);
    DomainState ds(p, p.num_variables() + 1);
    const auto before = ds.fingerprint();
    const auto mark = ds.mark();
    ds.assign(0, 0, 1);
    (void)enforce_gac(p, ds, true);
    ds.restore(mark);
    EXPECT_EQ(ds.fingerprint(), before);
    for (VarId v = 0; v < p.num_variables(); ++v) {
        EXPECT_EQ(ds.size(v), p.domain_size(v));
    }
}

TEST(GacProperties, FixpointIdempotenceAndMonotonicity)
{
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto p = oracle::small_random(seed);
        DomainState ds(p);
        const auto r = enforce_gac(p, ds, false);
        if (!r.wipeout) {
            EXPECT_EQ(oracle::unsupported_values(p, ds), 0U) << "seed " << seed;
            EXPECT_TRUE(enforce_gac(p, ds, false).removals.empty()) << "seed " << seed;
        }
        // Starting from a smaller state never ends with a larger one.
        DomainState smaller(p);
        const std::vector<std::uint64_t> none(smaller.explanation_words(), 0);
        smaller.remove(0, 0, -3, none);
        const auto r2 = enforce_gac(p, smaller, false);
        if (!r.wipeout && !r2.wipeout) {
            for (VarId v = 0; v < p.num_variables(); ++v) {
                for (ValueIndex a = 0; a < p.domain_size(v); ++a) {
                    EXPECT_FALSE(smaller.contains(v, a) && !ds.contains(v, a)) << "seed " << seed;
                }
            }
        }
        EXPECT_FALSE(r.wipeout && !r2.wipeout) << "seed " << seed;
    }
}

TEST(GacProperties, SolutionsSurviveEnforcement)
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto p = oracle::small_random(seed, 6, 3, 8);
        DomainState ds(p);
        const auto r = enforce_gac(p, ds, false);
        for (const auto& s : enumerate_solutions(p)) {
            EXPECT_FALSE(r.wipeout);
            for (const auto& [v, a] : s) {
                EXPECT_TRUE(ds.contains(v, a)) << "seed " << seed;
            }
        }
    }
}

TEST(GacProperties, IntensionalAgreesWithMaterialized)
{
    const auto grid = parse_grid(read_text_file(std::string(CSPLAB_DATA_DIR) + "/grids/corner-4x4.grid"));
    const auto dict = parse_dictionary(read_text_file(std::string(CSPLAB_DATA_DIR) + "/words-1k.txt"));
    const auto p = build_crossword(grid, dict.words);
    const auto m = p.materialized();
    DomainState a(p);
    DomainState b(m);
    const auto ra = enforce_gac(p, a, false);
    const auto rb = enforce_gac(m, b, false);
    EXPECT_EQ(ra.wipeout, rb.wipeout);
    EXPECT_EQ(a.fingerprint(), b.fingerprint());
}

TEST(GacProperties, CrosswordFixpoint)
{
    const auto grid = parse_grid(read_text_file(std::string(CSPLAB_DATA_DIR) + "/grids/puzzle-5x5.grid"));
    const auto dict = parse_dictionary(read_text_file(std::string(CSPLAB_DATA_DIR) + "/words-1k.txt"));
    const auto p = build_crossword(grid, dict.words);
    DomainState ds(p);
    const auto r = enforce_gac(p, ds, false);
    if (!r.wipeout) {
        EXPECT_EQ(oracle::unsupported_values(p, ds), 0U);
    }
    EXPECT_TRUE(enforce_gac(p, ds, false).removals.empty());
}
