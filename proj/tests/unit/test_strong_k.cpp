#include "oracles.hpp"

#include <csplab/algebra.hpp>
#include <csplab/error.hpp>
#include <csplab/generators.hpp>
#include <csplab/random.hpp>
#include <csplab/strong_k.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace csplab;

namespace {

// Solutions as name -> value maps, comparable across remapped domains.
std::set<std::map<std::string, std::string>> solution_values(const Problem& p)
{
    std::set<std::map<std::string, std::string>> out;
    for (const auto& s : enumerate_solutions(p)) {
        std::map<std::string, std::string> m;
        for (const auto& [v, a] : s) {
            m[p.name(v)] = to_string(p.domain(v)[static_cast<std::size_t>(a)]);
        }
        out.insert(m);
    }
    return out;
}

std::set<std::string> domain_values(const Problem& p, VarId v)
{
    std::set<std::string> out;
    for (const auto& x : p.domain(v)) {
        out.insert(to_string(x));
    }
    return out;
}

// True when every tuple consistent in `stronger` over any <= 2 variables is
// also consistent in `weaker` (both over the same variable names and values).
bool pointwise_subset(const Problem& stronger, const Problem& weaker)
{
    const int n = stronger.num_variables();
    for (VarId v = 0; v < n; ++v) {
        for (const auto& x : domain_values(stronger, v)) {
            if (!domain_values(weaker, v).contains(x)) {
                return false;
            }
        }
    }
    for (VarId u = 0; u < n; ++u) {
        for (VarId v = u + 1; v < n; ++v) {
            for (ValueIndex a = 0; a < stronger.domain_size(u); ++a) {
                for (ValueIndex b = 0; b < stronger.domain_size(v); ++b) {
                    if (!is_consistent(stronger, {{u, a}, {v, b}})) {
                        continue;
                    }
                    const auto wa = weaker.index_of(u, stronger.domain(u)[static_cast<std::size_t>(a)]);
                    const auto wb = weaker.index_of(v, stronger.domain(v)[static_cast<std::size_t>(b)]);
                    if (!is_consistent(weaker, {{u, *wa}, {v, *wb}})) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

} // namespace

TEST(EnforceStrongK, KOneWithoutUnaryConflictsIsIdentity)
{
    const auto p = oracle::coloring();
    const auto r = enforce_strong_k(p, 1);
    ASSERT_FALSE(r.empty);
    EXPECT_TRUE(problems_equal(*r.problem, p));
    EXPECT_TRUE(r.ledger.empty());
}

TEST(EnforceStrongK, ColoringThreeConsistencyRemovesGreenFromX1)
{
    const auto p = oracle::coloring();
    const auto k2 = enforce_strong_k(p, 2);
    ASSERT_FALSE(k2.empty);
    EXPECT_TRUE(domain_values(*k2.problem, 0).contains("g"));
    const auto k3 = enforce_strong_k(p, 3);
    ASSERT_FALSE(k3.empty);
    EXPECT_FALSE(domain_values(*k3.problem, 0).contains("g"));
    EXPECT_EQ(domain_values(*k3.problem, 0), (std::set<std::string>{"r"}));
    EXPECT_TRUE(oracle::strongly_k_consistent(*k3.problem, 3));
}

TEST(EnforceStrongK, InducedColoringIsEmptyAtKTwo)
{
    // x3 keeps only r, which x4 = r cannot accompany.
    const auto q = induce(oracle::coloring(), {{0, 1}, {1, 2}});
    const auto k1 = enforce_strong_k(q, 1);
    ASSERT_FALSE(k1.empty);
    EXPECT_EQ(domain_values(*k1.problem, 0), (std::set<std::string>{"r"}));
    const auto r = enforce_strong_k(q, 2);
    EXPECT_TRUE(r.empty);
    EXPECT_FALSE(r.problem.has_value());
    ASSERT_FALSE(r.ledger.empty());
    EXPECT_TRUE(r.ledger.back().scope.empty());
}

TEST(EnforceStrongK, EmptyRelationMakesTheProblemEmpty)
{
    const Problem p({"a", "b"}, {{Value{1}}, {Value{1}}}, {Constraint::extensional({0, 1}, {})});
    EXPECT_TRUE(enforce_strong_k(p, 1).empty);
}

TEST(EnforceStrongK, Errors)
{
    const auto p = oracle::coloring();
    EXPECT_THROW((void)enforce_strong_k(p, 0), PreconditionError);
    const Problem q({"a", "b"}, {{Value{1}, Value{2}}, {Value{1}, Value{2}}}, {Constraint::not_equal(0, 1)});
    EXPECT_THROW((void)enforce_strong_k(q, 2), PreconditionError);
    // k beyond n is clamped.
    EXPECT_NO_THROW((void)enforce_strong_k(p, 9));
}

TEST(EnforceStrongK, LedgerNamesWitnesses)
{
    const auto r = enforce_strong_k(oracle::coloring(), 3);
    bool saw_value_removal = false;
    for (const auto& rec : r.ledger) {
        if (rec.scope.size() == 1 && rec.witness) {
            saw_value_removal = true;
            EXPECT_NE(*rec.witness, rec.scope[0]);
        }
    }
    EXPECT_TRUE(saw_value_removal);
}

TEST(IsKConsistentNode, RootOfSolubleProblem)
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto p = oracle::small_random(seed, 6, 3, 8);
        if (count_solutions(p) > 0) {
            for (int k = 1; k <= 3; ++k) {
                EXPECT_TRUE(is_k_consistent_node(p, {}, k)) << "seed " << seed;
            }
        }
    }
}

TEST(IsKConsistentNode, PigeonholeLevels)
{
    // Four pigeons, three holes. With one pigeon placed the other three share
    // two holes: only 3-consistency notices.
    const std::vector<Value> holes{Value{1}, Value{2}, Value{3}};
    std::vector<Constraint> cs;
    for (VarId i = 0; i < 4; ++i) {
        for (VarId j = i + 1; j < 4; ++j) {
            cs.push_back(Constraint::not_equal(i, j));
        }
    }
    const Problem p = Problem({"x1", "x2", "x3", "x4"}, {holes, holes, holes, holes}, cs).materialized();
    EXPECT_TRUE(is_k_consistent_node(p, {{0, 0}}, 1));
    EXPECT_TRUE(is_k_consistent_node(p, {{0, 0}}, 2));
    EXPECT_FALSE(is_k_consistent_node(p, {{0, 0}}, 3));
    EXPECT_FALSE(is_k_consistent_node(p, {{0, 0}, {1, 1}, {2, 2}}, 1));
    // The intensional original gives the same answers.
    EXPECT_FALSE(is_k_consistent_node(Problem({"x1", "x2", "x3", "x4"}, {holes, holes, holes, holes}, cs),
                                      {{0, 0}}, 3));
}

TEST(StrongKProperties, SoundConsistentAndIdempotent)
{
    for (std::uint64_t seed = 1; seed <= 120; ++seed) {
        const auto p = oracle::small_random(seed, 6, 3, 9);
        const auto sols = solution_values(p);
        for (int k = 1; k <= 3; ++k) {
            const auto r = enforce_strong_k(p, k);
            if (r.empty) {
                EXPECT_TRUE(sols.empty()) << "seed " << seed << " k " << k;
                continue;
            }
            EXPECT_EQ(solution_values(*r.problem), sols) << "seed " << seed << " k " << k;
            EXPECT_TRUE(oracle::strongly_k_consistent(*r.problem, k)) << "seed " << seed << " k " << k;
            const auto again = enforce_strong_k(*r.problem, k);
            ASSERT_FALSE(again.empty);
            EXPECT_TRUE(again.ledger.empty()) << "seed " << seed << " k " << k;
        }
    }
}

TEST(StrongKProperties, MonotoneInK)
{
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        const auto p = oracle::small_random(seed, 6, 3, 9);
        for (int k = 1; k < 3; ++k) {
            const auto weak = enforce_strong_k(p, k);
            const auto strong = enforce_strong_k(p, k + 1);
            if (weak.empty) {
                EXPECT_TRUE(strong.empty) << "seed " << seed;
                continue;
            }
            if (!strong.empty) {
                EXPECT_TRUE(pointwise_subset(*strong.problem, *weak.problem)) << "seed " << seed << " k " << k;
            }
        }
    }
}

TEST(StrongKProperties, PrefixesOfConsistentNodesAreConsistent)
{
    SplitMix64 rng(77);
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        const auto p = oracle::small_random(seed, 6, 3, 9);
        // A random consistent path along the lexicographic order.
        PartialSolution t;
        for (VarId v = 0; v < p.num_variables(); ++v) {
            const auto a = static_cast<ValueIndex>(rng.uniform(static_cast<std::uint64_t>(p.domain_size(v))));
            t.push(v, a);
            if (!is_consistent(p, t)) {
                t.pop();
                break;
            }
        }
        for (int k = 1; k <= 3; ++k) {
            bool deeper_consistent = false;
            for (std::size_t len = t.size() + 1; len-- > 0;) {
                const bool here = is_k_consistent_node(p, t.prefix(len), k);
                EXPECT_FALSE(deeper_consistent && !here) << "seed " << seed << " k " << k << " len " << len;
                deeper_consistent = deeper_consistent || here;
            }
        }
    }
}

TEST(StrongKProperties, EmptyInducedProblemRemovesTheValue)
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const auto p = oracle::small_random(seed, 6, 3, 9);
        for (int k = 2; k <= 3; ++k) {
            const auto r = enforce_strong_k(p, k);
            for (VarId x = 0; x < p.num_variables(); ++x) {
                for (ValueIndex a = 0; a < p.domain_size(x); ++a) {
                    if (!is_consistent(p, {{x, a}})) {
                        continue;
                    }
                    if (enforce_strong_k(induce(p, {{x, a}}), k - 1).empty) {
                        const bool kept = !r.empty && r.problem->index_of(x, p.domain(x)[static_cast<std::size_t>(a)]);
                        EXPECT_FALSE(kept) << "seed " << seed << " k " << k;
                    }
                }
            }
        }
    }
}
