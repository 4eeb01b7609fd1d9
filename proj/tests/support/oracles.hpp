#pragma once

// Brute-force reference implementations used as test oracles. They rely only
// on Problem's membership test, never on the library's algorithms.

#include <csplab/domain_state.hpp>
#include <csplab/generators.hpp>
#include <csplab/problem.hpp>
#include <csplab/random.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using csplab::Constraint;
using csplab::PartialSolution;
using csplab::Problem;
using csplab::ValueIndex;
using csplab::VarId;

// -1 marks an unassigned variable.
using Full = std::vector<ValueIndex>;

inline bool covered_and_allowed(const Problem& p, const Constraint& c, const Full& a, bool& covered)
{
    std::vector<ValueIndex> vals;
    for (auto v : c.scope()) {
        if (a[static_cast<std::size_t>(v)] < 0) {
            covered = false;
            return true;
        }
        vals.push_back(a[static_cast<std::size_t>(v)]);
    }
    covered = true;
    return p.allows(c, vals);
}

/// Every fully covered constraint is satisfied.
inline bool consistent(const Problem& p, const Full& a)
{
    for (const auto& c : p.constraints()) {
        bool covered = false;
        if (!covered_and_allowed(p, c, a, covered)) {
            return false;
        }
    }
    return true;
}

inline Full as_full(const Problem& p, const PartialSolution& t)
{
    Full a(static_cast<std::size_t>(p.num_variables()), -1);
    for (const auto& [v, x] : t) {
        a[static_cast<std::size_t>(v)] = x;
    }
    return a;
}

/// Number of solutions, by enumerating the full Cartesian product.
inline std::uint64_t count_solutions(const Problem& p)
{
    const auto n = static_cast<std::size_t>(p.num_variables());
    for (std::size_t v = 0; v < n; ++v) {
        if (p.domain_size(static_cast<VarId>(v)) == 0) {
            return 0;
        }
    }
    Full a(n, 0);
    std::uint64_t count = 0;
    while (true) {
        if (consistent(p, a)) {
            ++count;
        }
        std::size_t i = 0;
        while (i < n) {
            if (++a[i] < p.domain_size(static_cast<VarId>(i))) {
                break;
            }
            a[i] = 0;
            ++i;
        }
        if (i == n) {
            return count;
        }
    }
}

/// Values of `ds` lacking a support in some constraint, found by scanning
/// the Cartesian product of the current domains of the scope.
inline std::size_t unsupported_values(const Problem& p, const csplab::DomainState& ds)
{
    std::size_t bad = 0;
    for (const auto& c : p.constraints()) {
        const auto& scope = c.scope();
        std::vector<std::vector<ValueIndex>> doms;
        for (auto v : scope) {
            doms.push_back(ds.values(v));
        }
        std::vector<std::set<ValueIndex>> supported(scope.size());
        if (std::all_of(doms.begin(), doms.end(), [](const auto& d) { return !d.empty(); })) {
            std::vector<std::size_t> idx(scope.size(), 0);
            std::vector<ValueIndex> vals(scope.size());
            while (true) {
                for (std::size_t i = 0; i < scope.size(); ++i) {
                    vals[i] = doms[i][idx[i]];
                }
                if (p.allows(c, vals)) {
                    for (std::size_t i = 0; i < scope.size(); ++i) {
                        supported[i].insert(vals[i]);
                    }
                }
                std::size_t i = 0;
                while (i < scope.size() && ++idx[i] == doms[i].size()) {
                    idx[i++] = 0;
                }
                if (i == scope.size()) {
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < scope.size(); ++i) {
            bad += doms[i].size() - supported[i].size();
        }
    }
    return bad;
}

/// Strong k-consistency by definition: no domain or relation is empty, and
/// for j = 1..k every consistent assignment to j-1 variables extends
/// consistently to any other variable.
inline bool strongly_k_consistent(const Problem& p, int k)
{
    const int n = p.num_variables();
    for (VarId v = 0; v < n; ++v) {
        if (p.domain_size(v) == 0) {
            return false;
        }
    }
    for (const auto& c : p.constraints()) {
        if (c.is_extensional() && c.size() == 0) {
            return false;
        }
    }
    Full a(static_cast<std::size_t>(n), -1);
    bool ok = true;
    // Enumerate assignments to variable subsets of size < k in index order.
    std::function<void(VarId, int)> rec = [&](VarId from, int assigned) {
        if (!ok) {
            return;
        }
        if (consistent(p, a)) {
            for (VarId x = 0; x < n && ok; ++x) {
                if (a[static_cast<std::size_t>(x)] >= 0) {
                    continue;
                }
                bool extends = false;
                for (ValueIndex v = 0; v < p.domain_size(x) && !extends; ++v) {
                    a[static_cast<std::size_t>(x)] = v;
                    extends = consistent(p, a);
                }
                a[static_cast<std::size_t>(x)] = -1;
                ok = extends;
            }
        } else {
            return;
        }
        if (assigned + 1 >= k) {
            return;
        }
        for (VarId v = from; v < n; ++v) {
            for (ValueIndex x = 0; x < p.domain_size(v); ++x) {
                a[static_cast<std::size_t>(v)] = x;
                rec(v + 1, assigned + 1);
                a[static_cast<std::size_t>(v)] = -1;
            }
        }
    };
    rec(0, 0);
    return ok;
}

/// Induced problem built tuple by tuple: for every constraint not fully
/// assigned, the restrictions to the free variables of the tuples agreeing
/// with t.
inline Problem induce(const Problem& p, const PartialSolution& t)
{
    const auto a = as_full(p, t);
    std::vector<VarId> new_id(static_cast<std::size_t>(p.num_variables()), -1);
    std::vector<std::string> names;
    std::vector<std::vector<csplab::Value>> domains;
    for (VarId v = 0; v < p.num_variables(); ++v) {
        if (a[static_cast<std::size_t>(v)] < 0) {
            new_id[static_cast<std::size_t>(v)] = static_cast<VarId>(names.size());
            names.push_back(p.name(v));
            domains.push_back(p.domain(v));
        }
    }
    std::vector<Constraint> constraints;
    for (const auto& c : p.constraints()) {
        std::vector<VarId> free_scope;
        std::vector<std::size_t> free_pos;
        for (std::size_t i = 0; i < c.scope().size(); ++i) {
            const auto v = c.scope()[i];
            if (a[static_cast<std::size_t>(v)] < 0) {
                free_scope.push_back(new_id[static_cast<std::size_t>(v)]);
                free_pos.push_back(i);
            }
        }
        if (free_scope.empty()) {
            continue;
        }
        std::set<std::vector<ValueIndex>> tuples;
        // Enumerate all value combinations of the scope and keep the allowed
        // ones that agree with t.
        std::vector<ValueIndex> vals(c.scope().size(), 0);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const auto fixed = a[static_cast<std::size_t>(c.scope()[i])];
            vals[i] = fixed >= 0 ? fixed : 0;
        }
        while (true) {
            if (p.allows(c, vals)) {
                std::vector<ValueIndex> r;
                for (auto i : free_pos) {
                    r.push_back(vals[i]);
                }
                tuples.insert(r);
            }
            std::size_t j = 0;
            while (j < free_pos.size()) {
                const auto i = free_pos[j];
                if (++vals[i] < p.domain_size(c.scope()[i])) {
                    break;
                }
                vals[i] = 0;
                ++j;
            }
            if (j == free_pos.size()) {
                break;
            }
        }
        constraints.push_back(
            Constraint::extensional(free_scope, std::vector<std::vector<ValueIndex>>(tuples.begin(), tuples.end())));
    }
    return Problem(std::move(names), std::move(domains), std::move(constraints));
}

/// Random small problem for property tests.
inline Problem small_random(std::uint64_t seed, int max_n = 8, int max_d = 4, int max_m = 12)
{
    csplab::SplitMix64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
    csplab::RandomModelParams prm;
    prm.n = 2 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(max_n - 1)));
    prm.d = 2 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(max_d - 1)));
    prm.r = 2;
    const int pairs = prm.n * (prm.n - 1) / 2;
    prm.m = 1 + static_cast<int>(rng.uniform(static_cast<std::uint64_t>(std::min(max_m, pairs))));
    prm.t = 1 + rng.uniform(static_cast<std::uint64_t>(prm.d * prm.d));
    prm.seed = seed;
    return csplab::gen_random(prm);
}

/// Small graph coloring: x1, x2, x3 in {r, g, b}, x4 in {r}; five
/// not-equal constraints, given extensionally.
inline Problem coloring()
{
    using csplab::Value;
    const std::vector<Value> rgb{Value{"r"}, Value{"g"}, Value{"b"}};
    auto neq = [](VarId x, VarId y, int dx, int dy, const std::vector<std::string>& lx,
                  const std::vector<std::string>& ly) {
        std::vector<std::vector<ValueIndex>> tuples;
        for (int i = 0; i < dx; ++i) {
            for (int j = 0; j < dy; ++j) {
                if (lx[static_cast<std::size_t>(i)] != ly[static_cast<std::size_t>(j)]) {
                    tuples.push_back({i, j});
                }
            }
        }
        return Constraint::extensional({x, y}, tuples);
    };
    const std::vector<std::string> l3{"r", "g", "b"};
    const std::vector<std::string> l1{"r"};
    return Problem({"x1", "x2", "x3", "x4"}, {rgb, rgb, rgb, {Value{"r"}}},
                   {neq(0, 1, 3, 3, l3, l3), neq(0, 2, 3, 3, l3, l3), neq(1, 2, 3, 3, l3, l3),
                    neq(1, 3, 3, 1, l3, l1), neq(2, 3, 3, 1, l3, l1)});
}

} // namespace oracle
