#include "strong_k_engine.hpp"

#include <csplab/algebra.hpp>
#include <csplab/error.hpp>
#include <csplab/strong_k.hpp>

#include <algorithm>
#include <set>

namespace csplab {

namespace {

std::vector<VarId> sorted_copy(std::vector<VarId> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

KEnforcementResult enforce_strong_k(const Problem& p, int k)
{
    if (k < 1) {
        throw PreconditionError("strong k-consistency needs k >= 1");
    }
    if (!p.all_extensional()) {
        throw PreconditionError("strong k-consistency needs extensional constraints; materialize first");
    }
    const int n = p.num_variables();
    k = std::min(k, std::max(n, 1));
    const std::vector<ValueIndex> none(static_cast<std::size_t>(n), -1);
    const std::vector<int> no_levels(static_cast<std::size_t>(n), 0);
    detail::StrongKEngine engine(p, k, none, no_levels, true);

    KEnforcementResult out;
    out.empty = !engine.run();
    for (const auto& rec : engine.ledger()) {
        out.ledger.push_back({rec.scope, rec.tuple, rec.witness});
    }
    if (out.empty) {
        return out;
    }

    std::vector<std::vector<Value>> domains;
    std::vector<std::vector<ValueIndex>> remap(static_cast<std::size_t>(n));
    for (VarId v = 0; v < n; ++v) {
        std::vector<Value> dom;
        auto& m = remap[static_cast<std::size_t>(v)];
        m.assign(static_cast<std::size_t>(p.domain_size(v)), -1);
        for (ValueIndex a = 0; a < p.domain_size(v); ++a) {
            if (engine.has(v, a)) {
                m[static_cast<std::size_t>(a)] = static_cast<ValueIndex>(dom.size());
                dom.push_back(p.domain(v)[static_cast<std::size_t>(a)]);
            }
        }
        domains.push_back(std::move(dom));
    }

    const auto groups = engine.derived();
    // Scope set of each derived group -> index of the original constraint
    // that absorbs its deletions (first constraint with the same variable set).
    std::vector<int> owner(groups.size(), -1);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (int c = 0; c < p.num_constraints(); ++c) {
            if (sorted_copy(p.constraint(c).scope()) == groups[g].scope) {
                owner[g] = c;
                break;
            }
        }
    }

    std::vector<Constraint> constraints;
    for (int c = 0; c < p.num_constraints(); ++c) {
        const auto& con = p.constraint(c);
        std::set<std::vector<ValueIndex>> deleted;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (owner[g] != c) {
                continue;
            }
            // Group tuples are aligned with the ascending scope.
            for (const auto& t : groups[g].forbidden) {
                std::vector<ValueIndex> aligned(con.scope().size());
                for (std::size_t i = 0; i < con.scope().size(); ++i) {
                    const auto pos = std::find(groups[g].scope.begin(), groups[g].scope.end(), con.scope()[i]) -
                                     groups[g].scope.begin();
                    aligned[i] = t[static_cast<std::size_t>(pos)];
                }
                deleted.insert(std::move(aligned));
            }
        }
        std::vector<ValueIndex> flat;
        std::vector<ValueIndex> tup;
        for (std::size_t i = 0; i < con.size(); ++i) {
            const auto t = con.tuple(i);
            tup.assign(t.begin(), t.end());
            if (deleted.contains(tup)) {
                continue;
            }
            bool keep = true;
            for (std::size_t pos = 0; pos < t.size() && keep; ++pos) {
                const auto nv = remap[static_cast<std::size_t>(con.scope()[pos])][static_cast<std::size_t>(t[pos])];
                keep = nv >= 0;
                tup[pos] = nv;
            }
            if (keep) {
                flat.insert(flat.end(), tup.begin(), tup.end());
            }
        }
        constraints.push_back(Constraint::extensional_flat(con.scope(), std::move(flat)));
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (owner[g] >= 0) {
            continue;
        }
        const auto& scope = groups[g].scope;
        std::vector<ValueIndex> flat;
        std::vector<ValueIndex> t(scope.size(), 0);
        bool done = false;
        while (!done) {
            if (engine.tuple_consistent(scope, t)) {
                for (std::size_t i = 0; i < t.size(); ++i) {
                    flat.push_back(remap[static_cast<std::size_t>(scope[i])][static_cast<std::size_t>(t[i])]);
                }
            }
            std::size_t pos = t.size();
            done = true;
            while (pos-- > 0) {
                if (++t[pos] < p.domain_size(scope[pos])) {
                    done = false;
                    break;
                }
                t[pos] = 0;
            }
        }
        constraints.push_back(Constraint::extensional_flat(scope, std::move(flat)));
    }

    out.problem.emplace(p.names(), std::move(domains), std::move(constraints));
    return out;
}

bool is_k_consistent_node(const Problem& p, const PartialSolution& t, int k)
{
    const Problem base = p.all_extensional() ? p : p.materialized();
    const Problem induced = induce(base, t);
    if (induced.num_variables() == 0) {
        return true;
    }
    return !enforce_strong_k(induced, k).empty;
}

} // namespace csplab
