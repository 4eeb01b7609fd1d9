#include <csplab/algebra.hpp>
#include <csplab/error.hpp>

#include <algorithm>

namespace csplab {

namespace {

void check_assignment_in_range(const Problem& p, const PartialSolution& t)
{
    for (const auto& a : t) {
        if (a.var < 0 || a.var >= p.num_variables()) {
            throw ScopeError("partial solution assigns an unknown variable");
        }
        if (a.value < 0 || a.value >= p.domain_size(a.var)) {
            throw PreconditionError("partial solution value outside the domain");
        }
    }
}

Constraint remap(const Constraint& c, const std::vector<VarId>& new_id)
{
    std::vector<VarId> scope;
    for (auto v : c.scope()) {
        scope.push_back(new_id[static_cast<std::size_t>(v)]);
    }
    switch (c.kind()) {
    case RelationKind::NotEqual:
        return Constraint::not_equal(scope[0], scope[1]);
    case RelationKind::LetterEquality:
        return Constraint::letter_equality(scope[0], scope[1], c.pos_a(), c.pos_b());
    case RelationKind::Extensional:
        break;
    }
    std::vector<ValueIndex> flat;
    flat.reserve(c.size() * scope.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto t = c.tuple(i);
        flat.insert(flat.end(), t.begin(), t.end());
    }
    return Constraint::extensional_flat(std::move(scope), std::move(flat));
}

} // namespace

bool consistent_with(const Problem& p, const PartialSolution& t, const Constraint& c)
{
    std::vector<ValueIndex> values;
    values.reserve(c.scope().size());
    for (auto v : c.scope()) {
        const auto a = t.value_of(v);
        if (!a) {
            return true;
        }
        values.push_back(*a);
    }
    return p.allows(c, values);
}

bool is_consistent(const Problem& p, const PartialSolution& t)
{
    return std::all_of(p.constraints().begin(), p.constraints().end(),
                       [&](const Constraint& c) { return consistent_with(p, t, c); });
}

Constraint project(const Constraint& c, const std::vector<VarId>& vars)
{
    if (!c.is_extensional()) {
        throw PreconditionError("projection needs an extensional constraint; materialize first");
    }
    if (vars.empty()) {
        throw ScopeError("projection onto an empty variable set");
    }
    std::vector<int> positions;
    std::vector<VarId> scope;
    for (std::size_t i = 0; i < c.scope().size(); ++i) {
        if (std::find(vars.begin(), vars.end(), c.scope()[i]) != vars.end()) {
            positions.push_back(static_cast<int>(i));
            scope.push_back(c.scope()[i]);
        }
    }
    if (scope.size() != vars.size()) {
        throw ScopeError("projection variables are not a subset of the scope");
    }
    std::vector<ValueIndex> flat;
    flat.reserve(c.size() * positions.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto t = c.tuple(i);
        for (auto pos : positions) {
            flat.push_back(t[static_cast<std::size_t>(pos)]);
        }
    }
    return Constraint::extensional_flat(std::move(scope), std::move(flat));
}

Constraint select(const Constraint& c, const PartialSolution& t)
{
    if (!c.is_extensional()) {
        throw PreconditionError("selection needs an extensional constraint; materialize first");
    }
    std::vector<std::pair<int, ValueIndex>> fixed;
    for (const auto& a : t) {
        const int pos = c.position_of(a.var);
        if (pos < 0) {
            throw ScopeError("selection assignment is not within the constraint scope");
        }
        fixed.emplace_back(pos, a.value);
    }
    std::vector<ValueIndex> flat;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto tup = c.tuple(i);
        const bool keep = std::all_of(fixed.begin(), fixed.end(), [&](const auto& f) {
            return tup[static_cast<std::size_t>(f.first)] == f.second;
        });
        if (keep) {
            flat.insert(flat.end(), tup.begin(), tup.end());
        }
    }
    return Constraint::extensional_flat(c.scope(), std::move(flat));
}

Problem induce(const Problem& p, const PartialSolution& t)
{
    check_assignment_in_range(p, t);
    if (!is_consistent(p, t)) {
        throw PreconditionError("induced problem requires a consistent partial solution");
    }
    const auto n = static_cast<std::size_t>(p.num_variables());
    std::vector<VarId> new_id(n, -1);
    std::vector<std::string> names;
    std::vector<std::vector<Value>> domains;
    for (std::size_t v = 0; v < n; ++v) {
        if (!t.assigns(static_cast<VarId>(v))) {
            new_id[v] = static_cast<VarId>(names.size());
            names.push_back(p.name(static_cast<VarId>(v)));
            domains.push_back(p.domain(static_cast<VarId>(v)));
        }
    }

    std::vector<Constraint> constraints;
    for (const auto& c : p.constraints()) {
        PartialSolution inside;
        std::vector<VarId> rest;
        for (auto v : c.scope()) {
            if (const auto a = t.value_of(v)) {
                inside.push(v, *a);
            } else {
                rest.push_back(v);
            }
        }
        if (rest.empty()) {
            continue;
        }
        if (inside.empty()) {
            constraints.push_back(remap(c, new_id));
            continue;
        }
        const auto reduced = project(select(p.materialize(c), inside), rest);
        constraints.push_back(remap(reduced, new_id));
    }
    return Problem(std::move(names), std::move(domains), std::move(constraints));
}

bool problems_equal(const Problem& a, const Problem& b)
{
    return a.names() == b.names() && a.domains() == b.domains() && a.constraints() == b.constraints();
}

namespace {

template <typename Visit>
void enumerate_full(const Problem& p, Visit&& visit)
{
    const int n = p.num_variables();
    for (VarId v = 0; v < n; ++v) {
        if (p.domain_size(v) == 0) {
            return;
        }
    }
    std::vector<ValueIndex> values(static_cast<std::size_t>(n), 0);
    std::vector<ValueIndex> scratch;
    while (true) {
        bool ok = true;
        for (const auto& c : p.constraints()) {
            scratch.clear();
            for (auto v : c.scope()) {
                scratch.push_back(values[static_cast<std::size_t>(v)]);
            }
            if (!p.allows(c, scratch)) {
                ok = false;
                break;
            }
        }
        if (ok && !visit(values)) {
            return;
        }
        int pos = n - 1;
        while (pos >= 0) {
            auto& slot = values[static_cast<std::size_t>(pos)];
            if (++slot < p.domain_size(pos)) {
                break;
            }
            slot = 0;
            --pos;
        }
        if (pos < 0) {
            return;
        }
    }
}

} // namespace

std::vector<PartialSolution> enumerate_solutions(const Problem& p, std::optional<std::size_t> limit)
{
    std::vector<PartialSolution> out;
    if (limit && *limit == 0) {
        return out;
    }
    enumerate_full(p, [&](const std::vector<ValueIndex>& values) {
        PartialSolution s;
        for (std::size_t v = 0; v < values.size(); ++v) {
            s.push(static_cast<VarId>(v), values[v]);
        }
        out.push_back(std::move(s));
        return !limit || out.size() < *limit;
    });
    return out;
}

std::uint64_t count_solutions(const Problem& p)
{
    std::uint64_t count = 0;
    enumerate_full(p, [&](const std::vector<ValueIndex>&) {
        ++count;
        return true;
    });
    return count;
}

} // namespace csplab
