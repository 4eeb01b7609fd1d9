#include <csplab/error.hpp>
#include <csplab/problem.hpp>

#include <algorithm>
#include <set>

namespace csplab {

namespace {

void sort_unique_tuples(std::vector<ValueIndex>& flat, std::size_t arity)
{
    const std::size_t count = flat.size() / arity;
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) {
        order[i] = i;
    }
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(flat.begin() + static_cast<std::ptrdiff_t>(a * arity),
                                            flat.begin() + static_cast<std::ptrdiff_t>((a + 1) * arity),
                                            flat.begin() + static_cast<std::ptrdiff_t>(b * arity),
                                            flat.begin() + static_cast<std::ptrdiff_t>((b + 1) * arity));
    };
    std::sort(order.begin(), order.end(), less);
    std::vector<ValueIndex> out;
    out.reserve(flat.size());
    for (std::size_t k = 0; k < count; ++k) {
        if (k > 0 && !less(order[k - 1], order[k])) {
            continue;
        }
        const auto* first = flat.data() + order[k] * arity;
        out.insert(out.end(), first, first + arity);
    }
    flat = std::move(out);
}

} // namespace

Constraint Constraint::extensional(std::vector<VarId> scope,
                                   const std::vector<std::vector<ValueIndex>>& tuples)
{
    std::vector<ValueIndex> flat;
    flat.reserve(tuples.size() * scope.size());
    for (const auto& t : tuples) {
        if (t.size() != scope.size()) {
            throw PreconditionError("tuple length does not match constraint arity");
        }
        flat.insert(flat.end(), t.begin(), t.end());
    }
    return extensional_flat(std::move(scope), std::move(flat));
}

Constraint Constraint::extensional_flat(std::vector<VarId> scope, std::vector<ValueIndex> flat)
{
    if (scope.empty()) {
        throw PreconditionError("constraint scope must not be empty");
    }
    if (flat.size() % scope.size() != 0) {
        throw PreconditionError("flat tuple array is not a multiple of the arity");
    }
    Constraint c;
    c.scope_ = std::move(scope);
    c.kind_ = RelationKind::Extensional;
    sort_unique_tuples(flat, c.scope_.size());
    c.flat_ = std::move(flat);
    return c;
}

Constraint Constraint::not_equal(VarId x, VarId y)
{
    Constraint c;
    c.scope_ = {x, y};
    c.kind_ = RelationKind::NotEqual;
    return c;
}

Constraint Constraint::letter_equality(VarId x, VarId y, int pos_a, int pos_b)
{
    if (pos_a < 0 || pos_b < 0) {
        throw PreconditionError("letter positions must be non-negative");
    }
    Constraint c;
    c.scope_ = {x, y};
    c.kind_ = RelationKind::LetterEquality;
    c.pos_a_ = pos_a;
    c.pos_b_ = pos_b;
    return c;
}

int Constraint::position_of(VarId v) const
{
    for (std::size_t i = 0; i < scope_.size(); ++i) {
        if (scope_[i] == v) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

std::size_t Constraint::size() const
{
    return is_extensional() ? flat_.size() / scope_.size() : 0;
}

std::span<const ValueIndex> Constraint::tuple(std::size_t i) const
{
    const auto r = scope_.size();
    return {flat_.data() + i * r, r};
}

bool Constraint::contains(std::span<const ValueIndex> values) const
{
    const auto r = scope_.size();
    std::size_t lo = 0;
    std::size_t hi = size();
    while (lo < hi) {
        const auto mid = (lo + hi) / 2;
        const auto t = tuple(mid);
        if (std::lexicographical_compare(t.begin(), t.end(), values.begin(), values.begin() + static_cast<std::ptrdiff_t>(r))) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo == size()) {
        return false;
    }
    const auto t = tuple(lo);
    return std::equal(t.begin(), t.end(), values.begin());
}

PartialSolution::PartialSolution(std::initializer_list<Assignment> items)
{
    for (const auto& a : items) {
        push(a.var, a.value);
    }
}

PartialSolution::PartialSolution(std::vector<Assignment> items)
{
    for (const auto& a : items) {
        push(a.var, a.value);
    }
}

void PartialSolution::push(VarId var, ValueIndex value)
{
    if (assigns(var)) {
        throw PreconditionError("variable assigned twice in a partial solution");
    }
    items_.push_back({var, value});
}

std::optional<ValueIndex> PartialSolution::value_of(VarId var) const
{
    for (const auto& a : items_) {
        if (a.var == var) {
            return a.value;
        }
    }
    return std::nullopt;
}

PartialSolution PartialSolution::prefix(std::size_t n) const
{
    PartialSolution out;
    out.items_.assign(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(std::min(n, items_.size())));
    return out;
}

std::vector<Assignment> PartialSolution::as_set() const
{
    auto out = items_;
    std::sort(out.begin(), out.end());
    return out;
}

Problem::Problem(std::vector<std::string> names, std::vector<std::vector<Value>> domains,
                 std::vector<Constraint> constraints)
    : names_(std::move(names)), domains_(std::move(domains)), constraints_(std::move(constraints))
{
    const auto n = names_.size();
    if (domains_.size() != n) {
        throw PreconditionError("one domain per variable is required");
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!by_name_.emplace(names_[v], static_cast<VarId>(v)).second) {
            throw PreconditionError("duplicate variable name '" + names_[v] + "'");
        }
        std::set<Value> seen(domains_[v].begin(), domains_[v].end());
        if (seen.size() != domains_[v].size()) {
            throw PreconditionError("duplicate value in the domain of '" + names_[v] + "'");
        }
    }
    incidence_.assign(n, {});
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
        const auto& con = constraints_[c];
        std::set<VarId> seen;
        for (auto v : con.scope()) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                throw ScopeError("constraint scope references an unknown variable");
            }
            if (!seen.insert(v).second) {
                throw PreconditionError("constraint scope repeats a variable");
            }
            incidence_[static_cast<std::size_t>(v)].push_back(static_cast<int>(c));
        }
        if (con.is_extensional()) {
            for (std::size_t i = 0; i < con.size(); ++i) {
                const auto t = con.tuple(i);
                for (std::size_t p = 0; p < t.size(); ++p) {
                    if (t[p] < 0 || t[p] >= domain_size(con.scope()[p])) {
                        throw PreconditionError("tuple value outside the variable's domain");
                    }
                }
            }
        }
    }
}

int Problem::max_domain_size() const
{
    int d = 0;
    for (const auto& dom : domains_) {
        d = std::max(d, static_cast<int>(dom.size()));
    }
    return d;
}

int Problem::max_arity() const
{
    int r = 0;
    for (const auto& c : constraints_) {
        r = std::max(r, c.arity());
    }
    return r;
}

std::optional<VarId> Problem::find(std::string_view name) const
{
    const auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<ValueIndex> Problem::index_of(VarId v, const Value& value) const
{
    const auto& dom = domain(v);
    const auto it = std::find(dom.begin(), dom.end(), value);
    if (it == dom.end()) {
        return std::nullopt;
    }
    return static_cast<ValueIndex>(it - dom.begin());
}

char Problem::letter(VarId v, ValueIndex a, int pos) const
{
    const auto* s = std::get_if<std::string>(&domain(v)[static_cast<std::size_t>(a)]);
    if (s == nullptr || pos >= static_cast<int>(s->size())) {
        return '\0';
    }
    return (*s)[static_cast<std::size_t>(pos)];
}

bool Problem::allows(const Constraint& c, std::span<const ValueIndex> values) const
{
    switch (c.kind()) {
    case RelationKind::Extensional:
        return c.contains(values);
    case RelationKind::NotEqual:
        return domain(c.scope()[0])[static_cast<std::size_t>(values[0])] !=
               domain(c.scope()[1])[static_cast<std::size_t>(values[1])];
    case RelationKind::LetterEquality: {
        const char a = letter(c.scope()[0], values[0], c.pos_a());
        return a != '\0' && a == letter(c.scope()[1], values[1], c.pos_b());
    }
    }
    return false;
}

bool Problem::all_extensional() const
{
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [](const Constraint& c) { return c.is_extensional(); });
}

Constraint Problem::materialize(const Constraint& c) const
{
    if (c.is_extensional()) {
        return c;
    }
    std::vector<ValueIndex> flat;
    const auto& scope = c.scope();
    std::vector<ValueIndex> t(scope.size(), 0);
    for (auto v : scope) {
        if (domain_size(v) == 0) {
            return Constraint::extensional_flat(scope, {});
        }
    }
    while (true) {
        if (allows(c, t)) {
            flat.insert(flat.end(), t.begin(), t.end());
        }
        std::size_t p = t.size();
        while (p > 0) {
            --p;
            if (++t[p] < domain_size(scope[p])) {
                break;
            }
            t[p] = 0;
            if (p == 0) {
                return Constraint::extensional_flat(scope, std::move(flat));
            }
        }
    }
}

Problem Problem::materialized() const
{
    std::vector<Constraint> cs;
    cs.reserve(constraints_.size());
    for (const auto& c : constraints_) {
        cs.push_back(materialize(c));
    }
    return Problem(names_, domains_, std::move(cs));
}

bool Problem::is_empty() const
{
    for (const auto& dom : domains_) {
        if (dom.empty()) {
            return true;
        }
    }
    for (const auto& c : constraints_) {
        if (c.is_extensional() && c.size() == 0) {
            return true;
        }
    }
    return false;
}

std::string describe(const Problem& p, const PartialSolution& t)
{
    std::string out = "{";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += p.name(t[i].var) + "<-" + to_string(p.domain(t[i].var)[static_cast<std::size_t>(t[i].value)]);
    }
    return out + "}";
}

} // namespace csplab
