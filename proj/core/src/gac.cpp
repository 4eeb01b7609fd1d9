#include <csplab/gac.hpp>

#include <bitset>

namespace csplab {

GacPropagator::GacPropagator(const Problem& p)
    : p_(p), ext_(static_cast<std::size_t>(p.num_constraints())),
      equal_(static_cast<std::size_t>(p.num_constraints())),
      letters_(static_cast<std::size_t>(p.num_constraints())), scratch_(p.num_variables())
{
    queue_offset_.assign(static_cast<std::size_t>(p.num_constraints()) + 1, 0);
    for (int c = 0; c < p.num_constraints(); ++c) {
        const auto& con = p.constraint(c);
        const auto cs = static_cast<std::size_t>(c);
        queue_offset_[cs + 1] = queue_offset_[cs] + con.scope().size();
        switch (con.kind()) {
        case RelationKind::Extensional: {
            auto& idx = ext_[cs];
            const auto r = con.scope().size();
            idx.start.resize(r);
            idx.tuples.resize(r);
            for (std::size_t pos = 0; pos < r; ++pos) {
                const auto d = static_cast<std::size_t>(p.domain_size(con.scope()[pos]));
                auto& start = idx.start[pos];
                start.assign(d + 1, 0);
                for (std::size_t t = 0; t < con.size(); ++t) {
                    ++start[static_cast<std::size_t>(con.tuple(t)[pos]) + 1];
                }
                for (std::size_t a = 0; a < d; ++a) {
                    start[a + 1] += start[a];
                }
                auto fill = start;
                idx.tuples[pos].resize(con.size());
                for (std::size_t t = 0; t < con.size(); ++t) {
                    idx.tuples[pos][fill[static_cast<std::size_t>(con.tuple(t)[pos])]++] = static_cast<std::uint32_t>(t);
                }
            }
            break;
        }
        case RelationKind::NotEqual:
            for (int side = 0; side < 2; ++side) {
                const VarId x = con.scope()[static_cast<std::size_t>(side)];
                const VarId y = con.scope()[static_cast<std::size_t>(1 - side)];
                auto& eq = equal_[cs][static_cast<std::size_t>(side)];
                eq.assign(static_cast<std::size_t>(p.domain_size(x)), -1);
                for (ValueIndex a = 0; a < p.domain_size(x); ++a) {
                    if (const auto b = p.index_of(y, p.domain(x)[static_cast<std::size_t>(a)])) {
                        eq[static_cast<std::size_t>(a)] = *b;
                    }
                }
            }
            break;
        case RelationKind::LetterEquality:
            for (int side = 0; side < 2; ++side) {
                const VarId x = con.scope()[static_cast<std::size_t>(side)];
                const auto at = static_cast<std::size_t>(side == 0 ? con.pos_a() : con.pos_b());
                auto& ls = letters_[cs][static_cast<std::size_t>(side)];
                ls.assign(static_cast<std::size_t>(p.domain_size(x)), 0);
                for (ValueIndex a = 0; a < p.domain_size(x); ++a) {
                    const auto* w = std::get_if<std::string>(&p.domain(x)[static_cast<std::size_t>(a)]);
                    if (w != nullptr && at < w->size()) {
                        ls[static_cast<std::size_t>(a)] = static_cast<unsigned char>((*w)[at]);
                    }
                }
            }
            break;
        }
    }
    in_queue_.assign(queue_offset_.back(), 0);
}

void GacPropagator::push(int c, int pos)
{
    const auto slot = queue_offset_[static_cast<std::size_t>(c)] + static_cast<std::size_t>(pos);
    if (in_queue_[slot] == 0) {
        in_queue_[slot] = 1;
        queue_.emplace_back(c, pos);
    }
}

void GacPropagator::removal_explanation(int c, int pos, ValueIndex a, const DomainState& ds, LevelSet& out) const
{
    out.clear();
    const auto& con = p_.constraint(c);
    const auto cs = static_cast<std::size_t>(c);
    const auto ps = static_cast<std::size_t>(pos);
    switch (con.kind()) {
    case RelationKind::Extensional: {
        const auto& idx = ext_[cs];
        const auto& list = idx.tuples[ps];
        for (auto i = idx.start[ps][static_cast<std::size_t>(a)]; i < idx.start[ps][static_cast<std::size_t>(a) + 1]; ++i) {
            const auto t = con.tuple(list[i]);
            for (std::size_t q = 0; q < t.size(); ++q) {
                if (q != ps && !ds.contains(con.scope()[q], t[q])) {
                    out.merge(ds.explanation(con.scope()[q], t[q]));
                }
            }
        }
        break;
    }
    case RelationKind::NotEqual: {
        const VarId y = con.scope()[1 - ps];
        const ValueIndex same = equal_[cs][ps][static_cast<std::size_t>(a)];
        for (ValueIndex b = 0; b < ds.original_size(y); ++b) {
            if (b != same && !ds.contains(y, b)) {
                out.merge(ds.explanation(y, b));
            }
        }
        break;
    }
    case RelationKind::LetterEquality: {
        const VarId y = con.scope()[1 - ps];
        const unsigned char l = letters_[cs][ps][static_cast<std::size_t>(a)];
        if (l == 0) {
            break;
        }
        const auto& other = letters_[cs][1 - ps];
        for (ValueIndex b = 0; b < ds.original_size(y); ++b) {
            if (other[static_cast<std::size_t>(b)] == l && !ds.contains(y, b)) {
                out.merge(ds.explanation(y, b));
            }
        }
        break;
    }
    }
}

void GacPropagator::remove(VarId x, ValueIndex a, int c, DomainState& ds, bool explain, int pos, PruneResult& out)
{
    if (explain) {
        removal_explanation(c, pos, a, ds, scratch_);
        ds.remove(x, a, c, scratch_);
    } else {
        ds.remove(x, a, c, std::span<const std::uint64_t>{});
    }
    if (record_) {
        out.removals.push_back({x, a, explain ? scratch_ : LevelSet{}});
    }
}

int GacPropagator::revise(int c, VarId x, DomainState& ds, bool explain, PruneResult& out)
{
    const auto& con = p_.constraint(c);
    const auto cs = static_cast<std::size_t>(c);
    const int pos = con.position_of(x);
    const auto ps = static_cast<std::size_t>(pos);
    int removed = 0;
    switch (con.kind()) {
    case RelationKind::Extensional: {
        const auto& idx = ext_[cs];
        const auto& list = idx.tuples[ps];
        for (ValueIndex a = 0; a < ds.original_size(x); ++a) {
            if (!ds.contains(x, a)) {
                continue;
            }
            bool supported = false;
            for (auto i = idx.start[ps][static_cast<std::size_t>(a)];
                 i < idx.start[ps][static_cast<std::size_t>(a) + 1] && !supported; ++i) {
                ++out.checks;
                const auto t = con.tuple(list[i]);
                supported = true;
                for (std::size_t q = 0; q < t.size(); ++q) {
                    if (q != ps && !ds.contains(con.scope()[q], t[q])) {
                        supported = false;
                        break;
                    }
                }
            }
            if (!supported) {
                remove(x, a, c, ds, explain, pos, out);
                ++removed;
            }
        }
        break;
    }
    case RelationKind::NotEqual: {
        const VarId y = con.scope()[1 - ps];
        ++out.checks;
        if (ds.size(y) != 1) {
            break;
        }
        const ValueIndex a = equal_[cs][1 - ps][static_cast<std::size_t>(ds.some_value(y))];
        if (a >= 0 && ds.contains(x, a)) {
            remove(x, a, c, ds, explain, pos, out);
            ++removed;
        }
        break;
    }
    case RelationKind::LetterEquality: {
        const VarId y = con.scope()[1 - ps];
        const auto& mine = letters_[cs][ps];
        const auto& other = letters_[cs][1 - ps];
        std::bitset<256> present;
        ds.for_each_value(y, [&](ValueIndex b) {
            ++out.checks;
            present.set(other[static_cast<std::size_t>(b)]);
        });
        for (ValueIndex a = 0; a < ds.original_size(x); ++a) {
            if (!ds.contains(x, a)) {
                continue;
            }
            ++out.checks;
            const unsigned char l = mine[static_cast<std::size_t>(a)];
            if (l == 0 || !present.test(l)) {
                remove(x, a, c, ds, explain, pos, out);
                ++removed;
            }
        }
        break;
    }
    }
    return removed;
}

PruneResult GacPropagator::run(DomainState& ds, bool explain, bool record_removals)
{
    record_ = record_removals;
    PruneResult out;
    while (!queue_.empty()) {
        const auto [c, pos] = queue_.front();
        queue_.pop_front();
        in_queue_[queue_offset_[static_cast<std::size_t>(c)] + static_cast<std::size_t>(pos)] = 0;
        const VarId x = p_.constraint(c).scope()[static_cast<std::size_t>(pos)];
        const int removed = revise(c, x, ds, explain, out);
        if (ds.size(x) == 0) {
            out.wipeout = true;
            out.wiped = x;
            if (explain) {
                out.wipeout_explanation = ds.eliminated_explanation(x);
            }
            for (const auto& [qc, qp] : queue_) {
                in_queue_[queue_offset_[static_cast<std::size_t>(qc)] + static_cast<std::size_t>(qp)] = 0;
            }
            queue_.clear();
            return out;
        }
        if (removed > 0) {
            for (int c2 : p_.constraints_of(x)) {
                const auto& scope = p_.constraint(c2).scope();
                for (std::size_t q = 0; q < scope.size(); ++q) {
                    if (scope[q] != x) {
                        push(c2, static_cast<int>(q));
                    }
                }
            }
        }
    }
    return out;
}

PruneResult GacPropagator::enforce(DomainState& ds, bool explain, bool record_removals)
{
    for (int c = 0; c < p_.num_constraints(); ++c) {
        for (int q = 0; q < p_.constraint(c).arity(); ++q) {
            push(c, q);
        }
    }
    return run(ds, explain, record_removals);
}

PruneResult GacPropagator::propagate_from(VarId x, DomainState& ds, bool explain, bool record_removals)
{
    for (int c : p_.constraints_of(x)) {
        const auto& scope = p_.constraint(c).scope();
        for (std::size_t q = 0; q < scope.size(); ++q) {
            if (scope[q] != x) {
                push(c, static_cast<int>(q));
            }
        }
    }
    return run(ds, explain, record_removals);
}

PruneResult enforce_gac(const Problem& p, DomainState& ds, bool explain)
{
    GacPropagator prop(p);
    return prop.enforce(ds, explain, true);
}

std::vector<ValueIndex> revise(const Problem& p, int c, VarId x, DomainState& ds)
{
    GacPropagator prop(p);
    PruneResult scratch;
    std::vector<ValueIndex> before = ds.values(x);
    prop.revise(c, x, ds, false, scratch);
    std::vector<ValueIndex> removed;
    for (auto a : before) {
        if (!ds.contains(x, a)) {
            removed.push_back(a);
        }
    }
    return removed;
}

} // namespace csplab
