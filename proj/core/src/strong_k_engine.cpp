#include "strong_k_engine.hpp"

#include <csplab/error.hpp>

#include <algorithm>
#include <bit>

namespace csplab::detail {

namespace {

constexpr std::uint64_t kMaxRelationCells = std::uint64_t{1} << 26;

std::uint64_t level_bit(int level)
{
    return level > 0 && level < 64 ? std::uint64_t{1} << level : 0;
}

std::uint64_t full_mask(int size)
{
    return size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
}

} // namespace

StrongKEngine::StrongKEngine(const Problem& p, int k, std::span<const ValueIndex> assignment,
                             std::span<const int> level, bool keep_ledger)
    : p_(p), k_(k), keep_ledger_(keep_ledger)
{
    const int n = p.num_variables();
    if (n > 64) {
        throw ConfigurationError("strong k-consistency is limited to 64 variables");
    }
    local_.assign(static_cast<std::size_t>(n), -1);
    for (VarId v = 0; v < n; ++v) {
        if (assignment[static_cast<std::size_t>(v)] >= 0) {
            continue;
        }
        if (p.domain_size(v) > 64) {
            throw ConfigurationError("strong k-consistency is limited to domains of at most 64 values");
        }
        local_[static_cast<std::size_t>(v)] = static_cast<int>(free_.size());
        free_.push_back(v);
        dsize_.push_back(p.domain_size(v));
        dom_.push_back(full_mask(p.domain_size(v)));
        removed_expl_.emplace_back(static_cast<std::size_t>(p.domain_size(v)), 0);
    }
    val_.assign(free_.size(), -1);
    rels_of_.assign(free_.size(), {});

    std::vector<ValueIndex> fixed;
    for (const auto& c : p.constraints()) {
        if (!c.is_extensional()) {
            throw PreconditionError("strong k-consistency needs extensional constraints; materialize first");
        }
        std::uint64_t expl = 0;
        std::vector<int> free_pos;
        for (std::size_t i = 0; i < c.scope().size(); ++i) {
            const auto v = static_cast<std::size_t>(c.scope()[i]);
            if (assignment[v] >= 0) {
                expl |= level_bit(level[v]);
            } else {
                free_pos.push_back(static_cast<int>(i));
            }
        }
        if (free_pos.empty()) {
            fixed.clear();
            for (auto v : c.scope()) {
                fixed.push_back(assignment[static_cast<std::size_t>(v)]);
            }
            ++checks_;
            if (!c.contains(fixed)) {
                set_empty(expl);
            }
            continue;
        }

        Rel r;
        r.expl = expl;
        for (auto pos : free_pos) {
            r.vars.push_back(local_[static_cast<std::size_t>(c.scope()[static_cast<std::size_t>(pos)])]);
        }
        r.strides.assign(r.vars.size(), 1);
        std::uint64_t cells = 1;
        for (std::size_t i = r.vars.size(); i-- > 0;) {
            r.strides[i] = cells;
            cells *= static_cast<std::uint64_t>(dsize_[static_cast<std::size_t>(r.vars[i])]);
            if (cells > kMaxRelationCells) {
                throw ConfigurationError("relation too large for strong k-consistency enforcement");
            }
        }
        for (auto v : r.vars) {
            r.mask |= std::uint64_t{1} << v;
        }
        r.allowed.assign(static_cast<std::size_t>((cells + 63) / 64), 0);
        bool any = false;
        for (std::size_t t = 0; t < c.size(); ++t) {
            const auto tup = c.tuple(t);
            bool match = true;
            std::uint64_t code = 0;
            std::size_t f = 0;
            for (std::size_t i = 0; i < tup.size(); ++i) {
                const auto a = assignment[static_cast<std::size_t>(c.scope()[i])];
                if (a >= 0) {
                    if (tup[i] != a) {
                        match = false;
                        break;
                    }
                } else {
                    code += static_cast<std::uint64_t>(tup[i]) * r.strides[f++];
                }
            }
            if (match) {
                r.allowed[code >> 6] |= std::uint64_t{1} << (code & 63);
                any = true;
            }
        }
        if (!any) {
            set_empty(expl);
            continue;
        }
        if (r.vars.size() == 1) {
            // Node consistency: values outside a unary relation are dropped.
            const int x = r.vars[0];
            for (ValueIndex a = 0; a < dsize_[static_cast<std::size_t>(x)]; ++a) {
                if ((r.allowed[0] >> a & 1) == 0 && (dom_[static_cast<std::size_t>(x)] >> a & 1) != 0) {
                    remove_value(x, a, expl);
                    if (keep_ledger_) {
                        ledger_.push_back({{free_[static_cast<std::size_t>(x)]}, {a}, std::nullopt});
                    }
                }
            }
            continue;
        }
        add_rel(std::move(r));
    }
}

void StrongKEngine::add_rel(Rel r)
{
    const int id = static_cast<int>(rels_.size());
    for (auto v : r.vars) {
        rels_of_[static_cast<std::size_t>(v)].push_back(id);
    }
    rels_.push_back(std::move(r));
}

void StrongKEngine::set_empty(std::uint64_t expl)
{
    if (!empty_) {
        empty_ = true;
        empty_expl_ = expl;
    }
}

void StrongKEngine::remove_value(int x, ValueIndex a, std::uint64_t expl)
{
    auto& d = dom_[static_cast<std::size_t>(x)];
    d &= ~(std::uint64_t{1} << a);
    removed_expl_[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)] = expl;
}

std::uint64_t StrongKEngine::wipe_explanation(int x) const
{
    std::uint64_t e = 0;
    for (auto w : removed_expl_[static_cast<std::size_t>(x)]) {
        e |= w;
    }
    return e;
}

std::uint64_t StrongKEngine::code_of(const Rel& r) const
{
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < r.vars.size(); ++i) {
        code += static_cast<std::uint64_t>(val_[static_cast<std::size_t>(r.vars[i])]) * r.strides[i];
    }
    return code;
}

std::optional<std::uint64_t> StrongKEngine::violation(const Rel& r)
{
    ++checks_;
    const auto code = code_of(r);
    if (!r.derived) {
        if ((r.allowed[code >> 6] >> (code & 63) & 1) != 0) {
            return std::nullopt;
        }
        return r.expl;
    }
    const auto it = r.forbidden.find(code);
    if (it == r.forbidden.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool StrongKEngine::extends(std::uint64_t smask, int x, std::uint64_t& expl)
{
    const auto xs = static_cast<std::size_t>(x);
    const std::uint64_t full = smask | (std::uint64_t{1} << x);
    for (ValueIndex b = 0; b < dsize_[xs]; ++b) {
        if ((dom_[xs] >> b & 1) == 0) {
            expl |= removed_expl_[xs][static_cast<std::size_t>(b)];
            continue;
        }
        val_[xs] = b;
        bool ok = true;
        const auto& list = rels_of_[xs];
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& r = rels_[static_cast<std::size_t>(list[i])];
            if ((r.mask & ~full) != 0) {
                continue;
            }
            if (const auto why = violation(r)) {
                expl |= *why;
                ok = false;
                break;
            }
        }
        if (ok) {
            val_[xs] = -1;
            return true;
        }
    }
    val_[xs] = -1;
    return false;
}

int StrongKEngine::derived_for(std::uint64_t mask, const std::vector<int>& sorted_vars)
{
    if (const auto it = derived_by_mask_.find(mask); it != derived_by_mask_.end()) {
        return it->second;
    }
    Rel r;
    r.derived = true;
    r.mask = mask;
    r.vars = sorted_vars;
    r.strides.assign(r.vars.size(), 1);
    std::uint64_t cells = 1;
    for (std::size_t i = r.vars.size(); i-- > 0;) {
        r.strides[i] = cells;
        cells *= static_cast<std::uint64_t>(dsize_[static_cast<std::size_t>(r.vars[i])]);
    }
    const int id = static_cast<int>(rels_.size());
    add_rel(std::move(r));
    derived_by_mask_.emplace(mask, id);
    derived_order_.push_back(id);
    return id;
}

void StrongKEngine::enumerate(const std::vector<int>& s, std::size_t p, std::uint64_t prefix_mask,
                              bool& changed, int j)
{
    if (p == s.size()) {
        const auto u = static_cast<int>(free_.size());
        for (int x = 0; x < u; ++x) {
            if ((prefix_mask >> x & 1) != 0) {
                continue;
            }
            std::uint64_t expl = 0;
            if (extends(prefix_mask, x, expl)) {
                continue;
            }
            changed = true;
            if (keep_ledger_) {
                KRemovalRecord rec;
                for (auto v : s) {
                    rec.scope.push_back(free_[static_cast<std::size_t>(v)]);
                    rec.tuple.push_back(val_[static_cast<std::size_t>(v)]);
                }
                rec.witness = free_[static_cast<std::size_t>(x)];
                ledger_.push_back(std::move(rec));
            }
            if (s.size() == 1) {
                const int y = s[0];
                remove_value(y, val_[static_cast<std::size_t>(y)], expl);
                if (dom_[static_cast<std::size_t>(y)] == 0) {
                    set_empty(wipe_explanation(y));
                }
            } else {
                auto& r = rels_[static_cast<std::size_t>(derived_for(prefix_mask, s))];
                r.forbidden.emplace(code_of(r), expl);
            }
            return;
        }
        return;
    }
    const int y = s[p];
    const auto ys = static_cast<std::size_t>(y);
    const std::uint64_t mask = prefix_mask | (std::uint64_t{1} << y);
    for (ValueIndex a = 0; a < dsize_[ys]; ++a) {
        if ((dom_[ys] >> a & 1) == 0) {
            continue;
        }
        val_[ys] = a;
        bool ok = true;
        const auto& list = rels_of_[ys];
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto& r = rels_[static_cast<std::size_t>(list[i])];
            if ((r.mask & ~mask) == 0 && violation(r)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            enumerate(s, p + 1, mask, changed, j);
        }
        if (empty_) {
            break;
        }
    }
    val_[ys] = -1;
}

bool StrongKEngine::sweep_level(int j)
{
    const int m = j - 1;
    const auto u = static_cast<int>(free_.size());
    bool changed = false;
    std::vector<int> s(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        s[static_cast<std::size_t>(i)] = i;
    }
    while (true) {
        enumerate(s, 0, 0, changed, j);
        if (empty_) {
            return true;
        }
        int i = m - 1;
        while (i >= 0 && s[static_cast<std::size_t>(i)] == u - m + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++s[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < m; ++t) {
            s[static_cast<std::size_t>(t)] = s[static_cast<std::size_t>(t - 1)] + 1;
        }
    }
    return changed;
}

bool StrongKEngine::relations_nonempty()
{
    for (const auto& r : rels_) {
        if (r.derived) {
            continue;
        }
        const Rel* forbid = nullptr;
        if (const auto it = derived_by_mask_.find(r.mask); it != derived_by_mask_.end()) {
            forbid = &rels_[static_cast<std::size_t>(it->second)];
        }
        bool found = false;
        for (std::size_t w = 0; w < r.allowed.size() && !found; ++w) {
            auto bits = r.allowed[w];
            while (bits != 0 && !found) {
                const std::uint64_t code = w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits));
                bits &= bits - 1;
                bool in = true;
                for (std::size_t i = 0; i < r.vars.size(); ++i) {
                    const auto v = static_cast<std::size_t>(r.vars[i]);
                    val_[v] = static_cast<ValueIndex>((code / r.strides[i]) % static_cast<std::uint64_t>(dsize_[v]));
                }
                if (in && forbid != nullptr && forbid->forbidden.contains(code_of(*forbid))) {
                    in = false;
                }
                found = in;
            }
        }
        for (auto v : r.vars) {
            val_[static_cast<std::size_t>(v)] = -1;
        }
        if (!found) {
            std::uint64_t expl = r.expl;
            if (forbid != nullptr) {
                for (const auto& [code, e] : forbid->forbidden) {
                    expl |= e;
                }
            }
            if (keep_ledger_) {
                ledger_.push_back({{}, {}, std::nullopt});
            }
            set_empty(expl);
            return false;
        }
    }
    return true;
}

bool StrongKEngine::run()
{
    if (empty_) {
        if (keep_ledger_) {
            ledger_.push_back({{}, {}, std::nullopt});
        }
        return false;
    }
    const auto u = static_cast<int>(free_.size());
    for (int x = 0; x < u; ++x) {
        if (dom_[static_cast<std::size_t>(x)] == 0) {
            if (keep_ledger_) {
                ledger_.push_back({{}, {}, free_[static_cast<std::size_t>(x)]});
            }
            set_empty(wipe_explanation(x));
            return false;
        }
    }
    const int top = std::min(k_, u);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 2; j <= top; ++j) {
            if (sweep_level(j)) {
                changed = true;
            }
            if (empty_) {
                if (keep_ledger_) {
                    ledger_.push_back({{}, {}, std::nullopt});
                }
                return false;
            }
        }
        if (!changed && !relations_nonempty()) {
            return false;
        }
    }
    return true;
}

bool StrongKEngine::has(VarId v, ValueIndex a) const
{
    const int l = local_[static_cast<std::size_t>(v)];
    if (l < 0) {
        return false;
    }
    return (dom_[static_cast<std::size_t>(l)] >> a & 1) != 0;
}

std::uint64_t StrongKEngine::removal_explanation(VarId v, ValueIndex a) const
{
    const int l = local_[static_cast<std::size_t>(v)];
    return removed_expl_[static_cast<std::size_t>(l)][static_cast<std::size_t>(a)];
}

std::vector<StrongKEngine::DerivedGroup> StrongKEngine::derived() const
{
    std::vector<DerivedGroup> out;
    for (auto id : derived_order_) {
        const auto& r = rels_[static_cast<std::size_t>(id)];
        DerivedGroup g;
        for (auto v : r.vars) {
            g.scope.push_back(free_[static_cast<std::size_t>(v)]);
        }
        for (const auto& [code, e] : r.forbidden) {
            std::vector<ValueIndex> t;
            for (std::size_t i = 0; i < r.vars.size(); ++i) {
                t.push_back(static_cast<ValueIndex>(
                    (code / r.strides[i]) % static_cast<std::uint64_t>(dsize_[static_cast<std::size_t>(r.vars[i])])));
            }
            g.forbidden.push_back(std::move(t));
        }
        std::sort(g.forbidden.begin(), g.forbidden.end());
        out.push_back(std::move(g));
    }
    return out;
}

bool StrongKEngine::tuple_consistent(std::span<const VarId> scope, std::span<const ValueIndex> values)
{
    std::uint64_t mask = 0;
    bool ok = true;
    for (std::size_t i = 0; i < scope.size(); ++i) {
        const int l = local_[static_cast<std::size_t>(scope[i])];
        if (l < 0 || (dom_[static_cast<std::size_t>(l)] >> values[i] & 1) == 0) {
            ok = false;
        } else {
            mask |= std::uint64_t{1} << l;
            val_[static_cast<std::size_t>(l)] = values[i];
        }
    }
    if (ok) {
        for (std::size_t i = 0; i < scope.size() && ok; ++i) {
            const int l = local_[static_cast<std::size_t>(scope[i])];
            for (auto id : rels_of_[static_cast<std::size_t>(l)]) {
                const auto& r = rels_[static_cast<std::size_t>(id)];
                if ((r.mask & ~mask) == 0 && violation(r)) {
                    ok = false;
                    break;
                }
            }
        }
    }
    for (auto v : scope) {
        const int l = local_[static_cast<std::size_t>(v)];
        if (l >= 0) {
            val_[static_cast<std::size_t>(l)] = -1;
        }
    }
    return ok;
}

} // namespace csplab::detail
