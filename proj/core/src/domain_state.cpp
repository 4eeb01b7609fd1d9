#include <csplab/domain_state.hpp>

#include <algorithm>

namespace csplab {

DomainState::DomainState(const Problem& p, int max_level) : words_(LevelSet::word_count(max_level))
{
    const auto n = static_cast<std::size_t>(p.num_variables());
    offset_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        offset_[v + 1] = offset_[v] + static_cast<std::size_t>(p.domain_size(static_cast<VarId>(v)));
    }
    const auto total = offset_[n];
    dense_.resize(total);
    pos_.resize(total);
    removed_by_.assign(total, 0);
    expl_.assign(total * words_, 0);
    size_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto d = offset_[v + 1] - offset_[v];
        size_[v] = static_cast<int>(d);
        for (std::size_t a = 0; a < d; ++a) {
            dense_[offset_[v] + a] = static_cast<ValueIndex>(a);
            pos_[offset_[v] + a] = static_cast<int>(a);
        }
    }
}

std::vector<ValueIndex> DomainState::values(VarId v) const
{
    std::vector<ValueIndex> out;
    out.reserve(static_cast<std::size_t>(size(v)));
    for (ValueIndex a = 0; a < original_size(v); ++a) {
        if (contains(v, a)) {
            out.push_back(a);
        }
    }
    return out;
}

void DomainState::remove(VarId v, ValueIndex a, int constraint, std::span<const std::uint64_t> explanation)
{
    const auto base = offset_[static_cast<std::size_t>(v)];
    auto& sz = size_[static_cast<std::size_t>(v)];
    const auto slot = base + static_cast<std::size_t>(a);
    const int p = pos_[slot];
    const int last = sz - 1;
    const ValueIndex other = dense_[base + static_cast<std::size_t>(last)];
    dense_[base + static_cast<std::size_t>(p)] = other;
    pos_[base + static_cast<std::size_t>(other)] = p;
    dense_[base + static_cast<std::size_t>(last)] = a;
    pos_[slot] = last;
    --sz;
    trail_.push_back(v);

    removed_by_[slot] = constraint;
    auto* dst = expl_.data() + slot * words_;
    const auto n = std::min(words_, explanation.size());
    std::copy_n(explanation.begin(), n, dst);
    std::fill(dst + n, dst + words_, 0);
}

void DomainState::assign(VarId v, ValueIndex a, int level)
{
    LevelSet why(level);
    why.insert(level);
    for (ValueIndex b = 0; b < original_size(v); ++b) {
        if (b != a && contains(v, b)) {
            remove(v, b, kInstantiation, why);
        }
    }
}

void DomainState::restore(std::size_t mark)
{
    while (trail_.size() > mark) {
        ++size_[static_cast<std::size_t>(trail_.back())];
        trail_.pop_back();
    }
}

LevelSet DomainState::eliminated_explanation(VarId v) const
{
    LevelSet out;
    for (ValueIndex a = 0; a < original_size(v); ++a) {
        if (!contains(v, a)) {
            out.merge(explanation(v, a));
        }
    }
    return out;
}

std::uint64_t DomainState::fingerprint() const
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ULL;
    };
    for (std::size_t v = 0; v < size_.size(); ++v) {
        mix(0xFFFF0000ULL + v);
        for (ValueIndex a = 0; a < original_size(static_cast<VarId>(v)); ++a) {
            if (contains(static_cast<VarId>(v), a)) {
                mix(static_cast<std::uint64_t>(a));
            }
        }
    }
    return h;
}

} // namespace csplab
