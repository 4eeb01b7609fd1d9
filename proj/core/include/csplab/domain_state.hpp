#pragma once

#include <csplab/level_set.hpp>
#include <csplab/problem.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace csplab {

/// Current domains of every variable, backed by sparse sets with an undo
/// trail, plus the record of every eliminated value: the constraint that
/// removed it and its explanation (a set of search levels).
///
/// Removals are undone in LIFO order by restore(mark); the explanation of a
/// value is only meaningful while the value is eliminated.
class DomainState {
public:
    /// Removed by an instantiation (every other value of the variable).
    static constexpr int kInstantiation = -1;
    /// Removed by strong k-consistency enforcement (derived, no single owner).
    static constexpr int kEnforcement = -2;

    DomainState() = default;
    /// `max_level` bounds the levels that explanations may mention.
    explicit DomainState(const Problem& p, int max_level = 0);

    [[nodiscard]] int num_variables() const { return static_cast<int>(size_.size()); }
    [[nodiscard]] int size(VarId v) const { return size_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] int original_size(VarId v) const
    {
        return static_cast<int>(offset_[static_cast<std::size_t>(v) + 1] - offset_[static_cast<std::size_t>(v)]);
    }
    [[nodiscard]] bool contains(VarId v, ValueIndex a) const
    {
        return pos_[offset_[static_cast<std::size_t>(v)] + static_cast<std::size_t>(a)] < size(v);
    }
    /// Current values in domain order.
    [[nodiscard]] std::vector<ValueIndex> values(VarId v) const;
    /// Any current value (the last one in sparse order); size(v) must be > 0.
    [[nodiscard]] ValueIndex some_value(VarId v) const
    {
        return dense_[offset_[static_cast<std::size_t>(v)] + static_cast<std::size_t>(size(v) - 1)];
    }

    /// Calls f(a) for every current value, in no particular order. The
    /// domain of v must not change during the call.
    template <typename F>
    void for_each_value(VarId v, F&& f) const
    {
        const auto base = offset_[static_cast<std::size_t>(v)];
        for (int i = 0; i < size(v); ++i) {
            f(dense_[base + static_cast<std::size_t>(i)]);
        }
    }

    /// Eliminates `a` (which must be present) and records why.
    void remove(VarId v, ValueIndex a, int constraint, std::span<const std::uint64_t> explanation);
    void remove(VarId v, ValueIndex a, int constraint, const LevelSet& explanation)
    {
        remove(v, a, constraint, explanation.words());
    }
    /// Instantiates v to a: every other value is removed with explanation {level}.
    void assign(VarId v, ValueIndex a, int level);

    [[nodiscard]] std::size_t mark() const { return trail_.size(); }
    void restore(std::size_t mark);

    [[nodiscard]] std::size_t explanation_words() const { return words_; }
    [[nodiscard]] std::span<const std::uint64_t> explanation(VarId v, ValueIndex a) const
    {
        return {expl_.data() + (offset_[static_cast<std::size_t>(v)] + static_cast<std::size_t>(a)) * words_, words_};
    }
    [[nodiscard]] int removed_by(VarId v, ValueIndex a) const
    {
        return removed_by_[offset_[static_cast<std::size_t>(v)] + static_cast<std::size_t>(a)];
    }
    /// Union of the explanations of every eliminated value of v.
    [[nodiscard]] LevelSet eliminated_explanation(VarId v) const;

    /// Hash of the current value sets (not of explanations or trail order).
    [[nodiscard]] std::uint64_t fingerprint() const;

private:
    std::vector<std::size_t> offset_;
    std::vector<ValueIndex> dense_;
    std::vector<int> pos_;
    std::vector<int> size_;
    std::vector<VarId> trail_;
    std::vector<int> removed_by_;
    std::vector<std::uint64_t> expl_;
    std::size_t words_ = 1;
};

} // namespace csplab
