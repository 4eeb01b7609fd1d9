#pragma once

#include <csplab/domain_state.hpp>
#include <csplab/level_set.hpp>
#include <csplab/problem.hpp>

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace csplab {

struct ValueRemoval {
    VarId var = 0;
    ValueIndex value = 0;
    LevelSet explanation;
};

struct PruneResult {
    bool wipeout = false;
    std::optional<VarId> wiped;
    /// Filled only when removals are recorded.
    std::vector<ValueRemoval> removals;
    std::uint64_t checks = 0;
    /// Union of the explanations of every value of the wiped variable.
    LevelSet wipeout_explanation;
};

/// AC3-style generalized arc consistency over a fixed problem.
///
/// Work is a FIFO queue of (constraint, variable) pairs. When a variable
/// loses values, every pair (C', z) with z another variable of a constraint
/// C' on it is queued again. Extensional supports are searched in stored
/// tuple order; NotEqual and LetterEquality use their structure directly.
///
/// With explanations on, removing a from x via C records the union of the
/// explanations of the removed values of the other variables of C that
/// appear together with x = a in some allowed tuple. Instantiations are
/// removals with explanation {level}, so instantiated levels are covered.
class GacPropagator {
public:
    explicit GacPropagator(const Problem& p);

    /// Removes unsupported values of x with respect to constraint c. Returns
    /// the number of removals.
    int revise(int c, VarId x, DomainState& ds, bool explain, PruneResult& out);

    /// Full enforcement seeded with every (constraint, variable) pair.
    PruneResult enforce(DomainState& ds, bool explain, bool record_removals = false);
    /// Enforcement after `x` changed: seeded with (C, z) for C on x, z != x.
    PruneResult propagate_from(VarId x, DomainState& ds, bool explain, bool record_removals = false);

private:
    struct ExtIndex {
        // For position p and value a: tuple indices list at
        // tuples[start[p][a] .. start[p][a+1]).
        std::vector<std::vector<std::uint32_t>> start;
        std::vector<std::vector<std::uint32_t>> tuples;
    };

    void push(int c, int pos);
    PruneResult run(DomainState& ds, bool explain, bool record_removals);
    void removal_explanation(int c, int pos, ValueIndex a, const DomainState& ds, LevelSet& out) const;
    void remove(VarId x, ValueIndex a, int c, DomainState& ds, bool explain, int pos, PruneResult& out);

    const Problem& p_;
    std::vector<ExtIndex> ext_;
    // NotEqual: equal-value index in the other variable, per side.
    std::vector<std::array<std::vector<ValueIndex>, 2>> equal_;
    // LetterEquality: letter of each value at the constraint's position, per side.
    std::vector<std::array<std::vector<unsigned char>, 2>> letters_;
    std::vector<std::size_t> queue_offset_;
    std::vector<char> in_queue_;
    std::deque<std::pair<int, int>> queue_;
    bool record_ = false;
    LevelSet scratch_;
};

/// Convenience wrapper: full GAC on `ds` (instantiated variables must have
/// singleton domains, e.g. via DomainState::assign).
PruneResult enforce_gac(const Problem& p, DomainState& ds, bool explain);

/// Values of `x` that have no support in constraint `c` under `ds`; they are
/// removed from `ds`.
std::vector<ValueIndex> revise(const Problem& p, int c, VarId x, DomainState& ds);

} // namespace csplab
