#pragma once

// Strong k-consistency closure over the problem induced by a partial
// assignment. Shared by enforce_strong_k (empty assignment) and the MC_k
// look-ahead of the search engine. Explanations are bit masks over search
// levels 1..63.

#include <csplab/problem.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace csplab::detail {

struct KRemovalRecord {
    std::vector<VarId> scope;
    std::vector<ValueIndex> tuple;
    std::optional<VarId> witness;
};

class StrongKEngine {
public:
    /// `assignment[v]` is the value of v or -1; `level[v]` is the search level
    /// of an assigned v (only used for explanations, may be 0).
    StrongKEngine(const Problem& p, int k, std::span<const ValueIndex> assignment,
                  std::span<const int> level, bool keep_ledger);

    /// Computes the closure; false when the induced problem is EMPTY.
    bool run();

    [[nodiscard]] bool empty() const { return empty_; }
    [[nodiscard]] std::uint64_t empty_explanation() const { return empty_expl_; }
    [[nodiscard]] std::uint64_t checks() const { return checks_; }

    /// Membership of value `a` in the enforced domain of free variable `v`.
    [[nodiscard]] bool has(VarId v, ValueIndex a) const;
    [[nodiscard]] std::uint64_t removal_explanation(VarId v, ValueIndex a) const;
    [[nodiscard]] bool is_free(VarId v) const { return local_[static_cast<std::size_t>(v)] >= 0; }

    [[nodiscard]] const std::vector<KRemovalRecord>& ledger() const { return ledger_; }

    /// Derived (non-original) forbidden tuples, grouped by scope. Scopes are
    /// ascending original variable ids; groups are listed in creation order.
    struct DerivedGroup {
        std::vector<VarId> scope;
        std::vector<std::vector<ValueIndex>> forbidden;
    };
    [[nodiscard]] std::vector<DerivedGroup> derived() const;

    /// True when the tuple over `scope` (original ids, any order) is
    /// consistent with every relation whose scope lies inside it and every
    /// value is still in its enforced domain.
    [[nodiscard]] bool tuple_consistent(std::span<const VarId> scope, std::span<const ValueIndex> values);

private:
    struct Rel {
        std::vector<int> vars;              // local ids
        std::vector<std::uint64_t> strides; // mixed radix over original domain sizes
        std::uint64_t mask = 0;             // local-id bit mask
        std::uint64_t expl = 0;
        bool derived = false;
        std::vector<std::uint64_t> allowed; // bitset (original relations)
        std::unordered_map<std::uint64_t, std::uint64_t> forbidden; // code -> explanation (derived)
    };

    [[nodiscard]] std::uint64_t code_of(const Rel& r) const;
    /// Returns nullopt if the current values satisfy `r`, else the explanation.
    [[nodiscard]] std::optional<std::uint64_t> violation(const Rel& r);
    void add_rel(Rel r);
    void remove_value(int x, ValueIndex a, std::uint64_t expl);
    void set_empty(std::uint64_t expl);
    [[nodiscard]] std::uint64_t wipe_explanation(int x) const;
    bool extends(std::uint64_t smask, int x, std::uint64_t& expl);
    bool sweep_level(int j);
    void enumerate(const std::vector<int>& s, std::size_t p, std::uint64_t prefix_mask, bool& changed, int j);
    bool relations_nonempty();
    int derived_for(std::uint64_t mask, const std::vector<int>& sorted_vars);

    const Problem& p_;
    int k_;
    bool keep_ledger_;
    std::vector<int> local_;     // original -> local or -1
    std::vector<VarId> free_;    // local -> original
    std::vector<int> dsize_;     // local -> original domain size
    std::vector<std::uint64_t> dom_;
    std::vector<std::vector<std::uint64_t>> removed_expl_;
    std::vector<ValueIndex> val_;
    std::vector<Rel> rels_;
    std::vector<std::vector<int>> rels_of_;
    std::unordered_map<std::uint64_t, int> derived_by_mask_;
    std::vector<int> derived_order_;
    std::vector<KRemovalRecord> ledger_;
    bool empty_ = false;
    std::uint64_t empty_expl_ = 0;
    std::uint64_t checks_ = 0;
};

} // namespace csplab::detail
