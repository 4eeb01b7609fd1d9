#pragma once

#include <csplab/problem.hpp>

#include <optional>
#include <vector>

namespace csplab {

/// One deletion made while enforcing strong k-consistency: the tuple `tuple`
/// over `scope` (original value indices) could not be extended to `witness`.
/// An empty scope records that the whole problem became EMPTY; a unary
/// deletion without witness is a value outside a unary relation.
struct KRemoval {
    std::vector<VarId> scope;
    std::vector<ValueIndex> tuple;
    std::optional<VarId> witness;
};

struct KEnforcementResult {
    bool empty = false;
    /// The strongly k-consistent equivalent problem; absent when EMPTY.
    /// Domains keep their relative order. Deleted tuples of arity >= 2 are
    /// removed from the first constraint whose scope has exactly those
    /// variables, or from a new constraint appended at the end (scope in
    /// variable order, initialised with every currently consistent tuple).
    std::optional<Problem> problem;
    std::vector<KRemoval> ledger;
};

/// Closure under strong k-consistency. Values violating a unary relation are
/// dropped as part of enforcement, so k = 1 corresponds to node consistency
/// plus the empty-domain test. A relation makes the problem EMPTY only when
/// it has no tuple left of its own; removing domain values never empties it.
///
/// Requires extensional constraints (PreconditionError otherwise) and k >= 1
/// (PreconditionError). k larger than the variable count is clamped. Limited
/// to 64 variables and domains of at most 64 values (ConfigurationError).
KEnforcementResult enforce_strong_k(const Problem& p, int k);

/// True iff the problem induced by `t` is not EMPTY after enforcing strong
/// k-consistency. Intensional constraints are materialized first.
bool is_k_consistent_node(const Problem& p, const PartialSolution& t, int k);

} // namespace csplab
