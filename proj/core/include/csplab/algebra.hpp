#pragma once

#include <csplab/problem.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace csplab {

/// True when vars(c) is not covered by `t`, or when t restricted to vars(c)
/// satisfies the relation.
bool consistent_with(const Problem& p, const PartialSolution& t, const Constraint& c);

/// Conjunction of consistent_with over every constraint of `p`.
bool is_consistent(const Problem& p, const PartialSolution& t);

/// Projection onto `vars` (a non-empty subset of the scope). The resulting
/// scope keeps the original scope order; duplicate restrictions collapse.
/// Throws ScopeError when `vars` is not a subset of the scope and
/// PreconditionError for intensional constraints.
Constraint project(const Constraint& c, const std::vector<VarId>& vars);

/// Selection: tuples of `c` that agree with `t` (vars(t) must be within the
/// scope). Same scope as `c`.
Constraint select(const Constraint& c, const PartialSolution& t);

/// The problem induced by the consistent partial solution `t`: remaining
/// variables (original order, same domains) and, for every constraint not
/// fully instantiated by `t`, the projection of its selection on `t`.
/// Constraints are emitted in input order and never merged. Intensional
/// constraints are materialized first.
Problem induce(const Problem& p, const PartialSolution& t);

/// Syntactic equality: same variables, domains and constraint list.
bool problems_equal(const Problem& a, const Problem& b);

/// Brute-force enumeration of every full assignment (variables in index
/// order, values in domain order) that satisfies all constraints. Solutions
/// are listed variable by variable in index order.
std::vector<PartialSolution> enumerate_solutions(const Problem& p,
                                                 std::optional<std::size_t> limit = std::nullopt);

/// Same enumeration, counting only.
std::uint64_t count_solutions(const Problem& p);

} // namespace csplab
