#pragma once

#include <csplab/domain_state.hpp>
#include <csplab/problem.hpp>

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace csplab {

class PerfectAdvisor;

enum class HeuristicKind {
    Lex,
    Given,
    Dom,
    DomPlusDeg,
    DomDivDeg,
    Advisor,
};

/// Variable ordering. Degrees are static (number of constraints on the
/// variable); residual ties always go to the smallest variable index.
struct HeuristicSpec {
    HeuristicKind kind = HeuristicKind::Lex;
    /// GIVEN: a permutation of all variables.
    std::vector<VarId> order;
    std::shared_ptr<const PerfectAdvisor> advisor;

    static HeuristicSpec lex() { return {}; }
    static HeuristicSpec given(std::vector<VarId> order);
    static HeuristicSpec dom() { return {HeuristicKind::Dom, {}, nullptr}; }
    static HeuristicSpec dom_plus_deg() { return {HeuristicKind::DomPlusDeg, {}, nullptr}; }
    static HeuristicSpec dom_div_deg() { return {HeuristicKind::DomDivDeg, {}, nullptr}; }
    static HeuristicSpec from_advisor(std::shared_ptr<const PerfectAdvisor> advisor);
};

/// "lex", "given", "dom", "dom+deg", "dom/deg" or "advisor".
std::string heuristic_name(const HeuristicSpec& spec);

/// Parses "lex", "given", "dom", "dom+deg" or "dom/deg". GIVEN comes back
/// with an empty order for the caller to fill. Throws ParseError.
HeuristicSpec parse_heuristic(std::string_view token);

/// Next variable to instantiate. `assigned[v]` flags the past variables and
/// `path` is the current partial solution (only the advisor reads it).
/// Throws PreconditionError when every variable is assigned, and
/// CoverageError when the advisor has no decision for `path`.
VarId select_variable(const Problem& p, const DomainState& ds, std::span<const char> assigned,
                      const PartialSolution& path, const HeuristicSpec& spec);

/// Checks that a GIVEN order is a permutation of the problem's variables.
void validate_order(const Problem& p, const std::vector<VarId>& order);

} // namespace csplab
