#include <csplab/advisor.hpp>
#include <csplab/error.hpp>
#include <csplab/heuristics.hpp>

namespace csplab {

HeuristicSpec HeuristicSpec::given(std::vector<VarId> order)
{
    return {HeuristicKind::Given, std::move(order), nullptr};
}

HeuristicSpec HeuristicSpec::from_advisor(std::shared_ptr<const PerfectAdvisor> advisor)
{
    return {HeuristicKind::Advisor, {}, std::move(advisor)};
}

std::string heuristic_name(const HeuristicSpec& spec)
{
    switch (spec.kind) {
    case HeuristicKind::Lex:
        return "lex";
    case HeuristicKind::Given:
        return "given";
    case HeuristicKind::Dom:
        return "dom";
    case HeuristicKind::DomPlusDeg:
        return "dom+deg";
    case HeuristicKind::DomDivDeg:
        return "dom/deg";
    case HeuristicKind::Advisor:
        return "advisor";
    }
    return "?";
}

HeuristicSpec parse_heuristic(std::string_view token)
{
    if (token == "lex") {
        return HeuristicSpec::lex();
    }
    if (token == "given") {
        return {HeuristicKind::Given, {}, nullptr};
    }
    if (token == "dom") {
        return HeuristicSpec::dom();
    }
    if (token == "dom+deg") {
        return HeuristicSpec::dom_plus_deg();
    }
    if (token == "dom/deg") {
        return HeuristicSpec::dom_div_deg();
    }
    throw ParseError("unknown heuristic '" + std::string(token) + "' (lex | given | dom | dom+deg | dom/deg)");
}

void validate_order(const Problem& p, const std::vector<VarId>& order)
{
    std::vector<char> seen(static_cast<std::size_t>(p.num_variables()), 0);
    if (static_cast<int>(order.size()) != p.num_variables()) {
        throw PreconditionError("variable order must list every variable exactly once");
    }
    for (auto v : order) {
        if (v < 0 || v >= p.num_variables() || seen[static_cast<std::size_t>(v)] != 0) {
            throw PreconditionError("variable order must list every variable exactly once");
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

namespace {

// True when a is strictly preferred to b under dom/deg (smaller ratio).
// Degree 0 counts as an infinite ratio.
bool better_ratio(std::int64_t size_a, std::int64_t deg_a, std::int64_t size_b, std::int64_t deg_b)
{
    if (deg_a == 0 || deg_b == 0) {
        return deg_a != 0 || (deg_b == 0 && size_a < size_b);
    }
    return size_a * deg_b < size_b * deg_a;
}

} // namespace

VarId select_variable(const Problem& p, const DomainState& ds, std::span<const char> assigned,
                      const PartialSolution& path, const HeuristicSpec& spec)
{
    const int n = p.num_variables();
    auto free = [&](VarId v) { return assigned[static_cast<std::size_t>(v)] == 0; };
    switch (spec.kind) {
    case HeuristicKind::Lex:
        for (VarId v = 0; v < n; ++v) {
            if (free(v)) {
                return v;
            }
        }
        break;
    case HeuristicKind::Given:
        for (auto v : spec.order) {
            if (free(v)) {
                return v;
            }
        }
        break;
    case HeuristicKind::Advisor: {
        if (!spec.advisor) {
            throw PreconditionError("advisor heuristic without an advisor");
        }
        const VarId v = spec.advisor->advise(path);
        if (v < 0 || v >= n || !free(v)) {
            throw CoverageError("advisor names a variable that is already instantiated");
        }
        return v;
    }
    case HeuristicKind::Dom:
    case HeuristicKind::DomPlusDeg:
    case HeuristicKind::DomDivDeg: {
        VarId best = -1;
        for (VarId v = 0; v < n; ++v) {
            if (!free(v)) {
                continue;
            }
            if (best < 0) {
                best = v;
                continue;
            }
            const std::int64_t sv = ds.size(v);
            const std::int64_t sb = ds.size(best);
            bool take = false;
            if (spec.kind == HeuristicKind::Dom) {
                take = sv < sb;
            } else if (spec.kind == HeuristicKind::DomPlusDeg) {
                take = sv < sb || (sv == sb && p.degree(v) > p.degree(best));
            } else {
                take = better_ratio(sv, p.degree(v), sb, p.degree(best));
            }
            if (take) {
                best = v;
            }
        }
        if (best >= 0) {
            return best;
        }
        break;
    }
    }
    throw PreconditionError("no uninstantiated variable left to select");
}

} // namespace csplab
