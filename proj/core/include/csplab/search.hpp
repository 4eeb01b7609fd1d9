#pragma once

#include <csplab/cbj_trace.hpp>
#include <csplab/level_set.hpp>
#include <csplab/problem.hpp>
#include <csplab/solver_config.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace csplab {

enum class SearchStatus {
    Complete,
    NodeLimit,
    TimeLimit,
};

enum class BackjumpKind {
    Jump,
    Chrono,
    Capped,
};

enum class RetreatCause {
    ValuesExhausted,
    SolutionsFound,
};

/// One look-back step. `level` is the backjump level: 1 for a dead-end with
/// no incoming retreats during the current stay at `from`, otherwise one more
/// than the deepest level that arrived there.
struct BackjumpEvent {
    int from = 0;
    int to = 0;
    int level = 1;
    BackjumpKind kind = BackjumpKind::Jump;
    RetreatCause cause = RetreatCause::ValuesExhausted;
    /// The node at level `to` (filled when events are recorded).
    PartialSolution destination;
};

/// Per-level look-back bookkeeping. Index 0 is the root.
struct LevelRecord {
    LevelSet conflicts;
    std::uint64_t solutions_at_entry = 0;
    int max_incoming = 0;
};

struct SearchState {
    std::vector<LevelRecord> levels;
    std::uint64_t solutions = 0;
};

/// Decides where a dead-end at `from` retreats to and merges conflict sets.
///
/// CHRONO always steps back one level without merging. CBJ and BJ_k step
/// back one level without merging when solutions were found since `from` was
/// entered (ALL/COUNT); otherwise they go to the deepest level of the
/// conflict set (0 = root), BJ_k overriding to from - 1 (CAPPED) when the
/// backjump level exceeds its cap. The conflict set of `from` minus the
/// destination is merged into the destination's set.
BackjumpEvent lookback_destination(SearchState& state, int from, const SolverConfig& config);

/// Registers `event.level` as an incoming retreat at the destination.
void record_incoming(SearchState& state, const BackjumpEvent& event);

struct SearchReport {
    SearchStatus status = SearchStatus::Complete;
    std::uint64_t solutions = 0;
    std::vector<PartialSolution> solution_list;
    std::uint64_t nodes = 0;
    std::uint64_t checks = 0;
    std::map<int, std::uint64_t> backjump_histogram;
    double elapsed_ms = 0.0;
    std::optional<std::vector<PartialSolution>> trace;
    std::vector<BackjumpEvent> events;
    /// nodes_per_depth[i] = nodes visited at level i (index 0 unused).
    std::vector<std::uint64_t> nodes_per_depth;
    std::optional<CbjTrace> tree;
};

/// Depth-first backtracking search.
///
/// A node is counted when its assignment is made, before any checking; the
/// root is not counted. Values are tried in domain order. Throws
/// ConfigurationError for MC on intensional constraints or more than 63
/// variables, and for non-positive MC levels or BJ caps.
SearchReport solve(const Problem& p, const SolverConfig& config);

/// The ordered node list of a traced run. Throws UnavailableError when the
/// run was not traced.
const std::vector<PartialSolution>& capture_trace(const SearchReport& report);

std::string_view status_name(SearchStatus status);
std::string_view kind_name(BackjumpKind kind);

} // namespace csplab
