#pragma once

#include <csplab/heuristics.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace csplab {

enum class LookaheadKind {
    BC,  ///< backward checking
    MC,  ///< maintain strong k-consistency on the induced problem
    GAC, ///< maintain generalized arc consistency
};

enum class LookbackKind {
    Chrono,
    BJ,  ///< conflict-directed backjumping capped at a backjump level
    CBJ,
};

enum class SearchMode {
    First,
    All,
    Count,
};

struct SolverConfig {
    LookaheadKind lookahead = LookaheadKind::BC;
    int mc_level = 1;
    LookbackKind lookback = LookbackKind::Chrono;
    int bj_cap = 1;
    HeuristicSpec heuristic;
    SearchMode mode = SearchMode::First;
    std::optional<std::uint64_t> node_limit = 10'000'000;
    std::optional<double> time_limit_seconds = 60.0;

    /// Record every visited node (needed by capture_trace).
    bool trace = false;
    /// Keep the solutions themselves, not just their count.
    bool keep_solutions = false;
    /// Record every look-back event.
    bool record_events = false;
    /// Record the search tree with revocation links (advisor input).
    bool record_tree = false;
    /// Assert that domain trails restore state exactly (slower).
    bool verify_trail = false;

    /// "<lookahead>/<lookback>", e.g. "mc:2/cbj" or "gac/chrono".
    [[nodiscard]] std::string algorithm_token() const;
};

/// Parses "<lookahead>/<lookback>" (lookahead bc | mc:<k> | gac, lookback
/// chrono | bj:<k> | cbj) into the algorithm part of a config. Other fields
/// keep their defaults. Throws ParseError on malformed tokens.
SolverConfig parse_algorithm_token(std::string_view token);
void parse_lookahead_token(std::string_view token, SolverConfig& cfg);
void parse_lookback_token(std::string_view token, SolverConfig& cfg);

std::string_view mode_name(SearchMode mode);
SearchMode parse_mode(std::string_view token);

} // namespace csplab
