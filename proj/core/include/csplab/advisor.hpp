#pragma once

#include <csplab/cbj_trace.hpp>
#include <csplab/problem.hpp>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace csplab {

/// Dynamic variable ordering for plain backtracking, compiled from the tree
/// of a completed CBJ run (backward checking, CBJ look-back) so that
/// backtracking never visits more nodes than that run did.
///
/// The first variable is the one whose retreat ended the run (or the first
/// variable, if the run stopped at a solution). After a value is assigned at
/// a node that CBJ extended, the next variable is the one whose retreat
/// revoked that node in CBJ; if the node was never revoked (it lies on the
/// path to the solution that stopped a FIRST run), CBJ's own next variable.
/// Decisions are keyed on the full assignment path.
class PerfectAdvisor {
public:
    /// Throws PreconditionError when the trace is incomplete.
    static PerfectAdvisor build(const CbjTrace& trace);

    /// Throws CoverageError for a path the construction never produced.
    [[nodiscard]] VarId advise(const PartialSolution& path) const;
    [[nodiscard]] std::size_t size() const { return decisions_.size(); }

private:
    void add(const CbjTrace& trace, std::vector<Assignment>& path, int window);

    std::map<std::vector<Assignment>, VarId> decisions_;
};

std::string cbj_trace_to_json(const CbjTrace& trace);
/// Throws ParseError on malformed input.
CbjTrace parse_cbj_trace(std::string_view json_text);

} // namespace csplab
