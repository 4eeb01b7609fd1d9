#pragma once

#include <csplab/problem.hpp>
#include <csplab/solver_config.hpp>

#include <vector>

namespace csplab {

/// The search tree of a run, organised by windows. A window is one stay at a
/// level: the variable chosen under a parent node and every value tried for
/// it before the search retreated past that level. Each node remembers the
/// window whose retreat landed on its level while it was current (its
/// revoker).
struct CbjTrace {
    enum class NodeKind {
        Leaf,       ///< rejected by look-ahead
        Consistent, ///< extended further
        Solution,
    };

    struct Node {
        int window = -1;
        ValueIndex value = 0;
        NodeKind kind = NodeKind::Leaf;
        int child_window = -1;
        int revoker = -1;
    };

    struct Window {
        int level = 0;
        VarId var = 0;
        int parent_node = -1; ///< -1 for the level-1 window under the root
        std::vector<int> nodes;
    };

    std::vector<Window> windows;
    std::vector<Node> nodes;
    /// Window whose retreat reached the root, or -1 if the run never did.
    int root_revoker = -1;
    SearchMode mode = SearchMode::First;
    bool complete = false;
};

} // namespace csplab
