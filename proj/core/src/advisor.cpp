#include <csplab/advisor.hpp>
#include <csplab/error.hpp>

#include <nlohmann/json.hpp>

namespace csplab {

PerfectAdvisor PerfectAdvisor::build(const CbjTrace& trace)
{
    if (!trace.complete) {
        throw PreconditionError("the perfect advisor needs a trace of a completed run");
    }
    PerfectAdvisor advisor;
    if (trace.windows.empty()) {
        return advisor;
    }
    const int start = trace.root_revoker >= 0 ? trace.root_revoker : 0;
    std::vector<Assignment> path;
    advisor.add(trace, path, start);
    return advisor;
}

void PerfectAdvisor::add(const CbjTrace& trace, std::vector<Assignment>& path, int window)
{
    const auto& w = trace.windows[static_cast<std::size_t>(window)];
    decisions_.emplace(path, w.var);
    for (int id : w.nodes) {
        const auto& node = trace.nodes[static_cast<std::size_t>(id)];
        if (node.kind != CbjTrace::NodeKind::Consistent) {
            continue;
        }
        const int next = node.revoker >= 0 ? node.revoker : node.child_window;
        if (next < 0) {
            continue;
        }
        path.push_back({w.var, node.value});
        add(trace, path, next);
        path.pop_back();
    }
}

VarId PerfectAdvisor::advise(const PartialSolution& path) const
{
    const auto it = decisions_.find(path.items());
    if (it == decisions_.end()) {
        throw CoverageError("the advisor has no decision for a path of length " + std::to_string(path.size()));
    }
    return it->second;
}

namespace {

std::string_view kind_token(CbjTrace::NodeKind kind)
{
    switch (kind) {
    case CbjTrace::NodeKind::Leaf:
        return "leaf";
    case CbjTrace::NodeKind::Consistent:
        return "consistent";
    case CbjTrace::NodeKind::Solution:
        return "solution";
    }
    return "?";
}

CbjTrace::NodeKind parse_kind(const std::string& s)
{
    if (s == "leaf") {
        return CbjTrace::NodeKind::Leaf;
    }
    if (s == "consistent") {
        return CbjTrace::NodeKind::Consistent;
    }
    if (s == "solution") {
        return CbjTrace::NodeKind::Solution;
    }
    throw ParseError("unknown node kind '" + s + "' in trace");
}

} // namespace

std::string cbj_trace_to_json(const CbjTrace& trace)
{
    nlohmann::ordered_json doc;
    doc["mode"] = std::string(mode_name(trace.mode));
    doc["complete"] = trace.complete;
    doc["root_revoker"] = trace.root_revoker;
    auto& windows = doc["windows"] = nlohmann::ordered_json::array();
    for (const auto& w : trace.windows) {
        windows.push_back({{"level", w.level}, {"var", w.var}, {"parent", w.parent_node}, {"nodes", w.nodes}});
    }
    auto& nodes = doc["nodes"] = nlohmann::ordered_json::array();
    for (const auto& n : trace.nodes) {
        nodes.push_back({{"window", n.window},
                         {"value", n.value},
                         {"kind", kind_token(n.kind)},
                         {"child", n.child_window},
                         {"revoker", n.revoker}});
    }
    return doc.dump();
}

CbjTrace parse_cbj_trace(std::string_view json_text)
{
    try {
        const auto doc = nlohmann::json::parse(json_text);
        CbjTrace trace;
        trace.mode = parse_mode(doc.at("mode").get<std::string>());
        trace.complete = doc.at("complete").get<bool>();
        trace.root_revoker = doc.at("root_revoker").get<int>();
        for (const auto& jw : doc.at("windows")) {
            CbjTrace::Window w;
            w.level = jw.at("level").get<int>();
            w.var = jw.at("var").get<VarId>();
            w.parent_node = jw.at("parent").get<int>();
            w.nodes = jw.at("nodes").get<std::vector<int>>();
            trace.windows.push_back(std::move(w));
        }
        for (const auto& jn : doc.at("nodes")) {
            CbjTrace::Node n;
            n.window = jn.at("window").get<int>();
            n.value = jn.at("value").get<ValueIndex>();
            n.kind = parse_kind(jn.at("kind").get<std::string>());
            n.child_window = jn.at("child").get<int>();
            n.revoker = jn.at("revoker").get<int>();
            trace.nodes.push_back(n);
        }
        const auto nw = static_cast<int>(trace.windows.size());
        const auto nn = static_cast<int>(trace.nodes.size());
        auto window_ok = [nw](int w) { return w >= -1 && w < nw; };
        if (!window_ok(trace.root_revoker)) {
            throw ParseError("trace root_revoker out of range");
        }
        for (const auto& w : trace.windows) {
            for (int id : w.nodes) {
                if (id < 0 || id >= nn) {
                    throw ParseError("trace window lists an unknown node");
                }
            }
        }
        for (const auto& n : trace.nodes) {
            if (!window_ok(n.child_window) || !window_ok(n.revoker) || n.window < 0 || n.window >= nw) {
                throw ParseError("trace node references an unknown window");
            }
        }
        return trace;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("trace JSON: ") + e.what());
    }
}

} // namespace csplab
