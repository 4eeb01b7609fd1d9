#include "strong_k_engine.hpp"

#include <csplab/error.hpp>
#include <csplab/gac.hpp>
#include <csplab/heuristics.hpp>
#include <csplab/search.hpp>

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace csplab {

BackjumpEvent lookback_destination(SearchState& state, int from, const SolverConfig& config)
{
    auto& rec = state.levels[static_cast<std::size_t>(from)];
    BackjumpEvent ev;
    ev.from = from;
    ev.level = rec.max_incoming == 0 ? 1 : rec.max_incoming + 1;
    const bool solutions_changed = state.solutions != rec.solutions_at_entry;
    ev.cause = solutions_changed ? RetreatCause::SolutionsFound : RetreatCause::ValuesExhausted;

    if (config.lookback == LookbackKind::Chrono ||
        (config.mode != SearchMode::First && solutions_changed)) {
        ev.to = from - 1;
        ev.kind = BackjumpKind::Chrono;
        return ev;
    }

    rec.conflicts.erase(from);
    int dest = rec.conflicts.max();
    ev.kind = BackjumpKind::Jump;
    if (config.lookback == LookbackKind::BJ && ev.level > config.bj_cap && dest < from - 1) {
        dest = from - 1;
        ev.kind = BackjumpKind::Capped;
    }
    ev.to = dest;
    if (dest > 0) {
        LevelSet carried = rec.conflicts;
        carried.erase(dest);
        state.levels[static_cast<std::size_t>(dest)].conflicts.merge(carried);
    }
    return ev;
}

void record_incoming(SearchState& state, const BackjumpEvent& event)
{
    if (event.to <= 0) {
        return;
    }
    auto& slot = state.levels[static_cast<std::size_t>(event.to)].max_incoming;
    slot = std::max(slot, event.level);
}

const std::vector<PartialSolution>& capture_trace(const SearchReport& report)
{
    if (!report.trace) {
        throw UnavailableError("the run was not traced; enable trace capture");
    }
    return *report.trace;
}

std::string_view status_name(SearchStatus status)
{
    switch (status) {
    case SearchStatus::Complete:
        return "COMPLETE";
    case SearchStatus::NodeLimit:
        return "NODE_LIMIT";
    case SearchStatus::TimeLimit:
        return "TIME_LIMIT";
    }
    return "?";
}

std::string_view kind_name(BackjumpKind kind)
{
    switch (kind) {
    case BackjumpKind::Jump:
        return "JUMP";
    case BackjumpKind::Chrono:
        return "CHRONO";
    case BackjumpKind::Capped:
        return "CAPPED";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class Engine {
public:
    Engine(const Problem& p, const SolverConfig& cfg)
        : p_(p), cfg_(cfg), n_(p.num_variables()), ds_(p, p.num_variables())
    {
        if (cfg.lookahead == LookaheadKind::MC) {
            if (cfg.mc_level < 1) {
                throw ConfigurationError("MC level must be at least 1");
            }
            if (!p.all_extensional()) {
                throw ConfigurationError("MC look-ahead needs extensional constraints; materialize the problem");
            }
            if (n_ > 63 || p.max_domain_size() > 64) {
                throw ConfigurationError("MC look-ahead is limited to 63 variables and 64 values per domain");
            }
        }
        if (cfg.lookback == LookbackKind::BJ && cfg.bj_cap < 1) {
            throw ConfigurationError("BJ cap must be at least 1");
        }
        if (cfg.heuristic.kind == HeuristicKind::Given) {
            validate_order(p, cfg.heuristic.order);
        }
        if (cfg.lookahead == LookaheadKind::GAC) {
            gac_.emplace(p);
        }
        const auto slots = static_cast<std::size_t>(n_) + 2;
        st_.levels.resize(slots);
        var_at_.assign(slots, -1);
        next_value_.assign(slots, 0);
        mark_.assign(slots, 0);
        fingerprint_.assign(slots, 0);
        window_at_.assign(slots, -1);
        cur_node_.assign(slots, -1);
        val_of_.assign(static_cast<std::size_t>(n_), -1);
        level_of_.assign(static_cast<std::size_t>(n_), 0);
        assigned_.assign(static_cast<std::size_t>(n_), 0);
        report_.nodes_per_depth.assign(static_cast<std::size_t>(n_) + 1, 0);
        if (cfg.trace) {
            report_.trace.emplace();
        }
        if (cfg.record_tree) {
            report_.tree.emplace();
            report_.tree->mode = cfg.mode;
        }
    }

    SearchReport run()
    {
        start_ = Clock::now();
        search();
        report_.solutions = st_.solutions;
        if (report_.tree) {
            report_.tree->complete = report_.status == SearchStatus::Complete;
        }
        report_.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
        return std::move(report_);
    }

private:
    bool explain() const { return cfg_.lookback != LookbackKind::Chrono; }

    void search()
    {
        if (!propagate_root()) {
            return;
        }
        if (n_ == 0) {
            found_solution();
            return;
        }
        int depth = 1;
        enter_level(depth);
        while (true) {
            const int L = depth;
            const VarId x = var_at_[static_cast<std::size_t>(L)];
            ValueIndex a = next_value_[static_cast<std::size_t>(L)];
            while (a < ds_.original_size(x) && !ds_.contains(x, a)) {
                ++a;
            }
            if (a >= ds_.original_size(x)) {
                depth = retreat(L);
                if (depth == 0) {
                    return;
                }
                continue;
            }
            next_value_[static_cast<std::size_t>(L)] = a + 1;

            if (cfg_.node_limit && report_.nodes >= *cfg_.node_limit) {
                report_.status = SearchStatus::NodeLimit;
                return;
            }
            ++report_.nodes;
            ++report_.nodes_per_depth[static_cast<std::size_t>(L)];
            if ((report_.nodes & 255) == 0 && out_of_time()) {
                report_.status = SearchStatus::TimeLimit;
                return;
            }
            assign(L, x, a);

            if (!look_ahead(L, x, a)) {
                mark_node(L, CbjTrace::NodeKind::Leaf);
                unassign(L);
                continue;
            }
            if (L == n_) {
                mark_node(L, CbjTrace::NodeKind::Solution);
                found_solution();
                if (cfg_.mode == SearchMode::First) {
                    return;
                }
                ds_.restore(mark_[static_cast<std::size_t>(L)]);
                unassign(L);
                continue;
            }
            mark_node(L, CbjTrace::NodeKind::Consistent);
            depth = L + 1;
            enter_level(depth);
        }
    }

    bool out_of_time() const
    {
        if (!cfg_.time_limit_seconds) {
            return false;
        }
        return std::chrono::duration<double>(Clock::now() - start_).count() > *cfg_.time_limit_seconds;
    }

    bool propagate_root()
    {
        if (cfg_.lookahead == LookaheadKind::GAC) {
            const auto res = gac_->enforce(ds_, explain());
            report_.checks += res.checks;
            return !res.wipeout;
        }
        if (cfg_.lookahead == LookaheadKind::MC) {
            detail::StrongKEngine eng(p_, cfg_.mc_level, val_of_, level_of_, false);
            const bool ok = eng.run();
            report_.checks += eng.checks();
            if (!ok) {
                return false;
            }
            apply_enforcement(eng);
        }
        return true;
    }

    void apply_enforcement(const detail::StrongKEngine& eng)
    {
        for (VarId v = 0; v < n_; ++v) {
            if (val_of_[static_cast<std::size_t>(v)] >= 0) {
                continue;
            }
            for (ValueIndex b = 0; b < ds_.original_size(v); ++b) {
                if (ds_.contains(v, b) && !eng.has(v, b)) {
                    const std::uint64_t why = eng.removal_explanation(v, b);
                    ds_.remove(v, b, DomainState::kEnforcement, std::span<const std::uint64_t>(&why, 1));
                }
            }
        }
    }

    void enter_level(int L)
    {
        const auto l = static_cast<std::size_t>(L);
        const VarId x = select_variable(p_, ds_, assigned_, path_, cfg_.heuristic);
        var_at_[l] = x;
        next_value_[l] = 0;
        mark_[l] = ds_.mark();
        if (cfg_.verify_trail) {
            fingerprint_[l] = ds_.fingerprint();
        }
        auto& rec = st_.levels[l];
        rec.solutions_at_entry = st_.solutions;
        rec.max_incoming = 0;
        if (explain()) {
            rec.conflicts = ds_.eliminated_explanation(x);
            rec.conflicts.truncate_below(L);
        } else {
            rec.conflicts.clear();
        }
        if (report_.tree) {
            auto& tree = *report_.tree;
            CbjTrace::Window w;
            w.level = L;
            w.var = x;
            w.parent_node = L > 1 ? cur_node_[l - 1] : -1;
            const int id = static_cast<int>(tree.windows.size());
            if (w.parent_node >= 0) {
                tree.nodes[static_cast<std::size_t>(w.parent_node)].child_window = id;
            }
            tree.windows.push_back(std::move(w));
            window_at_[l] = id;
        }
    }

    void assign(int L, VarId x, ValueIndex a)
    {
        path_.push(x, a);
        val_of_[static_cast<std::size_t>(x)] = a;
        level_of_[static_cast<std::size_t>(x)] = L;
        assigned_[static_cast<std::size_t>(x)] = 1;
        if (report_.trace) {
            report_.trace->push_back(path_);
        }
        if (report_.tree) {
            auto& tree = *report_.tree;
            const int id = static_cast<int>(tree.nodes.size());
            CbjTrace::Node node;
            node.window = window_at_[static_cast<std::size_t>(L)];
            node.value = a;
            tree.nodes.push_back(node);
            tree.windows[static_cast<std::size_t>(node.window)].nodes.push_back(id);
            cur_node_[static_cast<std::size_t>(L)] = id;
        }
    }

    void mark_node(int L, CbjTrace::NodeKind kind)
    {
        if (report_.tree) {
            report_.tree->nodes[static_cast<std::size_t>(cur_node_[static_cast<std::size_t>(L)])].kind = kind;
        }
    }

    void unassign(int L)
    {
        const VarId x = var_at_[static_cast<std::size_t>(L)];
        path_.pop();
        val_of_[static_cast<std::size_t>(x)] = -1;
        level_of_[static_cast<std::size_t>(x)] = 0;
        assigned_[static_cast<std::size_t>(x)] = 0;
    }

    void found_solution()
    {
        ++st_.solutions;
        if (cfg_.keep_solutions) {
            report_.solution_list.push_back(path_);
        }
    }

    void restore_level(int L)
    {
        ds_.restore(mark_[static_cast<std::size_t>(L)]);
        if (cfg_.verify_trail && ds_.fingerprint() != fingerprint_[static_cast<std::size_t>(L)]) {
            throw std::logic_error("domain trail did not restore the state of level " + std::to_string(L));
        }
    }

    // Dead-end at level L: computes the event, unwinds to its destination and
    // returns the level to continue at (0 = search over).
    int retreat(int L)
    {
        auto ev = lookback_destination(st_, L, cfg_);
        ++report_.backjump_histogram[ev.level];
        if (cfg_.record_events) {
            ev.destination = path_.prefix(static_cast<std::size_t>(std::max(ev.to, 0)));
            report_.events.push_back(ev);
        }
        if (report_.tree) {
            auto& tree = *report_.tree;
            const int w = window_at_[static_cast<std::size_t>(L)];
            if (ev.to == 0) {
                tree.root_revoker = w;
            } else {
                tree.nodes[static_cast<std::size_t>(cur_node_[static_cast<std::size_t>(ev.to)])].revoker = w;
            }
        }
        restore_level(L);
        for (int l = L - 1; l > ev.to; --l) {
            unassign(l);
            restore_level(l);
        }
        if (ev.to == 0) {
            return 0;
        }
        record_incoming(st_, ev);
        unassign(ev.to);
        restore_level(ev.to);
        return ev.to;
    }

    bool look_ahead(int L, VarId x, ValueIndex a)
    {
        switch (cfg_.lookahead) {
        case LookaheadKind::BC:
            return check_backward(L, x);
        case LookaheadKind::GAC:
            return maintain_gac(L, x, a);
        case LookaheadKind::MC:
            return maintain_k(L, x, a);
        }
        return false;
    }

    bool check_backward(int L, VarId x)
    {
        candidates_.clear();
        for (int c : p_.constraints_of(x)) {
            int deepest = 0;
            bool full = true;
            for (auto v : p_.constraint(c).scope()) {
                if (v == x) {
                    continue;
                }
                if (val_of_[static_cast<std::size_t>(v)] < 0) {
                    full = false;
                    break;
                }
                deepest = std::max(deepest, level_of_[static_cast<std::size_t>(v)]);
            }
            if (full) {
                candidates_.emplace_back(deepest, c);
            }
        }
        // Check against the shallowest past variables first, as chronological
        // consistency checking does.
        std::sort(candidates_.begin(), candidates_.end());
        for (const auto& [deepest, c] : candidates_) {
            const auto& con = p_.constraint(c);
            values_.clear();
            for (auto v : con.scope()) {
                values_.push_back(val_of_[static_cast<std::size_t>(v)]);
            }
            ++report_.checks;
            if (!p_.allows(con, values_)) {
                if (explain()) {
                    auto& conf = st_.levels[static_cast<std::size_t>(L)].conflicts;
                    for (auto v : con.scope()) {
                        if (v != x) {
                            conf.insert(level_of_[static_cast<std::size_t>(v)]);
                        }
                    }
                }
                return false;
            }
        }
        return true;
    }

    bool maintain_gac(int L, VarId x, ValueIndex a)
    {
        ds_.assign(x, a, L);
        auto res = gac_->propagate_from(x, ds_, explain());
        report_.checks += res.checks;
        if (!res.wipeout) {
            return true;
        }
        if (explain()) {
            res.wipeout_explanation.erase(L);
            res.wipeout_explanation.truncate_below(L);
            st_.levels[static_cast<std::size_t>(L)].conflicts.merge(res.wipeout_explanation);
        }
        ds_.restore(mark_[static_cast<std::size_t>(L)]);
        return false;
    }

    bool maintain_k(int L, VarId x, ValueIndex a)
    {
        detail::StrongKEngine eng(p_, cfg_.mc_level, val_of_, level_of_, false);
        const bool ok = eng.run();
        report_.checks += eng.checks();
        if (!ok) {
            if (explain()) {
                const std::uint64_t why = eng.empty_explanation() & ((std::uint64_t{1} << L) - 1);
                st_.levels[static_cast<std::size_t>(L)].conflicts.merge(std::span<const std::uint64_t>(&why, 1));
            }
            return false;
        }
        ds_.assign(x, a, L);
        apply_enforcement(eng);
        return true;
    }

    const Problem& p_;
    const SolverConfig& cfg_;
    int n_;
    DomainState ds_;
    std::optional<GacPropagator> gac_;
    SearchState st_;
    SearchReport report_;
    PartialSolution path_;
    std::vector<VarId> var_at_;
    std::vector<ValueIndex> next_value_;
    std::vector<std::size_t> mark_;
    std::vector<std::uint64_t> fingerprint_;
    std::vector<int> window_at_;
    std::vector<int> cur_node_;
    std::vector<ValueIndex> val_of_;
    std::vector<int> level_of_;
    std::vector<char> assigned_;
    std::vector<std::pair<int, int>> candidates_;
    std::vector<ValueIndex> values_;
    Clock::time_point start_;
};

} // namespace

SearchReport solve(const Problem& p, const SolverConfig& config)
{
    Engine engine(p, config);
    return engine.run();
}

} // namespace csplab
