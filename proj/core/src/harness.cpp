#include <csplab/error.hpp>
#include <csplab/harness.hpp>
#include <csplab/problem_io.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace csplab {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

PigeonholeVariant parse_variant(const std::string& s)
{
    if (s == "A" || s == "a") {
        return PigeonholeVariant::A;
    }
    if (s == "B" || s == "b") {
        return PigeonholeVariant::B;
    }
    throw ParseError("pigeon-hole variant must be A or B, got '" + s + "'");
}

GeneratorSpec parse_generator(const json& j, const std::filesystem::path& base)
{
    GeneratorSpec g;
    g.model = j.at("model").get<std::string>();
    if (g.model == "random") {
        g.random.n = j.at("n").get<int>();
        g.random.d = j.at("d").get<int>();
        g.random.r = j.value("r", 2);
        g.random.m = j.at("m").get<int>();
        g.random.t = j.at("t").get<std::uint64_t>();
        g.random.seed = j.value("seed", std::uint64_t{0});
    } else if (g.model == "pigeonhole") {
        g.pigeon_n = j.at("n").get<int>();
        g.pigeon_k = j.at("k").get<int>();
        g.variant = parse_variant(j.value("variant", std::string("A")));
    } else if (g.model == "crossword") {
        g.grid = resolve(base, j.at("grid").get<std::string>());
        g.dictionary = resolve(base, j.at("dictionary").get<std::string>());
    } else {
        throw ParseError("unknown generator model '" + g.model + "'");
    }
    return g;
}

std::string default_instance_id(const GeneratorSpec& g)
{
    if (g.model == "random") {
        const auto& r = g.random;
        return "random(" + std::to_string(r.n) + "," + std::to_string(r.d) + "," + std::to_string(r.r) + "," +
               std::to_string(r.m) + "," + std::to_string(r.t) + ")#" + std::to_string(r.seed);
    }
    if (g.model == "pigeonhole") {
        return "pigeonhole(" + std::to_string(g.pigeon_n) + "," + std::to_string(g.pigeon_k) + ")" +
               (g.variant == PigeonholeVariant::A ? "A" : "B");
    }
    return "crossword(" + g.grid.filename().string() + ")";
}

NamedConfig parse_config(const json& j)
{
    NamedConfig nc;
    if (j.contains("algorithm")) {
        nc.config = parse_algorithm_token(j.at("algorithm").get<std::string>());
    } else {
        parse_lookahead_token(j.value("lookahead", std::string("bc")), nc.config);
        parse_lookback_token(j.value("lookback", std::string("chrono")), nc.config);
    }
    nc.config.heuristic = parse_heuristic(j.value("heuristic", std::string("lex")));
    nc.config.mode = parse_mode(j.value("mode", std::string("first")));
    nc.id = j.value("id", nc.config.algorithm_token() + "@" + heuristic_name(nc.config.heuristic));
    return nc;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

std::string fixed(double v, int digits)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn)
{
    const auto workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (auto i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
}

struct RatioSample {
    std::string instance;
    std::string group;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
};

// Instances where both configs completed, in first-appearance order.
std::vector<RatioSample> paired_samples(const std::vector<ResultRow>& rows, const ReportOptions& options)
{
    if (options.config_a.empty() || options.config_b.empty()) {
        throw PreconditionError("ratio reports need both config ids");
    }
    const auto known = [&](const std::string& id) {
        return std::any_of(rows.begin(), rows.end(), [&](const ResultRow& r) { return r.config == id; });
    };
    for (const auto* id : {&options.config_a, &options.config_b}) {
        if (!known(*id)) {
            throw PreconditionError("no rows for config '" + *id + "'");
        }
    }
    std::map<std::string, const ResultRow*> a;
    std::map<std::string, const ResultRow*> b;
    std::vector<std::string> order;
    for (const auto& row : rows) {
        if (row.status != "COMPLETE") {
            continue;
        }
        if (row.config == options.config_a) {
            a[row.instance] = &row;
            order.push_back(row.instance);
        } else if (row.config == options.config_b) {
            b[row.instance] = &row;
        }
    }
    std::vector<RatioSample> out;
    for (const auto& id : order) {
        const auto it = b.find(id);
        if (it == b.end()) {
            continue;
        }
        RatioSample s{id, {}, a[id]->nodes, it->second->nodes};
        if (!options.group_by.empty()) {
            const auto p = a[id]->params.find(options.group_by);
            s.group = p == a[id]->params.end() ? "" : p->second;
        }
        out.push_back(std::move(s));
    }
    return out;
}

double node_ratio(std::uint64_t a, std::uint64_t b)
{
    if (b == 0) {
        return a == 0 ? 1.0 : HUGE_VAL;
    }
    return static_cast<double>(a) / static_cast<double>(b);
}

ordered_json row_to_json(const ResultRow& row)
{
    ordered_json j;
    j["instance"] = row.instance;
    j["config"] = row.config;
    j["status"] = row.status;
    j["solutions"] = row.solutions;
    j["nodes"] = row.nodes;
    j["checks"] = row.checks;
    auto& hist = j["backjump_histogram"] = ordered_json::object();
    for (const auto& [level, count] : row.backjump_histogram) {
        hist[std::to_string(level)] = count;
    }
    j["elapsed_ms"] = row.elapsed_ms;
    if (!row.error.empty()) {
        j["error"] = row.error;
    }
    if (!row.params.empty()) {
        j["params"] = row.params;
    }
    return j;
}

ordered_json value_to_json(const Value& v)
{
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return *i;
    }
    return std::get<std::string>(v);
}

ordered_json assignment_list(const Problem& p, const PartialSolution& t)
{
    auto arr = ordered_json::array();
    for (const auto& [var, value] : t) {
        arr.push_back({p.name(var), value_to_json(p.domain(var)[static_cast<std::size_t>(value)])});
    }
    return arr;
}

} // namespace

std::string search_report_to_json(const Problem& p, const SearchReport& report, int indent)
{
    ordered_json j;
    j["status"] = std::string(status_name(report.status));
    j["solutions"] = report.solutions;
    j["nodes"] = report.nodes;
    j["checks"] = report.checks;
    auto& hist = j["backjump_histogram"] = ordered_json::object();
    for (const auto& [level, count] : report.backjump_histogram) {
        hist[std::to_string(level)] = count;
    }
    j["elapsed_ms"] = report.elapsed_ms;
    if (!report.solution_list.empty()) {
        auto& list = j["solution_list"] = ordered_json::array();
        for (const auto& s : report.solution_list) {
            list.push_back(assignment_list(p, s));
        }
    }
    if (report.trace) {
        auto& trace = j["trace"] = ordered_json::array();
        for (const auto& node : *report.trace) {
            trace.push_back(assignment_list(p, node));
        }
    }
    return j.dump(indent);
}

RunSpec parse_run_spec(std::string_view json_text, const std::filesystem::path& base_dir)
{
    try {
        const auto doc = json::parse(json_text);
        RunSpec spec;
        for (const auto& ji : doc.at("instances")) {
            if (ji.contains("file")) {
                InstanceSource src;
                src.file = resolve(base_dir, ji.at("file").get<std::string>());
                src.id = ji.value("id", src.file->stem().string());
                spec.instances.push_back(std::move(src));
                continue;
            }
            const auto& jg = ji.at("generator");
            auto gen = parse_generator(jg, base_dir);
            std::vector<std::uint64_t> seeds;
            if (jg.contains("seeds")) {
                seeds = jg.at("seeds").get<std::vector<std::uint64_t>>();
            } else if (jg.contains("seed_count")) {
                const auto first = jg.value("seed", std::uint64_t{1});
                for (std::uint64_t i = 0; i < jg.at("seed_count").get<std::uint64_t>(); ++i) {
                    seeds.push_back(first + i);
                }
            }
            if (seeds.empty()) {
                InstanceSource src;
                src.id = ji.value("id", default_instance_id(gen));
                src.generator = gen;
                spec.instances.push_back(std::move(src));
            }
            for (auto seed : seeds) {
                InstanceSource src;
                gen.random.seed = seed;
                src.generator = gen;
                src.id = ji.contains("id") ? ji.at("id").get<std::string>() + "#" + std::to_string(seed)
                                           : default_instance_id(gen);
                spec.instances.push_back(std::move(src));
            }
        }
        for (const auto& jc : doc.at("configs")) {
            spec.configs.push_back(parse_config(jc));
        }
        spec.shared_order = doc.value("shared_order", false);
        if (doc.contains("order_file")) {
            spec.order_file = resolve(base_dir, doc.at("order_file").get<std::string>());
            spec.shared_order = true;
        }
        if (doc.contains("node_limit")) {
            spec.node_limit = doc.at("node_limit").is_null()
                                  ? std::nullopt
                                  : std::optional(doc.at("node_limit").get<std::uint64_t>());
        }
        if (doc.contains("time_limit")) {
            spec.time_limit_seconds =
                doc.at("time_limit").is_null() ? std::nullopt : std::optional(doc.at("time_limit").get<double>());
        }
        spec.trace = doc.value("trace", false);
        spec.threads = doc.value("threads", 1);
        spec.format = parse_report_format(doc.value("format", std::string("csv")));
        if (doc.contains("out")) {
            spec.out = resolve(base_dir, doc.at("out").get<std::string>());
        }
        spec.group_by = doc.value("group_by", std::string());
        spec.config_a = doc.value("config_a", std::string());
        spec.config_b = doc.value("config_b", std::string());
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("suite spec: ") + e.what());
    }
}

RunSpec load_run_spec(const std::filesystem::path& path)
{
    return parse_run_spec(read_text_file(path), path.parent_path());
}

std::uint64_t ResultRow::backjumps_total() const
{
    std::uint64_t total = 0;
    for (const auto& [level, count] : backjump_histogram) {
        total += count;
    }
    return total;
}

LoadedInstance load_instance(const InstanceSource& source)
{
    if (source.file) {
        auto p = load_problem(*source.file);
        std::vector<VarId> order(static_cast<std::size_t>(p.num_variables()));
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = static_cast<VarId>(i);
        }
        return {std::move(p), std::move(order), {}};
    }
    if (!source.generator) {
        throw PreconditionError("instance '" + source.id + "' has neither a file nor a generator");
    }
    const auto& g = *source.generator;
    std::map<std::string, std::string> params{{"model", g.model}};
    if (g.model == "random") {
        auto p = gen_random(g.random);
        const auto& r = g.random;
        params.insert({{"n", std::to_string(r.n)},
                       {"d", std::to_string(r.d)},
                       {"r", std::to_string(r.r)},
                       {"m", std::to_string(r.m)},
                       {"t", std::to_string(r.t)},
                       {"seed", std::to_string(r.seed)}});
        std::vector<VarId> order(static_cast<std::size_t>(p.num_variables()));
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = static_cast<VarId>(i);
        }
        return {std::move(p), std::move(order), std::move(params)};
    }
    if (g.model == "pigeonhole") {
        auto inst = gen_pigeonhole(g.pigeon_n, g.pigeon_k, g.variant);
        params.insert({{"n", std::to_string(g.pigeon_n)},
                       {"k", std::to_string(g.pigeon_k)},
                       {"variant", g.variant == PigeonholeVariant::A ? "A" : "B"}});
        return {std::move(inst.problem), std::move(inst.order), std::move(params)};
    }
    if (g.model == "crossword") {
        const auto grid = parse_grid(read_text_file(g.grid));
        const auto dict = parse_dictionary(read_text_file(g.dictionary));
        auto p = build_crossword(grid, dict.words);
        params.insert({{"grid", g.grid.filename().string()}, {"dictionary", g.dictionary.filename().string()}});
        std::vector<VarId> order(static_cast<std::size_t>(p.num_variables()));
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = static_cast<VarId>(i);
        }
        return {std::move(p), std::move(order), std::move(params)};
    }
    throw PreconditionError("unknown generator model '" + g.model + "'");
}

std::vector<ResultRow> run_suite(const RunSpec& spec)
{
    const auto ni = spec.instances.size();
    const auto nc = spec.configs.size();
    std::vector<std::optional<LoadedInstance>> instances(ni);
    std::vector<std::string> load_errors(ni);
    for (std::size_t i = 0; i < ni; ++i) {
        try {
            auto inst = load_instance(spec.instances[i]);
            if (spec.order_file) {
                inst.order = load_order(inst.problem, *spec.order_file);
            }
            instances[i] = std::move(inst);
        } catch (const std::exception& e) {
            load_errors[i] = e.what();
        }
    }

    std::vector<ResultRow> rows(ni * nc);
    parallel_for(rows.size(), spec.threads, [&](std::size_t idx) {
        const auto i = idx / nc;
        const auto c = idx % nc;
        auto& row = rows[idx];
        row.instance = spec.instances[i].id;
        row.config = spec.configs[c].id;
        if (!instances[i]) {
            row.status = "LOAD_ERROR";
            row.error = load_errors[i];
            return;
        }
        const auto& inst = *instances[i];
        row.params = inst.params;
        auto cfg = spec.configs[c].config;
        cfg.node_limit = spec.node_limit;
        cfg.time_limit_seconds = spec.time_limit_seconds;
        cfg.trace = spec.trace;
        if (spec.shared_order) {
            cfg.heuristic = HeuristicSpec::given(inst.order);
        } else if (cfg.heuristic.kind == HeuristicKind::Given && cfg.heuristic.order.empty()) {
            cfg.heuristic.order = inst.order;
        }
        try {
            auto report = solve(inst.problem, cfg);
            row.status = std::string(status_name(report.status));
            row.solutions = report.solutions;
            row.nodes = report.nodes;
            row.checks = report.checks;
            row.backjump_histogram = std::move(report.backjump_histogram);
            row.elapsed_ms = report.elapsed_ms;
            row.trace = std::move(report.trace);
        } catch (const std::exception& e) {
            row.status = "RUN_ERROR";
            row.error = e.what();
        }
    });
    return rows;
}

DominanceResult compare_traces(const SearchReport& a, const SearchReport& b)
{
    if (!a.trace || !b.trace) {
        throw PreconditionError("dominance comparison needs traced runs");
    }
    std::set<std::vector<Assignment>> visited_b;
    for (const auto& node : *b.trace) {
        visited_b.insert(node.as_set());
    }
    DominanceResult out;
    out.subset = true;
    out.nodes_a = a.nodes;
    out.nodes_b = b.nodes;
    for (const auto& node : *a.trace) {
        if (!visited_b.contains(node.as_set())) {
            out.subset = false;
            if (out.witnesses.size() < 10) {
                out.witnesses.push_back(node);
            }
        }
    }
    return out;
}

DominanceResult compare_dominance(const Problem& p, SolverConfig a, SolverConfig b, const std::vector<VarId>& order)
{
    validate_order(p, order);
    for (auto* cfg : {&a, &b}) {
        cfg->trace = true;
        cfg->heuristic = HeuristicSpec::given(order);
    }
    return compare_traces(solve(p, a), solve(p, b));
}

ReportFormat parse_report_format(std::string_view token)
{
    if (token == "csv") {
        return ReportFormat::Csv;
    }
    if (token == "json") {
        return ReportFormat::Json;
    }
    if (token == "ratio") {
        return ReportFormat::RatioTable;
    }
    if (token == "cumulative") {
        return ReportFormat::Cumulative;
    }
    throw ParseError("unknown report format '" + std::string(token) + "' (csv | json | ratio | cumulative)");
}

std::string format_report(const std::vector<ResultRow>& rows, const ReportOptions& options)
{
    if (rows.empty()) {
        throw PreconditionError("cannot report an empty result set");
    }
    std::ostringstream os;
    switch (options.format) {
    case ReportFormat::Csv:
        os << "instance,config,status,solutions,nodes,checks,backjumps_total,elapsed_ms\n";
        for (const auto& r : rows) {
            os << csv_field(r.instance) << ',' << csv_field(r.config) << ',' << r.status << ',' << r.solutions << ','
               << r.nodes << ',' << r.checks << ',' << r.backjumps_total() << ',' << fixed(r.elapsed_ms, 3) << '\n';
        }
        break;
    case ReportFormat::Json: {
        auto arr = ordered_json::array();
        for (const auto& r : rows) {
            arr.push_back(row_to_json(r));
        }
        os << arr.dump(1) << '\n';
        break;
    }
    case ReportFormat::RatioTable: {
        if (options.group_by.empty()) {
            throw PreconditionError("the ratio table needs a grouping parameter");
        }
        const auto samples = paired_samples(rows, options);
        std::vector<std::string> groups;
        std::map<std::string, std::pair<double, double>> sums;
        std::map<std::string, std::size_t> counts;
        for (const auto& s : samples) {
            if (!counts.contains(s.group)) {
                groups.push_back(s.group);
            }
            ++counts[s.group];
            sums[s.group].first += static_cast<double>(s.a);
            sums[s.group].second += static_cast<double>(s.b);
        }
        os << csv_field(options.group_by) << ',' << csv_field(options.config_a) << ','
           << csv_field(options.config_b) << ",ratio\n";
        for (const auto& g : groups) {
            const auto n = static_cast<double>(counts[g]);
            const auto mean_a = sums[g].first / n;
            const auto mean_b = sums[g].second / n;
            os << csv_field(g) << ',' << fixed(mean_a, 2) << ',' << fixed(mean_b, 2) << ','
               << fixed(mean_b == 0.0 ? (mean_a == 0.0 ? 1.0 : HUGE_VAL) : mean_a / mean_b, 4) << '\n';
        }
        break;
    }
    case ReportFormat::Cumulative: {
        auto samples = paired_samples(rows, options);
        std::vector<std::pair<double, std::string>> ratios;
        for (const auto& s : samples) {
            ratios.emplace_back(node_ratio(s.a, s.b), s.instance);
        }
        std::stable_sort(ratios.begin(), ratios.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });
        os << "rank,percentile,instance,ratio\n";
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            const auto pct = 100.0 * static_cast<double>(i + 1) / static_cast<double>(ratios.size());
            os << i + 1 << ',' << fixed(pct, 2) << ',' << csv_field(ratios[i].second) << ','
               << fixed(ratios[i].first, 6) << '\n';
        }
        break;
    }
    }
    return os.str();
}

void emit_report(const std::vector<ResultRow>& rows, const ReportOptions& options, const std::filesystem::path& path)
{
    write_text_file(path, format_report(rows, options));
}

CalibrationResult calibrate(const RandomModelParams& base, const CalibrationOptions& options)
{
    if (options.instances < 1) {
        throw ParameterError("calibration needs at least one instance");
    }
    std::uint64_t max_t = 1;
    for (int i = 0; i < base.r; ++i) {
        max_t *= static_cast<std::uint64_t>(std::max(base.d, 1));
    }
    // Validates n, d, r and m once.
    {
        auto probe = base;
        probe.t = max_t;
        (void)gen_random(probe);
    }

    SolverConfig cfg = parse_algorithm_token("gac/cbj");
    cfg.heuristic = HeuristicSpec::dom_div_deg();
    cfg.node_limit = options.node_limit;
    cfg.time_limit_seconds = options.time_limit_seconds;

    std::map<std::uint64_t, CalibrationPoint> cache;
    auto measure = [&](std::uint64_t t) -> const CalibrationPoint& {
        if (const auto it = cache.find(t); it != cache.end()) {
            return it->second;
        }
        const auto count = static_cast<std::size_t>(options.instances);
        std::vector<char> insoluble(count, 0);
        std::vector<char> unresolved(count, 0);
        parallel_for(count, options.threads, [&](std::size_t i) {
            auto params = base;
            params.t = t;
            params.seed = options.first_seed + i;
            const auto report = solve(gen_random(params), cfg);
            if (report.status != SearchStatus::Complete) {
                unresolved[i] = 1;
            } else if (report.solutions == 0) {
                insoluble[i] = 1;
            }
        });
        CalibrationPoint pt;
        pt.t = t;
        pt.insoluble_fraction = static_cast<double>(std::count(insoluble.begin(), insoluble.end(), 1)) /
                                static_cast<double>(count);
        pt.unresolved = static_cast<std::size_t>(std::count(unresolved.begin(), unresolved.end(), 1));
        return cache.emplace(t, pt).first->second;
    };

    // The insoluble fraction falls as t grows: find the smallest t at or
    // below the target, then pick the closer of it and its predecessor.
    std::uint64_t lo = 1;
    std::uint64_t hi = max_t;
    while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        if (measure(mid).insoluble_fraction <= options.target_insoluble) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    auto best = measure(lo);
    if (lo > 1) {
        const auto& prev = measure(lo - 1);
        if (std::abs(prev.insoluble_fraction - options.target_insoluble) <
            std::abs(best.insoluble_fraction - options.target_insoluble)) {
            best = prev;
        }
    }
    CalibrationResult out;
    out.t = best.t;
    out.insoluble_fraction = best.insoluble_fraction;
    for (const auto& [t, pt] : cache) {
        out.probes.push_back(pt);
    }
    return out;
}

} // namespace csplab
