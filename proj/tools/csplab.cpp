#include <csplab/advisor.hpp>
#include <csplab/error.hpp>
#include <csplab/generators.hpp>
#include <csplab/harness.hpp>
#include <csplab/problem_io.hpp>
#include <csplab/search.hpp>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <nlohmann/json.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace {

using namespace csplab;

constexpr int kExitUsage = 1;
constexpr int kExitRun = 2;

// Argument values that parse but do not make sense.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
    } else {
        write_text_file(path, text);
    }
}

std::vector<VarId> identity_order(const Problem& p)
{
    std::vector<VarId> order(static_cast<std::size_t>(p.num_variables()));
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<VarId>(i);
    }
    return order;
}

template <typename Fn>
auto as_usage(Fn fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const csplab::Error& e) {
        throw UsageError(e.what());
    }
}

struct GenerateArgs {
    std::string model;
    int n = 0;
    int d = 0;
    int r = 2;
    int m = 0;
    std::uint64_t t = 0;
    std::uint64_t seed = 1;
    int k = 0;
    std::string variant = "A";
    std::string grid;
    std::string dictionary;
    std::string out;
    std::string order_out;
};

int run_generate(const GenerateArgs& a)
{
    Problem p;
    std::optional<std::vector<VarId>> order;
    if (a.model == "random") {
        p = as_usage([&] { return gen_random({a.n, a.d, a.r, a.m, a.t, a.seed}); });
    } else if (a.model == "pigeonhole") {
        if (a.variant != "A" && a.variant != "B") {
            throw UsageError("--variant must be A or B");
        }
        auto inst = as_usage([&] {
            return gen_pigeonhole(a.n, a.k, a.variant == "A" ? PigeonholeVariant::A : PigeonholeVariant::B);
        });
        p = std::move(inst.problem);
        order = std::move(inst.order);
    } else {
        if (a.grid.empty() || a.dictionary.empty()) {
            throw UsageError("the crossword model needs --grid and --dictionary");
        }
        const auto grid = parse_grid(read_text_file(a.grid));
        const auto dict = parse_dictionary(read_text_file(a.dictionary));
        if (dict.dropped > 0) {
            std::cerr << "warning: dropped " << dict.dropped << " dictionary words not made of a-z only\n";
        }
        p = build_crossword(grid, dict.words);
    }
    write_output(problem_to_json(p, 1), a.out);
    if (!a.order_out.empty()) {
        write_text_file(a.order_out, order_to_text(p, order ? *order : identity_order(p)));
    }
    return 0;
}

struct SolveArgs {
    std::string instance;
    std::string lookahead = "bc";
    std::string lookback = "chrono";
    std::string heuristic = "lex";
    std::string order;
    std::string advisor_trace;
    std::string mode = "first";
    bool trace = false;
    bool solutions = false;
    std::uint64_t node_limit = 10'000'000;
    double time_limit = 60.0;
    std::string out;
    std::string cbj_trace_out;
};

int run_solve(const SolveArgs& a)
{
    SolverConfig cfg;
    // "given:<file>" and "advisor:<file>" carry their file inline.
    std::string heuristic = a.heuristic;
    std::string order_file = a.order;
    std::string advisor_file = a.advisor_trace;
    if (const auto colon = heuristic.find(':'); colon != std::string::npos) {
        const auto kind = heuristic.substr(0, colon);
        const auto file = heuristic.substr(colon + 1);
        if (kind == "given") {
            order_file = file;
        } else if (kind == "advisor") {
            advisor_file = file;
        } else {
            throw UsageError("only given:<file> and advisor:<file> take a file");
        }
        heuristic = kind;
    }
    as_usage([&] {
        parse_lookahead_token(a.lookahead, cfg);
        parse_lookback_token(a.lookback, cfg);
        cfg.mode = parse_mode(a.mode);
        if (heuristic != "advisor") {
            cfg.heuristic = parse_heuristic(heuristic);
        }
    });
    if (heuristic == "given" && order_file.empty()) {
        throw UsageError("--heuristic given needs an order file");
    }
    if (heuristic == "advisor" && advisor_file.empty()) {
        throw UsageError("--heuristic advisor needs a CBJ trace file");
    }
    if (!a.cbj_trace_out.empty() && (cfg.lookahead != LookaheadKind::BC || cfg.lookback != LookbackKind::CBJ)) {
        throw UsageError("--cbj-trace-out needs --lookahead bc --lookback cbj");
    }
    cfg.node_limit = a.node_limit == 0 ? std::nullopt : std::optional(a.node_limit);
    cfg.time_limit_seconds = a.time_limit <= 0.0 ? std::nullopt : std::optional(a.time_limit);
    cfg.trace = a.trace;
    cfg.keep_solutions = a.solutions;
    cfg.record_tree = !a.cbj_trace_out.empty();

    const auto p = load_problem(a.instance);
    if (heuristic == "given") {
        cfg.heuristic.order = load_order(p, order_file);
    } else if (heuristic == "advisor") {
        const auto trace = parse_cbj_trace(read_text_file(advisor_file));
        cfg.heuristic = HeuristicSpec::from_advisor(std::make_shared<PerfectAdvisor>(PerfectAdvisor::build(trace)));
    }
    const auto report = solve(p, cfg);
    write_output(search_report_to_json(p, report), a.out);
    if (report.tree) {
        write_text_file(a.cbj_trace_out, cbj_trace_to_json(*report.tree));
    }
    return 0;
}

struct CompareArgs {
    std::string instance;
    std::string config_a;
    std::string config_b;
    std::string order;
    std::string mode = "first";
    std::string out;
};

int run_compare(const CompareArgs& a)
{
    auto [ca, cb] = as_usage([&] {
        auto x = parse_algorithm_token(a.config_a);
        auto y = parse_algorithm_token(a.config_b);
        x.mode = y.mode = parse_mode(a.mode);
        return std::pair{x, y};
    });
    for (auto* cfg : {&ca, &cb}) {
        cfg->node_limit = std::nullopt;
        cfg->time_limit_seconds = std::nullopt;
    }
    const auto p = load_problem(a.instance);
    const auto order = a.order.empty() ? identity_order(p) : load_order(p, a.order);
    const auto result = compare_dominance(p, ca, cb, order);

    nlohmann::ordered_json j;
    j["config_a"] = a.config_a;
    j["config_b"] = a.config_b;
    j["subset"] = result.subset;
    j["nodes_a"] = result.nodes_a;
    j["nodes_b"] = result.nodes_b;
    auto& w = j["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& node : result.witnesses) {
        w.push_back(describe(p, node));
    }
    write_output(j.dump(1), a.out);
    return 0;
}

struct SuiteArgs {
    std::string spec;
    std::string out;
    std::string format;
    int threads = 0;
    std::string group_by;
    std::string config_a;
    std::string config_b;
};

int run_suite_command(const SuiteArgs& a)
{
    auto spec = load_run_spec(a.spec);
    if (!a.format.empty()) {
        spec.format = as_usage([&] { return parse_report_format(a.format); });
    }
    if (a.threads > 0) {
        spec.threads = a.threads;
    }
    for (auto [field, value] : {std::pair{&spec.group_by, &a.group_by}, {&spec.config_a, &a.config_a},
                                {&spec.config_b, &a.config_b}}) {
        if (!value->empty()) {
            *field = *value;
        }
    }
    const auto rows = run_suite(spec);
    const ReportOptions options{spec.format, spec.group_by, spec.config_a, spec.config_b};
    const auto text = format_report(rows, options);
    if (!a.out.empty()) {
        write_output(text, a.out);
    } else if (spec.out) {
        write_text_file(*spec.out, text);
    } else {
        std::cout << text;
    }
    return 0;
}

struct CalibrateArgs {
    std::string model_params;
    double target_sat = 0.5;
    int instances = 100;
    std::uint64_t seed = 1;
    int threads = 1;
    std::uint64_t node_limit = 10'000'000;
    double time_limit = 60.0;
    std::string out;
};

int run_calibrate(const CalibrateArgs& a)
{
    RandomModelParams base;
    {
        std::istringstream in(a.model_params);
        std::vector<int> v;
        std::string item;
        while (std::getline(in, item, ',')) {
            try {
                v.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw UsageError("--model-params expects n,d,r,m");
            }
        }
        if (v.size() != 4) {
            throw UsageError("--model-params expects n,d,r,m");
        }
        base.n = v[0];
        base.d = v[1];
        base.r = v[2];
        base.m = v[3];
    }
    if (a.target_sat < 0.0 || a.target_sat > 1.0) {
        throw UsageError("--target-sat must lie in [0, 1]");
    }
    CalibrationOptions options;
    options.target_insoluble = 1.0 - a.target_sat;
    options.instances = a.instances;
    options.first_seed = a.seed;
    options.threads = a.threads;
    options.node_limit = a.node_limit == 0 ? std::nullopt : std::optional(a.node_limit);
    options.time_limit_seconds = a.time_limit <= 0.0 ? std::nullopt : std::optional(a.time_limit);
    as_usage([&] {
        auto probe = base;
        probe.t = 1;
        (void)gen_random(probe);
    });
    const auto cal = calibrate(base, options);

    nlohmann::ordered_json j;
    j["n"] = base.n;
    j["d"] = base.d;
    j["r"] = base.r;
    j["m"] = base.m;
    j["t"] = cal.t;
    j["insoluble_fraction"] = cal.insoluble_fraction;
    auto& probes = j["probes"] = nlohmann::ordered_json::array();
    for (const auto& pt : cal.probes) {
        probes.push_back({{"t", pt.t}, {"insoluble_fraction", pt.insoluble_fraction}, {"unresolved", pt.unresolved}});
    }
    write_output(j.dump(1), a.out);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Constraint satisfaction solver laboratory"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate a problem instance");
    generate->add_option("--model", gen.model, "random | pigeonhole | crossword")
        ->required()
        ->check(CLI::IsMember({"random", "pigeonhole", "crossword"}));
    generate->add_option("--n", gen.n, "Variables (random) or holes of the larger pigeon-hole group");
    generate->add_option("--d", gen.d, "Domain size (random)");
    generate->add_option("--r", gen.r, "Constraint arity (random)");
    generate->add_option("--m", gen.m, "Number of constraints (random)");
    generate->add_option("--t", gen.t, "Allowed tuples per constraint (random)");
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--k", gen.k, "Holes of the smaller pigeon-hole group");
    generate->add_option("--variant", gen.variant, "Pigeon-hole variable order: A | B");
    generate->add_option("--grid", gen.grid, "Crossword grid file");
    generate->add_option("--dictionary", gen.dictionary, "Word list, one per line");
    generate->add_option("--out", gen.out, "Output file (default stdout)");
    generate->add_option("--order-out", gen.order_out, "Also write the instance's variable order");

    SolveArgs sol;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print an instrumented report");
    solve_cmd->add_option("--instance", sol.instance, "Problem JSON file")->required();
    solve_cmd->add_option("--lookahead", sol.lookahead, "bc | mc:<k> | gac");
    solve_cmd->add_option("--lookback", sol.lookback, "chrono | bj:<k> | cbj");
    solve_cmd->add_option("--heuristic", sol.heuristic, "lex | given[:<file>] | dom | dom+deg | dom/deg | advisor[:<trace>]");
    solve_cmd->add_option("--order", sol.order, "Variable order file for --heuristic given");
    solve_cmd->add_option("--advisor-trace", sol.advisor_trace, "CBJ trace file for --heuristic advisor");
    solve_cmd->add_option("--mode", sol.mode, "first | all | count");
    solve_cmd->add_flag("--trace", sol.trace, "Include every visited node in the report");
    solve_cmd->add_flag("--solutions", sol.solutions, "Include the solutions in the report");
    solve_cmd->add_option("--node-limit", sol.node_limit, "Node limit (0 = none)");
    solve_cmd->add_option("--time-limit", sol.time_limit, "Time limit in seconds (0 = none)");
    solve_cmd->add_option("--out", sol.out, "Report file (default stdout)");
    solve_cmd->add_option("--cbj-trace-out", sol.cbj_trace_out, "Write the search tree of a bc/cbj run");

    CompareArgs cmp;
    auto* compare = app.add_subcommand("compare", "Check trace inclusion of two algorithms");
    compare->add_option("--instance", cmp.instance, "Problem JSON file")->required();
    compare->add_option("--config-a", cmp.config_a, "Algorithm token, e.g. bc/cbj")->required();
    compare->add_option("--config-b", cmp.config_b, "Algorithm token, e.g. bc/chrono")->required();
    compare->add_option("--order", cmp.order, "Shared variable order (default: lexicographic)");
    compare->add_option("--mode", cmp.mode, "first | all");
    compare->add_option("--out", cmp.out, "Output file (default stdout)");

    SuiteArgs suite;
    auto* suite_cmd = app.add_subcommand("suite", "Run an instance x config matrix");
    suite_cmd->add_option("--spec", suite.spec, "Suite JSON file")->required();
    suite_cmd->add_option("--out", suite.out, "Report file (default: spec's out, else stdout)");
    suite_cmd->add_option("--format", suite.format, "csv | json | ratio | cumulative");
    suite_cmd->add_option("--threads", suite.threads, "Worker threads");
    suite_cmd->add_option("--group-by", suite.group_by, "Parameter for ratio tables");
    suite_cmd->add_option("--config-a", suite.config_a, "Numerator config id for ratio reports");
    suite_cmd->add_option("--config-b", suite.config_b, "Denominator config id for ratio reports");

    CalibrateArgs cal;
    auto* calibrate_cmd = app.add_subcommand("calibrate", "Find the phase-transition tightness of a random model");
    calibrate_cmd->add_option("--model-params", cal.model_params, "n,d,r,m")->required();
    calibrate_cmd->add_option("--target-sat", cal.target_sat, "Target fraction of soluble instances");
    calibrate_cmd->add_option("--instances", cal.instances, "Instances per probe");
    calibrate_cmd->add_option("--seed", cal.seed, "First seed");
    calibrate_cmd->add_option("--threads", cal.threads, "Worker threads");
    calibrate_cmd->add_option("--node-limit", cal.node_limit, "Node limit per run (0 = none)");
    calibrate_cmd->add_option("--time-limit", cal.time_limit, "Time limit per run in seconds (0 = none)");
    calibrate_cmd->add_option("--out", cal.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            return run_generate(gen);
        }
        if (solve_cmd->parsed()) {
            return run_solve(sol);
        }
        if (compare->parsed()) {
            return run_compare(cmp);
        }
        if (suite_cmd->parsed()) {
            return run_suite_command(suite);
        }
        return run_calibrate(cal);
    } catch (const UsageError& e) {
        std::cerr << "csplab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "csplab: " << e.what() << '\n';
        return kExitRun;
    }
}
