#include "oracles.hpp"

#include <csplab/error.hpp>
#include <csplab/generators.hpp>
#include <csplab/harness.hpp>
#include <csplab/problem_io.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace csplab;

namespace {

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::vector<VarId> identity(int n)
{
    std::vector<VarId> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        order[static_cast<std::size_t>(i)] = i;
    }
    return order;
}

SolverConfig config(std::string_view token)
{
    auto cfg = parse_algorithm_token(token);
    cfg.node_limit.reset();
    cfg.time_limit_seconds.reset();
    return cfg;
}

constexpr const char* kSmallSuite = R"({
  "instances": [{"generator": {"model": "random", "n": 6, "d": 3, "m": 8, "t": 5, "seed": 3}}],
  "configs": [{"algorithm": "bc/chrono"}, {"algorithm": "gac/cbj", "heuristic": "dom/deg", "mode": "count"}]
})";

} // namespace

TEST(RunSuite, OneRowPerInstanceAndConfig)
{
    const auto spec = parse_run_spec(kSmallSuite);
    ASSERT_EQ(spec.instances.size(), 1U);
    ASSERT_EQ(spec.configs.size(), 2U);
    EXPECT_EQ(spec.configs[0].id, "bc/chrono@lex");
    EXPECT_EQ(spec.configs[1].id, "gac/cbj@dom/deg");
    const auto rows = run_suite(spec);
    ASSERT_EQ(rows.size(), 2U);
    EXPECT_EQ(rows[0].config, "bc/chrono@lex");
    EXPECT_EQ(rows[1].status, "COMPLETE");
    const auto p = gen_random({6, 3, 2, 8, 5, 3});
    EXPECT_EQ(rows[1].solutions, oracle::count_solutions(p));
    EXPECT_EQ(rows[0].params.at("t"), "5");
}

TEST(RunSuite, LoadFailuresBecomeRows)
{
    RunSpec spec;
    InstanceSource missing;
    missing.id = "missing";
    missing.file = "/nonexistent/problem.json";
    spec.instances.push_back(missing);
    spec.configs.push_back({"bt", config("bc/chrono")});
    const auto rows = run_suite(spec);
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_EQ(rows[0].status, "LOAD_ERROR");
    EXPECT_FALSE(rows[0].error.empty());
}

TEST(RunSuite, DeterministicApartFromTiming)
{
    auto spec = parse_run_spec(kSmallSuite);
    spec.threads = 3;
    const auto a = run_suite(spec);
    const auto b = run_suite(spec);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].instance, b[i].instance);
        EXPECT_EQ(a[i].nodes, b[i].nodes);
        EXPECT_EQ(a[i].checks, b[i].checks);
        EXPECT_EQ(a[i].backjump_histogram, b[i].backjump_histogram);
    }
}

TEST(RunSuite, SeedExpansionAndSharedOrder)
{
    const auto spec = parse_run_spec(R"({
      "instances": [
        {"id": "r", "generator": {"model": "random", "n": 5, "d": 2, "m": 4, "t": 3, "seed": 10, "seed_count": 3}},
        {"generator": {"model": "random", "n": 5, "d": 2, "m": 4, "t": 3, "seeds": [7, 9]}},
        {"generator": {"model": "pigeonhole", "n": 3, "k": 1, "variant": "B"}}
      ],
      "configs": [{"lookahead": "mc:2", "lookback": "bj:1", "id": "mc2bj1"}],
      "shared_order": true,
      "node_limit": null
    })");
    ASSERT_EQ(spec.instances.size(), 6U);
    EXPECT_EQ(spec.instances[0].id, "r#10");
    EXPECT_EQ(spec.instances[2].id, "r#12");
    EXPECT_EQ(spec.instances[4].generator->random.seed, 9U);
    EXPECT_FALSE(spec.node_limit.has_value());
    EXPECT_TRUE(spec.shared_order);
    const auto rows = run_suite(spec);
    ASSERT_EQ(rows.size(), 6U);
    EXPECT_EQ(rows[5].status, "COMPLETE");
    EXPECT_EQ(rows[5].solutions, 0U);
    EXPECT_THROW((void)parse_run_spec(R"({"instances": []})"), ParseError);
    EXPECT_THROW((void)parse_run_spec(R"({"instances": [], "configs": [{"algorithm": "xx/yy"}]})"), ParseError);
}

TEST(Report, CsvLayout)
{
    const auto rows = run_suite(parse_run_spec(kSmallSuite));
    const auto csv = lines(format_report(rows, {}));
    ASSERT_EQ(csv.size(), 3U);
    EXPECT_EQ(csv[0], "instance,config,status,solutions,nodes,checks,backjumps_total,elapsed_ms");
    // The instance id contains commas, so it is quoted.
    EXPECT_EQ(csv[1].rfind("\"random(6,3,2,8,5)#3\",bc/chrono@lex,COMPLETE,", 0), 0U);
    EXPECT_THROW((void)format_report({}, {}), PreconditionError);
}

TEST(Report, JsonHasOneObjectPerRow)
{
    const auto rows = run_suite(parse_run_spec(kSmallSuite));
    ReportOptions opts;
    opts.format = ReportFormat::Json;
    const auto text = format_report(rows, opts);
    EXPECT_NE(text.find("\"backjump_histogram\""), std::string::npos);
    EXPECT_NE(text.find("\"gac/cbj@dom/deg\""), std::string::npos);
}

TEST(Report, RatioTableAndCumulative)
{
    const auto spec = parse_run_spec(R"({
      "instances": [
        {"generator": {"model": "random", "n": 8, "d": 3, "m": 14, "t": 4, "seed_count": 6}},
        {"generator": {"model": "random", "n": 8, "d": 3, "m": 14, "t": 6, "seed_count": 6}}
      ],
      "configs": [{"algorithm": "bc/cbj", "id": "cbj"}, {"algorithm": "bc/chrono", "id": "bt"}]
    })");
    const auto rows = run_suite(spec);
    ReportOptions ratio{ReportFormat::RatioTable, "t", "cbj", "bt"};
    const auto table = lines(format_report(rows, ratio));
    ASSERT_EQ(table.size(), 3U);
    EXPECT_EQ(table[0], "t,cbj,bt,ratio");
    EXPECT_EQ(table[1].rfind("4,", 0), 0U);
    EXPECT_EQ(table[2].rfind("6,", 0), 0U);

    ReportOptions cumulative{ReportFormat::Cumulative, "", "cbj", "bt"};
    const auto cum = lines(format_report(rows, cumulative));
    ASSERT_EQ(cum.size(), 13U);
    EXPECT_EQ(cum[0], "rank,percentile,instance,ratio");
    double prev = 0.0;
    for (std::size_t i = 1; i < cum.size(); ++i) {
        const double r = std::stod(cum[i].substr(cum[i].rfind(',') + 1));
        EXPECT_GE(r, prev);
        EXPECT_LE(r, 1.0);
        prev = r;
    }
    EXPECT_NE(cum.back().find(",100.00,"), std::string::npos);
    ReportOptions unknown{ReportFormat::RatioTable, "t", "cbj", "nope"};
    EXPECT_THROW((void)format_report(rows, unknown), PreconditionError);
}

TEST(Report, EmitFailsOnUnwritablePath)
{
    const auto rows = run_suite(parse_run_spec(kSmallSuite));
    EXPECT_THROW(emit_report(rows, {}, "/nonexistent/dir/out.csv"), IoError);
    const auto path = std::filesystem::temp_directory_path() / "csplab_report_test.csv";
    emit_report(rows, {}, path);
    EXPECT_EQ(read_text_file(path), format_report(rows, {}));
    std::filesystem::remove(path);
}

TEST(Report, ParseFormat)
{
    EXPECT_EQ(parse_report_format("cumulative"), ReportFormat::Cumulative);
    EXPECT_THROW((void)parse_report_format("xml"), ParseError);
}

TEST(CompareDominance, ReflexiveAndCbjInsideBacktracking)
{
    const auto p = oracle::small_random(12, 8, 3, 12);
    const auto order = identity(p.num_variables());
    const auto self = compare_dominance(p, config("bc/cbj"), config("bc/cbj"), order);
    EXPECT_TRUE(self.subset);
    EXPECT_EQ(self.nodes_a, self.nodes_b);
    const auto d = compare_dominance(p, config("bc/cbj"), config("bc/chrono"), order);
    EXPECT_TRUE(d.subset);
    EXPECT_TRUE(d.witnesses.empty());
    // The reverse direction reports what CBJ skipped.
    const auto rev = compare_dominance(p, config("bc/chrono"), config("bc/cbj"), order);
    EXPECT_EQ(rev.subset, d.nodes_a == d.nodes_b);
    EXPECT_LE(rev.witnesses.size(), 10U);
}

TEST(CompareDominance, PigeonholeSeparations)
{
    const auto b = gen_pigeonhole(5, 2, PigeonholeVariant::B);
    const auto rb = compare_dominance(b.problem, config("bc/cbj"), config("mc:2/chrono"), b.order);
    EXPECT_FALSE(rb.subset);
    EXPECT_FALSE(rb.witnesses.empty());

    const auto a = gen_pigeonhole(6, 2, PigeonholeVariant::A);
    const auto ra = compare_dominance(a.problem, config("bc/cbj"), config("mc:2/chrono"), a.order);
    EXPECT_LT(ra.nodes_a * 10, ra.nodes_b);
}

TEST(CompareTraces, NeedsTraces)
{
    const auto r = solve(oracle::coloring(), config("bc/chrono"));
    EXPECT_THROW((void)compare_traces(r, r), PreconditionError);
}

TEST(SearchReportJson, RendersNamesAndValues)
{
    const auto p = oracle::coloring();
    auto cfg = config("bc/cbj");
    cfg.keep_solutions = true;
    cfg.trace = true;
    const auto text = search_report_to_json(p, solve(p, cfg), -1);
    EXPECT_EQ(text.rfind("{\"status\":\"COMPLETE\"", 0), 0U);
    EXPECT_NE(text.find("[\"x4\",\"r\"]"), std::string::npos);
    EXPECT_NE(text.find("\"trace\""), std::string::npos);
}

TEST(Calibrate, FindsATightnessNearTheTarget)
{
    CalibrationOptions opts;
    opts.target_insoluble = 0.5;
    opts.instances = 20;
    const auto r = calibrate({10, 4, 2, 20, 0, 0}, opts);
    EXPECT_GE(r.t, 1U);
    EXPECT_LE(r.t, 16U);
    EXPECT_FALSE(r.probes.empty());
    CalibrationPoint at_t;
    for (const auto& pt : r.probes) {
        if (pt.t == r.t) {
            at_t = pt;
        }
    }
    EXPECT_EQ(at_t.insoluble_fraction, r.insoluble_fraction);
    opts.instances = 0;
    EXPECT_THROW((void)calibrate({10, 4, 2, 20, 0, 0}, opts), ParameterError);
}
