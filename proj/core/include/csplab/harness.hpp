#pragma once

#include <csplab/generators.hpp>
#include <csplab/search.hpp>
#include <csplab/solver_config.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csplab {

/// A generated instance: model "random", "pigeonhole" or "crossword".
struct GeneratorSpec {
    std::string model;
    RandomModelParams random;
    int pigeon_n = 0;
    int pigeon_k = 0;
    PigeonholeVariant variant = PigeonholeVariant::A;
    std::filesystem::path grid;
    std::filesystem::path dictionary;
};

struct InstanceSource {
    std::string id;
    std::optional<std::filesystem::path> file;
    std::optional<GeneratorSpec> generator;
};

struct NamedConfig {
    std::string id;
    SolverConfig config;
};

enum class ReportFormat {
    Csv,
    Json,
    RatioTable,
    Cumulative,
};

struct RunSpec {
    std::vector<InstanceSource> instances;
    std::vector<NamedConfig> configs;
    /// Every config runs under one GIVEN order per instance: `order_file` if
    /// set, else the generator's order (pigeon-hole), else lexicographic.
    bool shared_order = false;
    std::optional<std::filesystem::path> order_file;
    std::optional<std::uint64_t> node_limit = 10'000'000;
    std::optional<double> time_limit_seconds = 60.0;
    bool trace = false;
    int threads = 1;
    ReportFormat format = ReportFormat::Csv;
    std::optional<std::filesystem::path> out;
    /// Ratio-table and cumulative reports.
    std::string group_by;
    std::string config_a;
    std::string config_b;
};

/// Reads a suite description. Relative paths resolve against `base_dir`.
/// Generator entries may carry "seeds": [..] or "seed_count" to expand into
/// one instance per seed. Throws ParseError.
RunSpec parse_run_spec(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunSpec load_run_spec(const std::filesystem::path& path);

struct ResultRow {
    std::string instance;
    std::string config;
    /// COMPLETE, NODE_LIMIT, TIME_LIMIT, LOAD_ERROR or RUN_ERROR.
    std::string status;
    std::uint64_t solutions = 0;
    std::uint64_t nodes = 0;
    std::uint64_t checks = 0;
    std::map<int, std::uint64_t> backjump_histogram;
    double elapsed_ms = 0.0;
    std::string error;
    /// Generator parameters (grouping key for ratio tables).
    std::map<std::string, std::string> params;
    std::optional<std::vector<PartialSolution>> trace;

    [[nodiscard]] std::uint64_t backjumps_total() const;
};

struct LoadedInstance {
    Problem problem;
    std::vector<VarId> order;
    std::map<std::string, std::string> params;
};

/// Builds or reads one instance. Throws on failure.
LoadedInstance load_instance(const InstanceSource& source);

/// One row per (instance, config) in spec order; failures become rows.
std::vector<ResultRow> run_suite(const RunSpec& spec);

struct DominanceResult {
    bool subset = false;
    std::uint64_t nodes_a = 0;
    std::uint64_t nodes_b = 0;
    /// Up to ten nodes visited by A but not by B.
    std::vector<PartialSolution> witnesses;
};

/// Node-set inclusion trace(A) ⊆ trace(B); nodes compare as sets of
/// assignments. Throws PreconditionError when a report has no trace.
DominanceResult compare_traces(const SearchReport& a, const SearchReport& b);

/// Runs both configs traced under the same GIVEN order and compares them.
DominanceResult compare_dominance(const Problem& p, SolverConfig a, SolverConfig b, const std::vector<VarId>& order);

struct ReportOptions {
    ReportFormat format = ReportFormat::Csv;
    std::string group_by;
    std::string config_a;
    std::string config_b;
};

/// CSV columns: instance,config,status,solutions,nodes,checks,
/// backjumps_total,elapsed_ms. The ratio table lists, per value of
/// `group_by`, the mean node counts of A and B and their ratio A/B over
/// instances both completed. The cumulative report lists per-instance
/// ratios A/B ascending. Throws PreconditionError on an empty row list.
std::string format_report(const std::vector<ResultRow>& rows, const ReportOptions& options);
/// Writes format_report to `path`; throws IoError.
void emit_report(const std::vector<ResultRow>& rows, const ReportOptions& options, const std::filesystem::path& path);

ReportFormat parse_report_format(std::string_view token);

/// {status, solutions, nodes, checks, backjump_histogram, elapsed_ms} plus
/// "solution_list" and "trace" when the run kept them. Assignments render as
/// [name, value] pairs in instantiation order.
std::string search_report_to_json(const Problem& p, const SearchReport& report, int indent = 1);

struct CalibrationPoint {
    std::uint64_t t = 0;
    double insoluble_fraction = 0.0;
    std::size_t unresolved = 0;
};

struct CalibrationResult {
    std::uint64_t t = 0;
    double insoluble_fraction = 0.0;
    std::vector<CalibrationPoint> probes;
};

struct CalibrationOptions {
    double target_insoluble = 0.5;
    int instances = 100;
    std::uint64_t first_seed = 1;
    std::optional<std::uint64_t> node_limit = 10'000'000;
    std::optional<double> time_limit_seconds = 60.0;
    int threads = 1;
};

/// Bisects the tightness t of the random model (n, d, r, m) so that the
/// fraction of insoluble instances among seeds first_seed.. is closest to the
/// target, solving with GAC-CBJ and dom/deg. The `t` and `seed` fields of
/// `base` are ignored. Runs that hit a limit count as soluble and are
/// reported as unresolved.
CalibrationResult calibrate(const RandomModelParams& base, const CalibrationOptions& options);

} // namespace csplab
