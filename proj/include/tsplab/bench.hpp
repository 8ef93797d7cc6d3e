#pragma once

// Benchmark campaigns: seeded repeated runs with size-proportional time
// limits, re-validated run records, CSV/JSON emission and summary
// statistics.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsplab/algorithms.hpp"
#include "tsplab/instance.hpp"
#include "tsplab/tuner.hpp"

namespace tsplab::bench {

/// ceil(time_scale * n) seconds, never below one second.
double time_limit_for(std::size_t n, double time_scale);

struct InstanceSource {
    enum class Kind { File, Random } kind = Kind::File;
    std::filesystem::path path;  ///< File
    std::size_t n = 0;           ///< Random
    std::uint64_t seed = 0;      ///< Random

    Instance load() const;
    std::string describe() const;
};

struct RunSpec {
    AlgorithmId algorithm = AlgorithmId::Aco;
    std::string variant = "baseline";
    /// Present for the stochastic algorithms.
    std::optional<ParamConfig> config;

    std::string config_id() const { return config ? config->id() : "-"; }
};

enum class Metric { BestCost, Runtime };

std::string_view to_string(Metric m) noexcept;

struct ExperimentPlan {
    std::string name = "experiment";
    std::vector<InstanceSource> instances;
    std::vector<RunSpec> runs;
    std::size_t repetitions = 1;
    std::uint64_t base_seed = 0;
    double time_scale = 1.0;
    Metric metric = Metric::BestCost;
    Rounding rounding = Rounding::None;
    /// Optional evaluation cap added to every stochastic run.
    std::optional<std::uint64_t> max_evaluations;
    std::size_t workers = 1;
};

class PlanError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses the plain-text plan format (see docs/plan-format.md). Relative
/// paths, both instance files and `@config` files, resolve against
/// `base_dir`.
ExperimentPlan parse_plan(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentPlan load_plan(const std::filesystem::path& path);
std::string render_plan(const ExperimentPlan& plan);

enum class RunStatus { Ok, TimeoutWithResult, Failed };

std::string_view to_string(RunStatus s) noexcept;

struct RunRecord {
    std::string algorithm;
    std::string variant;
    std::string config_id;
    std::string instance;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t rep = 0;
    double best_cost = 0.0;  ///< NaN for failed rows
    double elapsed_s = 0.0;
    std::uint64_t evaluations = 0;
    std::optional<std::uint64_t> nodes_expanded;  ///< exact search only
    RunStatus status = RunStatus::Ok;
    std::string message;  ///< failure reason, not serialized to CSV
};

/// stable_hash(base_seed, algorithm, variant, instance, rep)
std::uint64_t run_seed(std::uint64_t base_seed, std::string_view algorithm, std::string_view variant,
                       std::string_view instance, std::size_t rep);

/// Expands and executes the plan. Stochastic algorithms get `repetitions`
/// runs per instance, deterministic ones exactly one. Records come back in
/// canonical order (algorithm, variant, config, instance, rep).
std::vector<RunRecord> run_experiment(const ExperimentPlan& plan);

/// Number of rows run_experiment will produce.
std::size_t expected_record_count(const ExperimentPlan& plan);

inline constexpr std::string_view kCsvHeader =
    "algorithm,variant,config_id,instance,n,seed,rep,best_cost,elapsed_s,evaluations,nodes_expanded,status";

std::string render_csv(const std::vector<RunRecord>& records);
/// Throws PlanError on a bad header or malformed row.
std::vector<RunRecord> parse_csv(std::string_view text);

class ZeroBaseline : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// 100 * (baseline - variant) / baseline; positive when the variant is better.
double compute_gap(double baseline_cost, double variant_cost);

struct SummaryStats {
    std::string algorithm;
    std::string variant;
    std::string config_id;
    std::string instance;
    Metric metric = Metric::BestCost;
    std::size_t count = 0;   ///< rows with a result
    std::size_t failed = 0;
    bool not_available = false;  ///< every row failed
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0, stddev = 0;
};

/// Order statistics by the midpoint convention: the median of an even
/// count averages the middle two, q1/q3 are the medians of the lower and
/// upper halves (the middle element excluded for odd counts). stddev is
/// the sample standard deviation. Branch and bound groups use runtime;
/// every other group uses `metric`.
std::vector<SummaryStats> summarize(const std::vector<RunRecord>& records, Metric metric = Metric::BestCost);

struct GapRow {
    std::string algorithm;
    std::string instance;
    std::string variant;
    std::string config_id;
    double baseline_median = 0.0;
    double variant_median = 0.0;
    double gap_percent = 0.0;
};

/// Median best_cost of every (variant, config) against the pooled median of
/// the rows whose variant is `baseline_variant`, per (algorithm, instance).
std::vector<GapRow> gap_table(const std::vector<RunRecord>& records, std::string_view baseline_variant = "baseline");
std::string render_gap_table(const std::vector<GapRow>& rows);

/// JSON report: plan echo, summary statistics and gap table, `schema: 1`.
std::string render_report(const ExperimentPlan& plan, const std::vector<RunRecord>& records);

}  // namespace tsplab::bench
