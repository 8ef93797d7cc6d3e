// tsplab: instance generation, single solves, benchmark campaigns, tuning
// races, gap tables and prompt rendering.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsplab/algorithms.hpp"
#include "tsplab/bench.hpp"
#include "tsplab/instance.hpp"
#include "tsplab/kernels.hpp"
#include "tsplab/refine.hpp"
#include "tsplab/tuner.hpp"

using nlohmann::json;
using namespace tsplab;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Bad flag values that CLI11 cannot see (unknown algorithm, variant...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integral costs print as JSON integers.
json number(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9007199254740992.0)
        return json(static_cast<std::int64_t>(v));
    return json(v);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

AlgorithmId algorithm_flag(const std::string& name) {
    const auto id = parse_algorithm(name);
    if (!id) throw UsageError("--algorithm: unknown algorithm '" + name + "'");
    return *id;
}

void variant_flag(AlgorithmId id, const std::string& variant) {
    if (!is_valid_variant(id, variant)) {
        std::string names;
        for (auto v : variants_of(id)) names += (names.empty() ? "" : "|") + std::string(v);
        throw UsageError("--variant: '" + variant + "' is not a variant of " + std::string(to_string(id)) +
                         " (" + names + ")");
    }
}

Rounding rounding_flag(const std::string& text) {
    try {
        return parse_rounding(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--rounding: ") + e.what());
    }
}

void log_config(const std::string& line) { std::cerr << "tsplab: " << line << '\n'; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tsplab: TSP solvers, benchmark harness, tuner and prompt tools", "tsplab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "tsplab 1.0");

    // gen
    auto* gen = app.add_subcommand("gen", "Write a seeded random EUC_2D instance in TSPLIB format");
    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "Number of cities")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output file (standard output when omitted)");

    // solve
    auto* solve = app.add_subcommand("solve", "Solve one instance and print the result as JSON");
    std::string s_instance, s_algorithm, s_variant = "baseline", s_preset, s_config, s_rounding = "none";
    std::uint64_t s_seed = 0;
    double s_scale = 1.0;
    std::optional<std::uint64_t> s_max_evals;
    solve->add_option("--instance", s_instance, "TSPLIB instance file")->required();
    solve->add_option("--algorithm", s_algorithm,
                      "aco|ga|alns|tabu|sa|qlearning|sarsa|christofides|convex_hull|bb")->required();
    solve->add_option("--variant", s_variant, "Algorithm variant")->capture_default_str();
    auto* preset_opt = solve->add_option("--preset", s_preset, "Preset column: original|claude|gemini|llama|o1|r1");
    auto* config_opt = solve->add_option("--config", s_config, "Parameter configuration file");
    preset_opt->excludes(config_opt);
    solve->add_option("--seed", s_seed, "Run seed")->capture_default_str();
    solve->add_option("--time-scale", s_scale, "Time limit is ceil(time-scale * n) seconds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    solve->add_option("--max-evaluations", s_max_evals, "Optional tour evaluation cap");
    solve->add_option("--rounding", s_rounding, "Distance rounding: none|tsplib_nint")->capture_default_str();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run an experiment plan");
    std::string b_plan, b_csv, b_json;
    std::optional<std::size_t> b_workers;
    bench_cmd->add_option("--plan", b_plan, "Experiment plan file")->required();
    bench_cmd->add_option("--out-csv", b_csv, "Write run records as CSV");
    bench_cmd->add_option("--out-json", b_json, "Write the JSON report");
    bench_cmd->add_option("--workers", b_workers, "Concurrent runs (overrides the plan)")->check(CLI::PositiveNumber);

    // tune
    auto* tune = app.add_subcommand("tune", "Race sampled configurations and print the winner as JSON");
    std::string t_algorithm, t_variant = "baseline", t_rounding = "none", t_out;
    std::vector<std::string> t_instances;
    RaceOptions t_opts;
    double t_scale = 1.0;
    std::optional<std::uint64_t> t_max_evals;
    tune->add_option("--algorithm", t_algorithm, "aco|ga|alns|tabu|sa|qlearning|sarsa")->required();
    tune->add_option("--variant", t_variant, "Algorithm variant")->capture_default_str();
    tune->add_option("--instances", t_instances, "Training instance files")->required();
    tune->add_option("--budget", t_opts.budget, "Total solver runs")->capture_default_str();
    tune->add_option("--candidates", t_opts.candidates, "Sampled configurations")->capture_default_str();
    tune->add_option("--min-rounds", t_opts.min_rounds, "Rounds before elimination starts")->capture_default_str();
    tune->add_option("--seed", t_opts.seed, "Race seed")->capture_default_str();
    tune->add_option("--workers", t_opts.workers, "Concurrent runs per round")->capture_default_str();
    tune->add_option("--time-scale", t_scale, "Per-run limit is ceil(time-scale * n) seconds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    tune->add_option("--max-evaluations", t_max_evals, "Optional tour evaluation cap per run");
    tune->add_option("--rounding", t_rounding, "Distance rounding: none|tsplib_nint")->capture_default_str();
    tune->add_option("--out", t_out, "Also write the winning configuration file");

    // gap
    auto* gap = app.add_subcommand("gap", "Print the gap table of a run CSV");
    std::string g_csv, g_baseline = "baseline";
    gap->add_option("--csv", g_csv, "Run records CSV")->required();
    gap->add_option("--baseline-variant", g_baseline, "Variant used as the baseline")->capture_default_str();

    // render-prompt
    auto* render = app.add_subcommand("render-prompt", "Render the refinement prompt");
    std::string r_template, r_name, r_signature, r_code;
    render->add_option("--template", r_template, "Template file (built-in template when omitted)");
    render->add_option("--name", r_name, "Algorithm name")->required();
    render->add_option("--signature", r_signature, "Main function signature")->required();
    render->add_option("--code-file", r_code, "File holding the algorithm code")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            log_config("gen n=" + std::to_string(gen_n) + " seed=" + std::to_string(gen_seed));
            const Instance inst = generate_random_instance(gen_n, gen_seed);
            if (gen_out.empty()) {
                std::cout << render_instance(inst);
            } else {
                save_instance(inst, gen_out);
            }
            return 0;
        }

        if (solve->parsed()) {
            const AlgorithmId id = algorithm_flag(s_algorithm);
            variant_flag(id, s_variant);
            const Rounding rounding = rounding_flag(s_rounding);

            std::optional<ParamConfig> config;
            if (is_stochastic(id)) {
                if (!s_config.empty()) {
                    config = parse_config(read_text(s_config));
                    if (config->algorithm != id)
                        throw UsageError("--config: file configures " + std::string(to_string(config->algorithm)));
                } else {
                    PresetColumn column = PresetColumn::Original;
                    if (!s_preset.empty()) {
                        try {
                            column = parse_column(s_preset);
                        } catch (const TunerError& e) {
                            throw UsageError(std::string("--preset: ") + e.what());
                        }
                    }
                    config = preset(id, column);
                }
            } else if (!s_preset.empty() || !s_config.empty()) {
                throw UsageError(std::string(to_string(id)) + " takes no --preset or --config");
            }

            const Instance inst = load_instance(s_instance);
            const DistanceMatrix d = build_distance_matrix(inst, rounding);
            const double limit = bench::time_limit_for(inst.dimension, s_scale);
            SolveBudget budget{limit, s_max_evals};

            log_config("solve instance=" + inst.name + " algorithm=" + std::string(to_string(id)) +
                       " variant=" + s_variant + " config=" + (config ? config->id() : "-") +
                       " seed=" + std::to_string(s_seed) + " time_scale=" + fmt(s_scale) + " time_limit_s=" +
                       fmt(limit) + " rounding=" + std::string(to_string(rounding)) +
                       " isa=" + std::string(kernels::isa_name(kernels::active_isa())));

            const RunOutcome out =
                run_algorithm(id, s_variant, config ? &*config : nullptr, inst, d, budget, s_seed);
            const TourVerdict verdict = validate_tour(out.tour.order, d.size());
            if (!verdict.valid()) throw std::runtime_error("solver returned an invalid tour: " + verdict.describe());

            json j;
            j["instance"] = inst.name;
            j["n"] = inst.dimension;
            j["algorithm"] = std::string(to_string(id));
            j["variant"] = s_variant;
            j["config_id"] = config ? config->id() : "-";
            if (config) {
                json values;
                for (const auto& [k, v] : config->values) values[k] = number(v);
                j["config"] = values;
            }
            j["seed"] = s_seed;
            j["best_cost"] = number(tour_length(out.tour, d));
            j["tour"] = out.tour.order;
            j["evaluations"] = out.evaluations;
            j["elapsed_s"] = out.elapsed_s;
            j["time_limit_s"] = number(limit);
            if (id == AlgorithmId::BranchAndBound) {
                j["nodes_expanded"] = out.nodes_expanded;
                j["proven_optimal"] = !out.capped;
            }
            j["trajectory"] = json::array();
            for (const auto& p : out.detail.trajectory)
                j["trajectory"].push_back({{"elapsed_s", p.elapsed_s}, {"cost", number(p.cost)}});
            if (out.detail.greedy_rollout_cost) j["greedy_rollout_cost"] = number(*out.detail.greedy_rollout_cost);
            std::cout << j.dump(2) << '\n';
            return 0;
        }

        if (bench_cmd->parsed()) {
            bench::ExperimentPlan plan = bench::load_plan(b_plan);
            if (b_workers) plan.workers = *b_workers;
            log_config("bench plan=" + plan.name + " base_seed=" + std::to_string(plan.base_seed) +
                       " time_scale=" + fmt(plan.time_scale) + " rounding=" + std::string(to_string(plan.rounding)) +
                       " repetitions=" + std::to_string(plan.repetitions) +
                       " workers=" + std::to_string(plan.workers) +
                       " runs=" + std::to_string(bench::expected_record_count(plan)));
            const auto records = bench::run_experiment(plan);
            std::size_t failed = 0;
            for (const auto& r : records) {
                if (r.status != bench::RunStatus::Failed) continue;
                ++failed;
                std::cerr << "tsplab: failed " << r.algorithm << '/' << r.variant << " on " << r.instance << " rep "
                          << r.rep << ": " << r.message << '\n';
            }
            if (!b_csv.empty()) write_text(b_csv, bench::render_csv(records));
            const std::string report = bench::render_report(plan, records);
            if (!b_json.empty()) {
                write_text(b_json, report);
            } else {
                std::cout << report;
            }
            log_config(std::to_string(records.size()) + " runs, " + std::to_string(failed) + " failed");
            return 0;
        }

        if (tune->parsed()) {
            const AlgorithmId id = algorithm_flag(t_algorithm);
            if (!is_stochastic(id)) throw UsageError("--algorithm: " + t_algorithm + " has no parameters to tune");
            variant_flag(id, t_variant);
            const Rounding rounding = rounding_flag(t_rounding);
            std::vector<Instance> instances;
            for (const auto& path : t_instances) instances.push_back(load_instance(path));
            log_config("tune algorithm=" + std::string(to_string(id)) + " variant=" + t_variant +
                       " seed=" + std::to_string(t_opts.seed) + " budget=" + std::to_string(t_opts.budget) +
                       " candidates=" + std::to_string(t_opts.candidates) + " time_scale=" + fmt(t_scale) +
                       " rounding=" + std::string(to_string(rounding)));
            const RaceReport report = race_algorithm(id, t_variant, instances, t_opts, t_scale, t_max_evals, rounding);

            json j;
            j["algorithm"] = std::string(to_string(id));
            j["variant"] = t_variant;
            j["config_id"] = report.winner.id();
            json values;
            for (const auto& [k, v] : report.winner.values) values[k] = number(v);
            j["config"] = values;
            j["runs_used"] = report.runs_used;
            j["rounds"] = report.rounds.size();
            j["survivors"] = report.rounds.empty() ? t_opts.candidates : report.rounds.back().survivors_after.size();
            std::cout << j.dump(2) << '\n';
            if (!t_out.empty()) write_text(t_out, render_config(report.winner));
            return 0;
        }

        if (gap->parsed()) {
            log_config("gap csv=" + g_csv + " baseline_variant=" + g_baseline);
            const auto records = bench::parse_csv(read_text(g_csv));
            std::cout << bench::render_gap_table(bench::gap_table(records, g_baseline));
            return 0;
        }

        if (render->parsed()) {
            refine::PromptTemplate t = r_template.empty() ? refine::PromptTemplate::default_template()
                                                          : refine::PromptTemplate{read_text(r_template)};
            log_config("render-prompt name=" + r_name + " template=" + (r_template.empty() ? "built-in" : r_template));
            refine::RefinementRequest req{r_name, r_signature, read_text(r_code)};
            std::cout << refine::render_prompt(t, req);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "tsplab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "tsplab: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
