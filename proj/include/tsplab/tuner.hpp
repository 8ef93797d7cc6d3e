#pragma once

// Parameter spaces, tuned presets and a racing configurator.

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsplab/algorithms.hpp"
#include "tsplab/meta.hpp"
#include "tsplab/rl.hpp"

namespace tsplab {

struct ParamDef {
    std::string name;
    enum class Kind { Integer, Real } kind = Kind::Real;
    double lo = 0.0;
    double hi = 0.0;
};

struct ParamSpace {
    AlgorithmId algorithm = AlgorithmId::Aco;
    std::vector<ParamDef> params;

    const ParamDef* find(std::string_view name) const noexcept;
};

/// Provenance of a configuration: where its values came from.
struct Provenance {
    enum class Kind { Preset, Sampled, Raced, Manual } kind = Kind::Manual;
    std::string detail;  ///< preset column, seed, or race id
};

struct ParamConfig {
    AlgorithmId algorithm = AlgorithmId::Aco;
    std::map<std::string, double> values;
    Provenance provenance;

    double get(std::string_view name) const;
    /// Short identifier used in reports: the preset column, "sampled-<seed>",
    /// "raced-<id>", or "custom" / "custom-<detail>" for manual ones.
    std::string id() const;
};

class TunerError : public std::invalid_argument {
public:
    enum class Kind { UnknownAlgorithm, NoSuchColumn, OutOfRange, BudgetTooSmall, Malformed };

    TunerError(Kind kind, const std::string& message) : std::invalid_argument(message), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Tuning ranges for the seven stochastic algorithms. Throws
/// UnknownAlgorithm for the deterministic ones.
const ParamSpace& param_space(AlgorithmId id);

enum class PresetColumn { Original, Claude, Gemini, Llama, O1, R1 };

std::string_view to_string(PresetColumn column) noexcept;
/// Throws TunerError{NoSuchColumn}.
PresetColumn parse_column(std::string_view name);

/// Tuned values shipped with the library (version 1 of the table).
ParamConfig preset(AlgorithmId id, PresetColumn column);
inline constexpr int kPresetTableVersion = 1;

/// Checks that `config` names exactly the parameters of its space and that
/// every value lies in range. Throws TunerError{OutOfRange | Malformed}.
void check_config(const ParamConfig& config);

/// Uniform independent draw per parameter; integers inclusive.
ParamConfig sample_config(const ParamSpace& space, std::uint64_t seed);

meta::AcoParams to_aco(const ParamConfig& c);
meta::GaParams to_ga(const ParamConfig& c);
meta::AlnsParams to_alns(const ParamConfig& c);
meta::TabuParams to_tabu(const ParamConfig& c);
meta::SaParams to_sa(const ParamConfig& c);
rl::RlParams to_rl(const ParamConfig& c);

/// Plain-text `key = value` serialization. The algorithm is written as
/// `algorithm = <name>`; provenance as `provenance = <kind>:<detail>`.
std::string render_config(const ParamConfig& config);
ParamConfig parse_config(std::string_view text);
std::string render_space(const ParamSpace& space);

// ---------------------------------------------------------------------------
// Racing

struct RaceOptions {
    std::size_t candidates = 16;
    std::size_t budget = 500;      ///< total solver runs
    std::size_t min_rounds = 3;    ///< rounds before any elimination
    std::uint64_t seed = 0;
    /// Survivors evaluated concurrently within a round; the evaluator must
    /// then be thread-safe.
    std::size_t workers = 1;
};

/// One evaluation: cost of `config` on training instance `instance` with
/// run seed `seed`. Lower is better.
using RaceEvaluator = std::function<double(const ParamConfig& config, std::size_t instance, std::uint64_t seed)>;

struct RaceRound {
    std::size_t instance = 0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> survivors_before;
    std::vector<std::size_t> survivors_after;
};

struct RaceReport {
    ParamConfig winner;
    std::vector<ParamConfig> candidates;
    std::vector<RaceRound> rounds;
    std::size_t runs_used = 0;
    /// Mean cost per candidate over the rounds it took part in.
    std::vector<double> mean_cost;
};

/// Samples `candidates` configs, evaluates the survivors on one new
/// (instance, seed) pair per round, and after `min_rounds` eliminates any
/// config whose mean rank exceeds the best mean rank by more than the
/// standard error of the rank difference. Stops when a single survivor
/// remains or the next round would exceed the run budget. The winner is
/// the survivor with the lowest mean cost.
/// Throws TunerError{BudgetTooSmall} when budget < candidates * instances
/// and TunerError{Malformed} when candidates < 2 or there are no instances.
RaceReport race(const ParamSpace& space, std::size_t instance_count, const RaceEvaluator& evaluate,
                const RaceOptions& options);

/// Races a real solver: per-run time limit ceil(time_scale * n) seconds and
/// an optional evaluation cap. Throws TunerError{BudgetTooSmall} when the
/// budget cannot cover one round per instance.
RaceReport race_algorithm(AlgorithmId id, std::string_view variant, const std::vector<Instance>& instances,
                          const RaceOptions& options, double time_scale,
                          std::optional<std::uint64_t> max_evaluations = std::nullopt,
                          Rounding rounding = Rounding::None);

}  // namespace tsplab
