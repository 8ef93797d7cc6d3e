#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>

#include "tsplab/algorithms.hpp"
#include "tsplab/constructive.hpp"
#include "tsplab/exact.hpp"
#include "tsplab/meta.hpp"
#include "tsplab/rl.hpp"
#include "tsplab/tuner.hpp"

namespace tsplab {
namespace {

constexpr std::array<std::string_view, 10> kNames = {
    "aco", "ga", "alns", "tabu", "sa", "qlearning", "sarsa", "christofides", "convex_hull", "bb",
};

bool iequals(std::string_view a, std::string_view b) noexcept {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

}  // namespace

std::string_view to_string(AlgorithmId id) noexcept { return kNames[static_cast<std::size_t>(id)]; }

std::optional<AlgorithmId> parse_algorithm(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (iequals(name, kNames[i])) return static_cast<AlgorithmId>(i);
    return std::nullopt;
}

bool is_stochastic(AlgorithmId id) noexcept {
    switch (id) {
        case AlgorithmId::Christofides:
        case AlgorithmId::ConvexHull:
        case AlgorithmId::BranchAndBound:
            return false;
        default:
            return true;
    }
}

std::vector<std::string_view> variants_of(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::Ga: return {"baseline", "hybrid_r1"};
        case AlgorithmId::Sa: return {"baseline", "lundy_mees_r1"};
        case AlgorithmId::Sarsa: return {"baseline", "boltzmann_o1"};
        case AlgorithmId::ConvexHull: return {"baseline", "detour"};
        case AlgorithmId::BranchAndBound: return {"baseline", "enhanced_r1"};
        default: return {"baseline"};
    }
}

bool is_valid_variant(AlgorithmId id, std::string_view variant) {
    const auto names = variants_of(id);
    return std::find(names.begin(), names.end(), variant) != names.end();
}

RunOutcome run_algorithm(AlgorithmId id, std::string_view variant, const ParamConfig* config, const Instance& inst,
                         const DistanceMatrix& d, const SolveBudget& budget, std::uint64_t seed) {
    if (!is_valid_variant(id, variant))
        throw InvalidParameters("unknown variant '" + std::string(variant) + "' for " + std::string(to_string(id)));

    ParamConfig fallback;
    if (is_stochastic(id)) {
        if (config == nullptr) {
            fallback = preset(id, PresetColumn::Original);
            config = &fallback;
        } else if (config->algorithm != id) {
            throw InvalidParameters("configuration belongs to " + std::string(to_string(config->algorithm)));
        }
    }

    RunOutcome out;
    auto from_solve = [&](SolveResult r) {
        out.tour = r.best;
        out.cost = r.best_cost;
        out.evaluations = r.evaluations;
        out.elapsed_s = r.elapsed_s;
        out.detail = std::move(r);
    };

    const auto start = std::chrono::steady_clock::now();
    switch (id) {
        case AlgorithmId::Aco:
            from_solve(meta::solve_aco(d, to_aco(*config), budget, seed));
            break;
        case AlgorithmId::Ga:
            from_solve(meta::solve_ga(d, to_ga(*config), budget, seed,
                                      variant == "hybrid_r1" ? meta::GaVariant::HybridR1 : meta::GaVariant::Baseline));
            break;
        case AlgorithmId::Alns:
            from_solve(meta::solve_alns(d, to_alns(*config), budget, seed));
            break;
        case AlgorithmId::Tabu:
            from_solve(meta::solve_tabu(d, to_tabu(*config), budget, seed));
            break;
        case AlgorithmId::Sa:
            from_solve(meta::solve_sa(d, to_sa(*config), budget, seed,
                                      variant == "lundy_mees_r1" ? meta::SaVariant::LundyMeesR1
                                                                 : meta::SaVariant::Baseline));
            break;
        case AlgorithmId::QLearning:
            from_solve(rl::solve_qlearning(d, to_rl(*config), budget, seed));
            break;
        case AlgorithmId::Sarsa:
            from_solve(rl::solve_sarsa(d, to_rl(*config), budget, seed,
                                       variant == "boltzmann_o1" ? rl::SarsaVariant::BoltzmannO1
                                                                 : rl::SarsaVariant::Baseline));
            break;
        case AlgorithmId::Christofides:
            out.tour = constructive::christofides(d).tour;
            break;
        case AlgorithmId::ConvexHull:
            out.tour = constructive::convex_hull_tour(inst, d,
                                                      variant == "detour" ? constructive::InsertionCriterion::Detour
                                                                          : constructive::InsertionCriterion::Ratio);
            break;
        case AlgorithmId::BranchAndBound: {
            exact::SearchCap cap;
            cap.max_seconds = budget.time_limit_s;
            auto r = exact::branch_and_bound(
                d, variant == "enhanced_r1" ? exact::BbVariant::EnhancedR1 : exact::BbVariant::Baseline, cap);
            out.tour = std::move(r.best);
            out.nodes_expanded = r.nodes_expanded;
            out.capped = !r.proven_optimal;
            break;
        }
    }
    if (!is_stochastic(id)) {
        out.cost = tour_length(out.tour, d);
        out.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return out;
}

}  // namespace tsplab
