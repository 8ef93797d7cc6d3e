#pragma once

// Algorithm identifiers, variant names and a single entry point that runs
// any of the ten solvers from a parameter configuration.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsplab/instance.hpp"
#include "tsplab/solve.hpp"

namespace tsplab {

enum class AlgorithmId { Aco, Ga, Alns, Tabu, Sa, QLearning, Sarsa, Christofides, ConvexHull, BranchAndBound };

inline constexpr AlgorithmId kAllAlgorithms[] = {
    AlgorithmId::Aco,       AlgorithmId::Ga,    AlgorithmId::Alns,         AlgorithmId::Tabu,
    AlgorithmId::Sa,        AlgorithmId::QLearning, AlgorithmId::Sarsa, AlgorithmId::Christofides,
    AlgorithmId::ConvexHull, AlgorithmId::BranchAndBound,
};

std::string_view to_string(AlgorithmId id) noexcept;
/// Accepts the canonical names (aco, ga, alns, tabu, sa, qlearning, sarsa,
/// christofides, convex_hull, bb) case-insensitively.
std::optional<AlgorithmId> parse_algorithm(std::string_view name) noexcept;

/// Stochastic algorithms take parameters and a seed; the others are
/// deterministic and run once per instance.
bool is_stochastic(AlgorithmId id) noexcept;

/// Variant names accepted by `id`; the first is the default ("baseline").
std::vector<std::string_view> variants_of(AlgorithmId id);
bool is_valid_variant(AlgorithmId id, std::string_view variant);

struct ParamConfig;

struct RunOutcome {
    Tour tour;
    double cost = 0.0;
    std::uint64_t evaluations = 0;
    std::uint64_t nodes_expanded = 0;
    double elapsed_s = 0.0;
    bool capped = false;  ///< exact search stopped by its cap
    SolveResult detail;   ///< full result for iterative solvers
};

/// Runs `id`/`variant` on one instance. `config` must belong to `id` for
/// the stochastic algorithms and is ignored by the others. Branch and bound
/// uses the budget's time limit as its cap.
RunOutcome run_algorithm(AlgorithmId id, std::string_view variant, const ParamConfig* config, const Instance& inst,
                         const DistanceMatrix& d, const SolveBudget& budget, std::uint64_t seed);

}  // namespace tsplab
