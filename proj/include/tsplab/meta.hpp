#pragma once

// Metaheuristics: ACO, GA, ALNS, tabu search and simulated annealing.
//
// Every solver builds at least one complete tour before it looks at the
// budget, is single-threaded, and is deterministic given its seed.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "tsplab/solve.hpp"

namespace tsplab::meta {

struct AcoParams {
    std::size_t ants = 7;  ///< m
    double alpha = 1.34;   ///< pheromone exponent
    double beta = 1.59;    ///< heuristic exponent
    double decay = 0.24;   ///< rho, evaporation rate
};

SolveResult solve_aco(const DistanceMatrix& d, const AcoParams& p, SolveBudget budget, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Genetic algorithm

struct GaParams {
    std::size_t population = 97;  ///< N
    double mutation_rate = 0.02;  ///< mu, per-gene swap probability
    std::size_t elite = 4;        ///< e
    /// Hybrid only: fraction of the population sharing one cost value above
    /// which duplicates are replaced by random permutations.
    double diversity_threshold = 0.5;
    /// Hybrid only: tournament size for parent selection.
    std::size_t tournament = 2;
    /// Hybrid only: reaction factor of the crossover operator weights.
    double operator_reaction = 0.1;
};

enum class GaVariant { Baseline, HybridR1 };

enum class Crossover { Ordered, EdgeRecombination, BestCostRoute };

struct InitialPopulation {
    std::vector<Tour> members;
    std::size_t nn_seeded = 0;
};

/// Number of nearest-neighbour seeds used by the hybrid initializer.
constexpr std::size_t hybrid_nn_seed_count(std::size_t population) noexcept {
    if (population < 5) return 0;
    const std::size_t fifth = population / 5;
    return fifth < 1 ? 1 : fifth;
}

InitialPopulation ga_initial_population(const DistanceMatrix& d, std::size_t population,
                                        GaVariant variant, Rng& rng);

/// Order crossover: a random slice of `a`, remaining cities in `b`'s order.
Tour order_crossover(const Tour& a, const Tour& b, Rng& rng);
/// Edge recombination: follow the union of parent edges, preferring the
/// neighbour with the fewest remaining edges.
Tour edge_recombination(const Tour& a, const Tour& b, Rng& rng);
/// Best-cost route crossover: remove a random segment of `b` from `a` and
/// reinsert each of its cities at its cheapest position.
Tour best_cost_route_crossover(const Tour& a, const Tour& b, const DistanceMatrix& d, Rng& rng);

/// Swaps each position with a random partner with probability `rate`.
void swap_mutation(Tour& t, double rate, Rng& rng);

SolveResult solve_ga(const DistanceMatrix& d, const GaParams& p, SolveBudget budget, std::uint64_t seed,
                     GaVariant variant = GaVariant::Baseline);

// ---------------------------------------------------------------------------
// Adaptive large neighbourhood search

struct AlnsParams {
    double removal_fraction = 0.27;  ///< lambda
    double reaction = 0.27;          ///< rho
};

/// Cities removed per destroy step: ceil(lambda*n) clamped to [1, n-1].
std::size_t alns_removal_count(std::size_t n, double removal_fraction) noexcept;

SolveResult solve_alns(const DistanceMatrix& d, const AlnsParams& p, SolveBudget budget, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Tabu search

struct TabuParams {
    std::size_t tenure = 8;  ///< T, iterations
};

/// Tabu memory over 2-opt moves. A move is identified by the pair of edges
/// it removes; after a move is made, the pair of edges it removed becomes
/// tabu, so the move that would restore them is rejected for `tenure`
/// iterations.
class TabuList {
public:
    explicit TabuList(std::size_t tenure) : tenure_(tenure) {}

    static std::uint64_t edge_pair_key(City a, City b, City c, City e) noexcept;

    /// Records the edges removed by a move made at `iteration`.
    void forbid(std::uint64_t removed_pair, std::uint64_t iteration);
    /// Whether a move that adds `added_pair` is tabu at `iteration`.
    bool is_tabu(std::uint64_t added_pair, std::uint64_t iteration) const noexcept;
    /// Iteration at which the entry expires (0 when absent).
    std::uint64_t expiry(std::uint64_t pair) const noexcept;

private:
    std::size_t tenure_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries_;  // key, last tabu iteration
};

SolveResult solve_tabu(const DistanceMatrix& d, const TabuParams& p, SolveBudget budget, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Simulated annealing

struct SaParams {
    double initial_temperature = 12.0;  ///< T0
    double final_temperature = 0.0547;  ///< Tf
    double cooling_rate = 0.9895;       ///< alpha, geometric schedule
};

enum class SaVariant { Baseline, LundyMeesR1 };

struct SaOptions {
    /// Proposals per temperature level; 0 means n.
    std::size_t moves_per_temperature = 0;
    /// Called with every temperature level; `restart` marks the first level
    /// of a new schedule pass.
    std::function<void(double temperature, bool restart)> on_temperature;
};

/// Probability of accepting a move that changes the cost by `delta`.
double metropolis_acceptance(double delta, double temperature) noexcept;

/// T / (1 + beta*T)
inline double lundy_mees_step(double temperature, double beta) noexcept {
    return temperature / (1.0 + beta * temperature);
}

/// beta such that `steps` Lundy-Mees steps take T0 exactly to Tf.
inline double lundy_mees_beta(double t0, double tf, double steps) noexcept {
    return (t0 - tf) / (steps * t0 * tf);
}

/// Number of geometric cooling levels between T0 and Tf.
std::uint64_t geometric_level_count(const SaParams& p) noexcept;

SolveResult solve_sa(const DistanceMatrix& d, const SaParams& p, SolveBudget budget, std::uint64_t seed,
                     SaVariant variant = SaVariant::Baseline, const SaOptions& options = {});

}  // namespace tsplab::meta
