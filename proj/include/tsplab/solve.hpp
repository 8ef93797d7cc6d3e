#pragma once

// Types shared by every iterative solver: budgets, results and the
// best-so-far bookkeeping that enforces the SolveResult invariants.

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tsplab/instance.hpp"
#include "tsplab/tour.hpp"

namespace tsplab {

/// Stops a solver at whichever bound is reached first. The time limit is a
/// soft deadline checked between iterations.
struct SolveBudget {
    double time_limit_s = 1.0;
    std::optional<std::uint64_t> max_evaluations;

    static SolveBudget seconds(double s) { return {s, std::nullopt}; }
    SolveBudget& with_evaluations(std::uint64_t n) {
        max_evaluations = n;
        return *this;
    }
};

struct TrajectoryPoint {
    double elapsed_s = 0.0;
    double cost = 0.0;
};

struct SolveResult {
    Tour best;
    double best_cost = 0.0;
    std::vector<TrajectoryPoint> trajectory;
    std::uint64_t evaluations = 0;
    std::uint64_t seed = 0;
    double elapsed_s = 0.0;
    /// RL solvers only: cost of the greedy rollout of the learned Q-table.
    std::optional<double> greedy_rollout_cost;
};

class InvalidParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Tracks elapsed time, evaluation count and the incumbent for one run.
class SearchMonitor {
public:
    SearchMonitor(const DistanceMatrix& d, SolveBudget budget, std::uint64_t seed);

    /// Counts `n` objective evaluations.
    void count(std::uint64_t n = 1) noexcept { evaluations_ += n; }

    /// Offers a candidate whose caller-side cost is `cost_hint`. The exact
    /// length is recomputed before the incumbent is replaced, so best_cost
    /// always equals tour_length(best). Returns true on a new best.
    bool offer(const Tour& candidate, double cost_hint);
    bool offer(const Tour& candidate) { return offer(candidate, tour_length(candidate, d_)); }

    bool has_incumbent() const noexcept { return !best_.order.empty(); }
    double best_cost() const noexcept { return best_cost_; }
    const Tour& best() const noexcept { return best_; }

    double elapsed() const noexcept;
    /// True once any budget bound is reached. Solvers call this between
    /// iterations, after they hold at least one complete tour.
    bool exhausted() const noexcept;
    std::uint64_t evaluations() const noexcept { return evaluations_; }
    const SolveBudget& budget() const noexcept { return budget_; }

    SolveResult finish() &&;

private:
    const DistanceMatrix& d_;
    SolveBudget budget_;
    std::uint64_t seed_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t evaluations_ = 0;
    Tour best_;
    double best_cost_ = 0.0;
    std::vector<TrajectoryPoint> trajectory_;
};

/// Adaptive operator weight update used by ALNS and the hybrid GA:
/// every weight decays by (1 - reaction) and the used operator additionally
/// receives reaction * score.
void update_operator_weights(std::span<double> weights, std::size_t used, double score,
                             double reaction) noexcept;

/// Roulette pick proportional to `weights`; uniform when all are zero.
std::size_t roulette(std::span<const double> weights, Rng& rng) noexcept;

/// Operator scores shared by the adaptive schemes.
inline constexpr double kScoreNewBest = 3.0;
inline constexpr double kScoreAccepted = 1.0;
inline constexpr double kScoreRejected = 0.0;

}  // namespace tsplab
