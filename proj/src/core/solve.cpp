#include "tsplab/solve.hpp"

#include <numeric>

namespace tsplab {

SearchMonitor::SearchMonitor(const DistanceMatrix& d, SolveBudget budget, std::uint64_t seed)
    : d_(d), budget_(budget), seed_(seed), start_(std::chrono::steady_clock::now()) {
    if (!(budget_.time_limit_s > 0.0)) throw InvalidParameters("time limit must be positive");
}

bool SearchMonitor::offer(const Tour& candidate, double cost_hint) {
    if (has_incumbent() && !(cost_hint < best_cost_)) return false;
    const double exact = tour_length(candidate, d_);
    if (has_incumbent() && !(exact < best_cost_)) return false;
    best_ = candidate;
    best_cost_ = exact;
    trajectory_.push_back({elapsed(), exact});
    return true;
}

double SearchMonitor::elapsed() const noexcept {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

bool SearchMonitor::exhausted() const noexcept {
    if (budget_.max_evaluations && evaluations_ >= *budget_.max_evaluations) return true;
    return elapsed() >= budget_.time_limit_s;
}

SolveResult SearchMonitor::finish() && {
    SolveResult r;
    r.best = std::move(best_);
    r.best_cost = best_cost_;
    r.trajectory = std::move(trajectory_);
    r.evaluations = evaluations_;
    r.seed = seed_;
    r.elapsed_s = elapsed();
    return r;
}

void update_operator_weights(std::span<double> weights, std::size_t used, double score,
                             double reaction) noexcept {
    for (std::size_t k = 0; k < weights.size(); ++k) {
        weights[k] = (1.0 - reaction) * weights[k] + (k == used ? reaction * score : 0.0);
    }
}

std::size_t roulette(std::span<const double> weights, Rng& rng) noexcept {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) return static_cast<std::size_t>(rng.below(weights.size()));
    double pick = rng.uniform01() * total;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        pick -= weights[k];
        if (pick < 0.0) return k;
    }
    // Rounding left a sliver; take the last operator with positive weight.
    for (std::size_t k = weights.size(); k-- > 0;) {
        if (weights[k] > 0.0) return k;
    }
    return 0;
}

}  // namespace tsplab
