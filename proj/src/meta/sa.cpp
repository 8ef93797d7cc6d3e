#include <algorithm>
#include <cmath>

#include "tsplab/meta.hpp"

namespace tsplab::meta {
namespace {

void check(const SaParams& p) {
    if (!(p.final_temperature > 0.0)) throw InvalidParameters("SA final temperature must be positive");
    if (!(p.initial_temperature > p.final_temperature))
        throw InvalidParameters("SA initial temperature must exceed the final temperature");
    if (!(p.cooling_rate > 0.0 && p.cooling_rate < 1.0)) throw InvalidParameters("SA cooling rate must lie in (0, 1)");
}

}  // namespace

double metropolis_acceptance(double delta, double temperature) noexcept {
    if (delta <= 0.0) return 1.0;
    return std::exp(-delta / temperature);
}

std::uint64_t geometric_level_count(const SaParams& p) noexcept {
    const double levels = std::log(p.final_temperature / p.initial_temperature) / std::log(p.cooling_rate);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(levels)));
}

// Random 2-opt proposals with Metropolis acceptance. The baseline cools
// geometrically from a random tour; the Lundy-Mees variant starts from the
// nearest-neighbour tour and cools with T <- T / (1 + beta*T), with beta set
// so that the planned number of levels ends exactly at Tf. Both restart the
// schedule from T0 when they reach Tf with budget left.
SolveResult solve_sa(const DistanceMatrix& d, const SaParams& p, SolveBudget budget, std::uint64_t seed,
                     SaVariant variant, const SaOptions& options) {
    check(p);
    const std::size_t n = d.size();
    Rng rng(seed);
    SearchMonitor monitor(d, budget, seed);

    Tour current = variant == SaVariant::LundyMeesR1 ? nearest_neighbor_tour(d, City{0}) : random_tour(n, rng);
    double current_cost = tour_length(current, d);
    monitor.count();
    monitor.offer(current, current_cost);
    if (n < 4) return std::move(monitor).finish();

    const std::size_t per_level = options.moves_per_temperature == 0 ? n : options.moves_per_temperature;

    // Planned schedule length: the evaluation budget when one is given,
    // otherwise the geometric schedule's level count.
    double planned_levels = static_cast<double>(geometric_level_count(p));
    if (budget.max_evaluations) {
        planned_levels = std::max(1.0, std::floor(static_cast<double>(*budget.max_evaluations) /
                                                  static_cast<double>(per_level)));
    }
    const double beta = lundy_mees_beta(p.initial_temperature, p.final_temperature, planned_levels);

    double temperature = p.initial_temperature;
    bool restart = true;
    while (!monitor.exhausted()) {
        if (options.on_temperature) options.on_temperature(temperature, restart);
        restart = false;
        current_cost = tour_length(current, d);

        for (std::size_t m = 0; m < per_level && !monitor.exhausted(); ++m) {
            std::size_t i = 0, j = 0;
            do {
                const auto a = static_cast<std::size_t>(rng.below(n));
                const auto b = static_cast<std::size_t>(rng.below(n));
                i = std::min(a, b);
                j = std::max(a, b);
            } while (j < i + 2 || (i == 0 && j == n - 1));

            const double delta = two_opt_delta(current.order, d, i, j);
            monitor.count();
            if (delta <= 0.0 || rng.uniform01() < metropolis_acceptance(delta, temperature)) {
                apply_two_opt(current.order, i, j);
                current_cost += delta;
                if (current_cost < monitor.best_cost()) {
                    current_cost = tour_length(current, d);
                    monitor.offer(current, current_cost);
                }
            }
        }

        temperature = variant == SaVariant::LundyMeesR1 ? lundy_mees_step(temperature, beta)
                                                        : temperature * p.cooling_rate;
        // Relative slack absorbs rounding in the Lundy-Mees recurrence.
        if (temperature < p.final_temperature * (1.0 - 1e-9)) {
            temperature = p.initial_temperature;
            restart = true;
        }
    }
    return std::move(monitor).finish();
}

}  // namespace tsplab::meta
