#include <algorithm>
#include <cmath>
#include <vector>

#include "tsplab/meta.hpp"

namespace tsplab::meta {
namespace {

void check(const AcoParams& p) {
    if (p.ants < 1) throw InvalidParameters("ACO needs at least one ant");
    if (!(p.decay > 0.0 && p.decay < 1.0)) throw InvalidParameters("ACO decay must lie in (0, 1)");
    if (!(p.alpha >= 0.0) || !(p.beta >= 0.0)) throw InvalidParameters("ACO exponents must be non-negative");
}

}  // namespace

// Ant System. Each ant walks a full tour choosing the next city with
// probability proportional to tau^alpha * (1/d)^beta; after every iteration
// pheromone evaporates by rho and each ant deposits Q/L on its edges.
SolveResult solve_aco(const DistanceMatrix& d, const AcoParams& p, SolveBudget budget, std::uint64_t seed) {
    check(p);
    const std::size_t n = d.size();
    Rng rng(seed);
    SearchMonitor monitor(d, budget, seed);

    // The nearest-neighbour tour gives the first complete solution and the
    // pheromone scale.
    const Tour nn = nearest_neighbor_tour(d, City{0});
    const double nn_cost = tour_length(nn, d);
    monitor.count();
    monitor.offer(nn, nn_cost);

    const double deposit = d.mean_entry();
    const double tau0 = nn_cost > 0.0 ? deposit / nn_cost : 1.0;
    std::vector<double> tau(n * n, tau0);

    constexpr double kMinDistance = 1e-12;
    std::vector<double> eta_pow(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) eta_pow[i * n + j] = std::pow(1.0 / std::max(d(i, j), kMinDistance), p.beta);

    std::vector<double> weight(n * n, 0.0);
    std::vector<Tour> ants(p.ants);
    std::vector<double> ant_cost(p.ants, 0.0);
    std::vector<std::uint8_t> visited(n);
    std::vector<double> prob(n);

    while (!monitor.exhausted()) {
        for (std::size_t k = 0; k < n * n; ++k) weight[k] = std::pow(tau[k], p.alpha) * eta_pow[k];

        std::size_t built = 0;
        for (std::size_t a = 0; a < p.ants && !monitor.exhausted(); ++a, ++built) {
            Tour& t = ants[a];
            t.order.clear();
            std::fill(visited.begin(), visited.end(), 0);
            auto current = static_cast<std::size_t>(rng.below(n));
            t.order.push_back(static_cast<City>(current));
            visited[current] = 1;
            for (std::size_t step = 1; step < n; ++step) {
                double total = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    prob[j] = visited[j] ? 0.0 : weight[current * n + j];
                    total += prob[j];
                }
                std::size_t next = n;
                if (total > 0.0 && std::isfinite(total)) {
                    double pick = rng.uniform01() * total;
                    for (std::size_t j = 0; j < n; ++j) {
                        if (visited[j]) continue;
                        next = j;
                        pick -= prob[j];
                        if (pick < 0.0) break;
                    }
                } else {
                    for (std::size_t j = 0; j < n && next == n; ++j)
                        if (!visited[j]) next = j;
                }
                visited[next] = 1;
                t.order.push_back(static_cast<City>(next));
                current = next;
            }
            ant_cost[a] = tour_length(t, d);
            monitor.count();
            monitor.offer(t, ant_cost[a]);
        }

        for (double& v : tau) v *= 1.0 - p.decay;
        for (std::size_t a = 0; a < built; ++a) {
            const double amount = ant_cost[a] > 0.0 ? deposit / ant_cost[a] : deposit;
            const auto& order = ants[a].order;
            for (std::size_t k = 0; k < n; ++k) {
                const auto u = static_cast<std::size_t>(order[k]);
                const auto v = static_cast<std::size_t>(order[(k + 1) % n]);
                tau[u * n + v] += amount;
                tau[v * n + u] += amount;
            }
        }
    }
    return std::move(monitor).finish();
}

}  // namespace tsplab::meta
