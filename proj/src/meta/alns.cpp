#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "tsplab/meta.hpp"

namespace tsplab::meta {
namespace {

enum DestroyOp : std::size_t { RandomRemoval = 0, WorstRemoval = 1 };

void check(const AlnsParams& p) {
    if (!(p.removal_fraction > 0.0 && p.removal_fraction < 1.0))
        throw InvalidParameters("ALNS removal fraction must lie in (0, 1)");
    if (!(p.reaction > 0.0 && p.reaction < 1.0)) throw InvalidParameters("ALNS reaction factor must lie in (0, 1)");
}

std::vector<City> random_removal(std::vector<City>& tour, std::size_t k, Rng& rng) {
    std::vector<City> removed;
    removed.reserve(k);
    for (std::size_t r = 0; r < k; ++r) {
        const auto pos = static_cast<std::size_t>(rng.below(tour.size()));
        removed.push_back(tour[pos]);
        tour.erase(tour.begin() + static_cast<std::ptrdiff_t>(pos));
    }
    return removed;
}

// Removes the k cities whose detour d(prev,c) + d(c,next) - d(prev,next)
// is largest in the current tour; ties go to the lowest city index.
std::vector<City> worst_removal(std::vector<City>& tour, std::size_t k, const DistanceMatrix& d) {
    const std::size_t m = tour.size();
    std::vector<std::pair<double, City>> contribution(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto prev = static_cast<std::size_t>(tour[(i + m - 1) % m]);
        const auto c = static_cast<std::size_t>(tour[i]);
        const auto next = static_cast<std::size_t>(tour[(i + 1) % m]);
        contribution[i] = {d(prev, c) + d(c, next) - d(prev, next), tour[i]};
    }
    std::sort(contribution.begin(), contribution.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    std::vector<City> removed;
    removed.reserve(k);
    std::vector<std::uint8_t> drop(d.size(), 0);
    for (std::size_t r = 0; r < k; ++r) {
        removed.push_back(contribution[r].second);
        drop[static_cast<std::size_t>(contribution[r].second)] = 1;
    }
    std::erase_if(tour, [&](City c) { return drop[static_cast<std::size_t>(c)] != 0; });
    return removed;
}

// Greedy cheapest insertion: repeatedly insert the (city, position) pair
// with the smallest cost increase.
void greedy_repair(std::vector<City>& tour, std::vector<City> pending, const DistanceMatrix& d) {
    while (!pending.empty()) {
        const std::size_t m = tour.size();
        std::size_t best_city = 0, best_pos = 0;
        double best_increase = 0.0;
        bool found = false;
        for (std::size_t p = 0; p < pending.size(); ++p) {
            const auto c = static_cast<std::size_t>(pending[p]);
            for (std::size_t k = 0; k < m; ++k) {
                const auto u = static_cast<std::size_t>(tour[k]);
                const auto v = static_cast<std::size_t>(tour[(k + 1) % m]);
                const double inc = d(u, c) + d(c, v) - d(u, v);
                if (!found || inc < best_increase ||
                    (inc == best_increase && pending[p] < pending[best_city])) {
                    found = true;
                    best_increase = inc;
                    best_city = p;
                    best_pos = k;
                }
            }
        }
        tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(best_pos + 1), pending[best_city]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best_city));
    }
}

}  // namespace

std::size_t alns_removal_count(std::size_t n, double removal_fraction) noexcept {
    if (n < 2) return 0;
    const auto k = static_cast<std::size_t>(std::ceil(removal_fraction * static_cast<double>(n)));
    return std::clamp<std::size_t>(k, 1, n - 1);
}

SolveResult solve_alns(const DistanceMatrix& d, const AlnsParams& p, SolveBudget budget, std::uint64_t seed) {
    check(p);
    const std::size_t n = d.size();
    Rng rng(seed);
    SearchMonitor monitor(d, budget, seed);

    Tour current = nearest_neighbor_tour(d, City{0});
    double current_cost = tour_length(current, d);
    monitor.count();
    monitor.offer(current, current_cost);
    if (n < 3) return std::move(monitor).finish();

    const std::size_t k = alns_removal_count(n, p.removal_fraction);
    std::array<double, 2> weights{1.0, 1.0};
    Tour candidate;

    while (!monitor.exhausted()) {
        const std::size_t op = roulette(weights, rng);
        candidate = current;
        std::vector<City> removed = op == RandomRemoval ? random_removal(candidate.order, k, rng)
                                                        : worst_removal(candidate.order, k, d);
        greedy_repair(candidate.order, std::move(removed), d);

        const double cost = tour_length(candidate, d);
        monitor.count();
        double score = kScoreRejected;
        if (monitor.offer(candidate, cost)) {
            score = kScoreNewBest;
        } else if (cost <= current_cost) {
            score = kScoreAccepted;
        }
        if (cost <= current_cost) {
            current.order.swap(candidate.order);
            current_cost = cost;
        }
        update_operator_weights(weights, op, score, p.reaction);
    }
    return std::move(monitor).finish();
}

}  // namespace tsplab::meta
