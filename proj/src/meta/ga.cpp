#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "tsplab/meta.hpp"

namespace tsplab::meta {
namespace {

void check(const GaParams& p) {
    if (p.population < 2) throw InvalidParameters("GA population must be at least 2");
    if (p.elite > p.population) throw InvalidParameters("GA elite count exceeds population");
    if (!(p.mutation_rate >= 0.0 && p.mutation_rate <= 1.0)) throw InvalidParameters("GA mutation rate outside [0, 1]");
    if (p.tournament < 1) throw InvalidParameters("GA tournament size must be positive");
}

struct Individual {
    Tour tour;
    double cost = 0.0;
};

// Indices of `pop` from best to worst; equal costs keep population order.
std::vector<std::size_t> ranking(const std::vector<Individual>& pop) {
    std::vector<std::size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return pop[a].cost < pop[b].cost; });
    return idx;
}

std::size_t fitness_proportional(const std::vector<Individual>& pop, std::vector<double>& fitness, Rng& rng) {
    fitness.resize(pop.size());
    for (std::size_t k = 0; k < pop.size(); ++k) fitness[k] = pop[k].cost > 0.0 ? 1.0 / pop[k].cost : 1e300;
    return roulette(fitness, rng);
}

// `rank_of[k]` is the 0-based rank of individual k (0 = best).
std::size_t tournament(const std::vector<std::size_t>& rank_of, std::size_t size, Rng& rng) {
    std::size_t winner = static_cast<std::size_t>(rng.below(rank_of.size()));
    for (std::size_t k = 1; k < size; ++k) {
        const auto challenger = static_cast<std::size_t>(rng.below(rank_of.size()));
        if (rank_of[challenger] < rank_of[winner]) winner = challenger;
    }
    return winner;
}

bool same_cost(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

// Replaces duplicates of the most common cost when they exceed `threshold`
// of the population. One member of the cluster is kept.
void preserve_diversity(std::vector<Individual>& pop, double threshold, const DistanceMatrix& d,
                        SearchMonitor& monitor, Rng& rng) {
    const std::vector<std::size_t> order = ranking(pop);
    std::size_t best_begin = 0, best_len = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && same_cost(pop[order[i]].cost, pop[order[j]].cost)) ++j;
        if (j - i > best_len) {
            best_len = j - i;
            best_begin = i;
        }
        i = j;
    }
    if (static_cast<double>(best_len) <= threshold * static_cast<double>(pop.size())) return;
    // Keep the first member of the cluster; replace the later (worse-ranked) ones.
    for (std::size_t k = best_begin + 1; k < best_begin + best_len; ++k) {
        Individual& victim = pop[order[k]];
        victim.tour = random_tour(d.size(), rng);
        victim.cost = tour_length(victim.tour, d);
        monitor.count();
        monitor.offer(victim.tour, victim.cost);
    }
}

}  // namespace

InitialPopulation ga_initial_population(const DistanceMatrix& d, std::size_t population,
                                        GaVariant variant, Rng& rng) {
    const std::size_t n = d.size();
    InitialPopulation init;
    init.members.reserve(population);
    if (variant == GaVariant::HybridR1) {
        const std::size_t seeds = hybrid_nn_seed_count(population);
        // Distinct random starts while they last.
        std::vector<City> starts(n);
        std::iota(starts.begin(), starts.end(), City{0});
        rng.shuffle(std::span<City>(starts));
        for (std::size_t k = 0; k < seeds; ++k) {
            init.members.push_back(nearest_neighbor_tour(d, starts[k % n]));
        }
        init.nn_seeded = seeds;
    }
    while (init.members.size() < population) init.members.push_back(random_tour(n, rng));
    return init;
}

Tour order_crossover(const Tour& a, const Tour& b, Rng& rng) {
    const std::size_t n = a.size();
    auto lo = static_cast<std::size_t>(rng.below(n));
    auto hi = static_cast<std::size_t>(rng.below(n));
    if (lo > hi) std::swap(lo, hi);

    Tour child;
    child.order.assign(n, -1);
    std::vector<std::uint8_t> used(n, 0);
    for (std::size_t k = lo; k <= hi; ++k) {
        child.order[k] = a.order[k];
        used[static_cast<std::size_t>(a.order[k])] = 1;
    }
    std::size_t write = (hi + 1) % n;
    for (std::size_t step = 0; step < n; ++step) {
        const City c = b.order[(hi + 1 + step) % n];
        if (used[static_cast<std::size_t>(c)]) continue;
        child.order[write] = c;
        used[static_cast<std::size_t>(c)] = 1;
        write = (write + 1) % n;
    }
    return child;
}

Tour edge_recombination(const Tour& a, const Tour& b, Rng& rng) {
    const std::size_t n = a.size();
    // Up to four distinct neighbours per city.
    std::vector<std::array<City, 4>> adj(n);
    std::vector<std::uint8_t> degree(n, 0);
    auto link = [&](City u, City v) {
        auto& list = adj[static_cast<std::size_t>(u)];
        auto& deg = degree[static_cast<std::size_t>(u)];
        for (std::uint8_t k = 0; k < deg; ++k)
            if (list[k] == v) return;
        list[deg++] = v;
    };
    for (const Tour* parent : {&a, &b}) {
        for (std::size_t k = 0; k < n; ++k) {
            const City u = parent->order[k];
            const City v = parent->order[(k + 1) % n];
            link(u, v);
            link(v, u);
        }
    }
    auto unlink = [&](City c) {
        for (std::size_t u = 0; u < n; ++u) {
            auto& list = adj[u];
            auto& deg = degree[u];
            for (std::uint8_t k = 0; k < deg; ++k) {
                if (list[k] == c) {
                    list[k] = list[--deg];
                    break;
                }
            }
        }
    };

    Tour child;
    child.order.reserve(n);
    std::vector<std::uint8_t> visited(n, 0);
    City current = a.order[0];
    while (true) {
        child.order.push_back(current);
        visited[static_cast<std::size_t>(current)] = 1;
        if (child.order.size() == n) break;
        unlink(current);

        const auto& list = adj[static_cast<std::size_t>(current)];
        const auto deg = degree[static_cast<std::size_t>(current)];
        City next = -1;
        for (std::uint8_t k = 0; k < deg; ++k) {
            const City cand = list[k];
            if (next < 0 || degree[static_cast<std::size_t>(cand)] < degree[static_cast<std::size_t>(next)] ||
                (degree[static_cast<std::size_t>(cand)] == degree[static_cast<std::size_t>(next)] && cand < next)) {
                next = cand;
            }
        }
        if (next < 0) {
            // Dead end: jump to a random unvisited city.
            auto skip = rng.below(n - child.order.size());
            for (std::size_t c = 0; c < n; ++c) {
                if (visited[c]) continue;
                if (skip-- == 0) {
                    next = static_cast<City>(c);
                    break;
                }
            }
        }
        current = next;
    }
    return child;
}

Tour best_cost_route_crossover(const Tour& a, const Tour& b, const DistanceMatrix& d, Rng& rng) {
    const std::size_t n = a.size();
    const std::size_t max_len = std::max<std::size_t>(1, std::min(n - 2, n / 4));
    const std::size_t len = 1 + static_cast<std::size_t>(rng.below(max_len));
    const auto start = static_cast<std::size_t>(rng.below(n));

    std::vector<City> segment(len);
    std::vector<std::uint8_t> removed(n, 0);
    for (std::size_t k = 0; k < len; ++k) {
        segment[k] = b.order[(start + k) % n];
        removed[static_cast<std::size_t>(segment[k])] = 1;
    }
    Tour child;
    child.order.reserve(n);
    for (const City c : a.order)
        if (!removed[static_cast<std::size_t>(c)]) child.order.push_back(c);

    for (const City c : segment) {
        const auto cu = static_cast<std::size_t>(c);
        const std::size_t m = child.order.size();
        std::size_t best_pos = 0;
        double best_increase = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const auto u = static_cast<std::size_t>(child.order[k]);
            const auto v = static_cast<std::size_t>(child.order[(k + 1) % m]);
            const double increase = d(u, cu) + d(cu, v) - d(u, v);
            if (k == 0 || increase < best_increase) {
                best_increase = increase;
                best_pos = k;
            }
        }
        child.order.insert(child.order.begin() + static_cast<std::ptrdiff_t>(best_pos + 1), c);
    }
    return child;
}

void swap_mutation(Tour& t, double rate, Rng& rng) {
    const std::size_t n = t.size();
    if (n < 2 || rate <= 0.0) return;
    for (std::size_t k = 0; k < n; ++k) {
        if (rng.bernoulli(rate)) std::swap(t.order[k], t.order[static_cast<std::size_t>(rng.below(n))]);
    }
}

SolveResult solve_ga(const DistanceMatrix& d, const GaParams& p, SolveBudget budget, std::uint64_t seed,
                     GaVariant variant) {
    check(p);
    const std::size_t n = d.size();
    const bool hybrid = variant == GaVariant::HybridR1;
    Rng rng(seed);
    SearchMonitor monitor(d, budget, seed);

    std::vector<Individual> pop;
    pop.reserve(p.population);
    for (Tour& t : ga_initial_population(d, p.population, variant, rng).members) {
        const double cost = tour_length(t, d);
        monitor.count();
        monitor.offer(t, cost);
        pop.push_back({std::move(t), cost});
    }

    std::array<double, 3> op_weights{1.0, 1.0, 1.0};
    std::vector<double> scratch;
    std::vector<Individual> next;
    std::vector<std::size_t> rank_of(p.population);

    while (!monitor.exhausted()) {
        const std::vector<std::size_t> order = ranking(pop);
        for (std::size_t r = 0; r < order.size(); ++r) rank_of[order[r]] = r;

        next.clear();
        for (std::size_t k = 0; k < p.elite; ++k) next.push_back(pop[order[k]]);

        while (next.size() < p.population && !monitor.exhausted()) {
            std::size_t i1, i2;
            if (hybrid) {
                i1 = tournament(rank_of, p.tournament, rng);
                i2 = tournament(rank_of, p.tournament, rng);
            } else {
                i1 = fitness_proportional(pop, scratch, rng);
                i2 = fitness_proportional(pop, scratch, rng);
            }
            const Individual& a = pop[i1];
            const Individual& b = pop[i2];

            Individual child;
            std::size_t op = 0;
            if (hybrid && n >= 4) {
                op = roulette(op_weights, rng);
                switch (static_cast<Crossover>(op)) {
                    case Crossover::Ordered: child.tour = order_crossover(a.tour, b.tour, rng); break;
                    case Crossover::EdgeRecombination: child.tour = edge_recombination(a.tour, b.tour, rng); break;
                    case Crossover::BestCostRoute: child.tour = best_cost_route_crossover(a.tour, b.tour, d, rng); break;
                }
            } else {
                child.tour = order_crossover(a.tour, b.tour, rng);
            }
            swap_mutation(child.tour, p.mutation_rate, rng);
            if (hybrid) monitor.count(two_opt_in_place(child.tour, d, TwoOptMode::stochastic(n), rng));

            child.cost = tour_length(child.tour, d);
            monitor.count();
            const bool new_best = monitor.offer(child.tour, child.cost);
            if (hybrid && n >= 4) {
                const double score = new_best ? kScoreNewBest
                                     : child.cost < std::min(a.cost, b.cost) ? kScoreAccepted
                                                                             : kScoreRejected;
                update_operator_weights(op_weights, op, score, p.operator_reaction);
            }
            next.push_back(std::move(child));
        }
        if (next.size() < p.population) break;  // budget ran out mid-generation
        pop.swap(next);
        if (hybrid) preserve_diversity(pop, p.diversity_threshold, d, monitor, rng);
    }
    return std::move(monitor).finish();
}

}  // namespace tsplab::meta
