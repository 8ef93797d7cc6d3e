#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "tsplab/bench.hpp"
#include "tsplab/rng.hpp"
#include "tsplab/tuner.hpp"

namespace tsplab {
namespace {

// Average ranks (1-based) of `costs`, ties sharing the mean of their ranks.
std::vector<double> rank(const std::vector<double>& costs) {
    std::vector<std::size_t> order(costs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
    std::vector<double> ranks(costs.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && costs[order[j + 1]] == costs[order[i]]) ++j;
        const double r = (static_cast<double>(i + j) / 2.0) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe m;
    const auto n = static_cast<double>(xs.size());
    for (double x : xs) m.mean += x;
    m.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - m.mean) * (x - m.mean);
        m.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return m;
}

}  // namespace

RaceReport race(const ParamSpace& space, std::size_t instance_count, const RaceEvaluator& evaluate,
                const RaceOptions& options) {
    if (options.candidates < 2) throw TunerError(TunerError::Kind::Malformed, "a race needs at least 2 candidates");
    if (instance_count == 0) throw TunerError(TunerError::Kind::Malformed, "a race needs at least one instance");
    if (options.budget < options.candidates * instance_count) {
        throw TunerError(TunerError::Kind::BudgetTooSmall,
                         "budget " + std::to_string(options.budget) + " is below candidates x instances = " +
                             std::to_string(options.candidates * instance_count));
    }

    RaceReport report;
    for (std::size_t c = 0; c < options.candidates; ++c)
        report.candidates.push_back(sample_config(space, derive_seed(options.seed, c)));

    const std::size_t count = options.candidates;
    std::vector<std::vector<double>> costs(count);  // per candidate, per round it ran
    std::vector<std::vector<double>> ranks(count);
    std::vector<std::size_t> survivors(count);
    std::iota(survivors.begin(), survivors.end(), std::size_t{0});

    for (std::size_t round = 0; survivors.size() > 1; ++round) {
        if (report.runs_used + survivors.size() > options.budget) break;
        RaceRound r;
        r.instance = round % instance_count;
        r.seed = StableHash{}.add("race-round").add(options.seed).add(round).value();
        r.survivors_before = survivors;

        std::vector<double> round_costs(survivors.size());
        auto work = [&](std::size_t k) {
            round_costs[k] = evaluate(report.candidates[survivors[k]], r.instance, r.seed);
        };
        const std::size_t workers = std::min(options.workers, survivors.size());
        if (workers <= 1) {
            for (std::size_t k = 0; k < survivors.size(); ++k) work(k);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t k; (k = next.fetch_add(1)) < survivors.size();) work(k);
                });
            for (auto& t : pool) t.join();
        }
        report.runs_used += survivors.size();

        const auto round_ranks = rank(round_costs);
        for (std::size_t k = 0; k < survivors.size(); ++k) {
            costs[survivors[k]].push_back(round_costs[k]);
            ranks[survivors[k]].push_back(round_ranks[k]);
        }

        if (round + 1 >= options.min_rounds) {
            std::vector<MeanSe> stats;
            std::size_t best = 0;
            for (std::size_t k = 0; k < survivors.size(); ++k) {
                stats.push_back(mean_se(ranks[survivors[k]]));
                if (stats[k].mean < stats[best].mean) best = k;
            }
            std::vector<std::size_t> kept;
            for (std::size_t k = 0; k < survivors.size(); ++k) {
                const double margin = std::sqrt(stats[k].se * stats[k].se + stats[best].se * stats[best].se);
                if (k == best || stats[k].mean - stats[best].mean <= margin) kept.push_back(survivors[k]);
            }
            survivors = std::move(kept);
        }
        r.survivors_after = survivors;
        report.rounds.push_back(std::move(r));
    }

    report.mean_cost.assign(count, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t c = 0; c < count; ++c)
        if (!costs[c].empty()) report.mean_cost[c] = mean_se(costs[c]).mean;

    std::size_t winner = survivors.front();
    for (std::size_t c : survivors)
        if (report.mean_cost[c] < report.mean_cost[winner]) winner = c;
    report.winner = report.candidates[winner];
    report.winner.provenance = {Provenance::Kind::Raced, std::to_string(options.seed) + "." + std::to_string(winner)};
    return report;
}

RaceReport race_algorithm(AlgorithmId id, std::string_view variant, const std::vector<Instance>& instances,
                          const RaceOptions& options, double time_scale, std::optional<std::uint64_t> max_evaluations,
                          Rounding rounding) {
    const ParamSpace& space = param_space(id);
    if (!is_valid_variant(id, variant))
        throw TunerError(TunerError::Kind::Malformed, "unknown variant '" + std::string(variant) + "'");
    std::vector<DistanceMatrix> matrices;
    for (const auto& inst : instances) matrices.push_back(build_distance_matrix(inst, rounding));

    auto evaluate = [&](const ParamConfig& config, std::size_t i, std::uint64_t seed) {
        SolveBudget budget{bench::time_limit_for(instances[i].dimension, time_scale), max_evaluations};
        return run_algorithm(id, variant, &config, instances[i], matrices[i], budget, seed).cost;
    };
    return race(space, instances.size(), evaluate, options);
}

}  // namespace tsplab
