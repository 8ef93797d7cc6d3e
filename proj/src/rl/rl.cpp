#include <algorithm>
#include <cmath>
#include <limits>

#include "tsplab/rl.hpp"

namespace tsplab::rl {
namespace {

void check(const RlParams& p) {
    if (!(p.learning_rate > 0.0 && p.learning_rate <= 1.0)) throw InvalidParameters("learning rate must lie in (0, 1]");
    if (!(p.discount > 0.0 && p.discount < 1.0)) throw InvalidParameters("discount factor must lie in (0, 1)");
    if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0)) throw InvalidParameters("epsilon must lie in [0, 1]");
    if (p.episodes < 1) throw InvalidParameters("at least one episode is required");
}

enum class Policy { EpsilonGreedy, Boltzmann };

class Trainer {
public:
    Trainer(const DistanceMatrix& d, const RlParams& p, Rng& rng, const RlInstrumentation& hooks)
        : d_(d), n_(d.size()), p_(p), rng_(rng), hooks_(hooks), q_(n_), visited_(n_, 0) {
        const double scale = d.max_entry();
        reward_.resize(n_ * n_, 0.0);
        if (scale > 0.0)
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j) reward_[i * n_ + j] = -d(i, j) / scale;
    }

    /// Runs one episode and returns the constructed tour.
    Tour episode(bool on_policy, Policy policy, double temperature) {
        Tour tour;
        tour.order.reserve(n_);
        std::fill(visited_.begin(), visited_.end(), 0);
        const auto start = static_cast<std::size_t>(rng_.below(n_));
        visit(tour, start);
        remaining_ = n_ - 1;

        std::size_t s = start;
        std::size_t a = choose(s, policy, temperature);
        while (true) {
            const double r = reward(s, a);
            visit(tour, a);
            --remaining_;

            std::size_t next_action;
            double bootstrap;
            if (remaining_ == 0) {
                // Only the closing move back to the start remains.
                next_action = start;
                bootstrap = q_.at(a, start);
            } else if (on_policy) {
                next_action = choose(a, policy, temperature);
                bootstrap = q_.at(a, next_action);
            } else {
                next_action = n_;  // chosen at the top of the next step
                bootstrap = max_unvisited(a);
            }
            q_.at(s, a) = td_update(q_.at(s, a), p_.learning_rate, r, p_.discount, bootstrap);

            s = a;
            if (remaining_ == 0) break;
            a = on_policy ? next_action : choose(s, policy, temperature);
        }
        // Terminal closing edge: no bootstrap.
        q_.at(s, start) = td_update(q_.at(s, start), p_.learning_rate, reward(s, start), p_.discount, 0.0);
        return tour;
    }

    Tour greedy_rollout(std::size_t start) {
        Tour tour;
        std::fill(visited_.begin(), visited_.end(), 0);
        visit(tour, start);
        std::size_t s = start;
        for (std::size_t k = 1; k < n_; ++k) {
            s = argmax_unvisited(s);
            visit(tour, s);
        }
        return tour;
    }

private:
    double reward(std::size_t s, std::size_t a) const noexcept { return reward_[s * n_ + a]; }

    void visit(Tour& tour, std::size_t c) {
        visited_[c] = 1;
        tour.order.push_back(static_cast<City>(c));
    }

    std::size_t argmax_unvisited(std::size_t s) const noexcept {
        std::size_t best = n_;
        for (std::size_t a = 0; a < n_; ++a) {
            if (visited_[a]) continue;
            if (best == n_ || q_.at(s, a) > q_.at(s, best)) best = a;
        }
        return best;
    }

    double max_unvisited(std::size_t s) const noexcept { return q_.at(s, argmax_unvisited(s)); }

    std::size_t nth_unvisited(std::uint64_t k) const noexcept {
        for (std::size_t a = 0; a < n_; ++a) {
            if (visited_[a]) continue;
            if (k-- == 0) return a;
        }
        return n_;
    }

    std::size_t choose(std::size_t s, Policy policy, double temperature) {
        std::size_t choice;
        if (policy == Policy::Boltzmann) {
            candidates_.clear();
            qs_.clear();
            for (std::size_t a = 0; a < n_; ++a) {
                if (visited_[a]) continue;
                candidates_.push_back(a);
                qs_.push_back(q_.at(s, a));
            }
            const std::vector<double> probs = boltzmann_probabilities(qs_, temperature);
            double u = rng_.uniform01();
            choice = candidates_.back();
            for (std::size_t k = 0; k < probs.size(); ++k) {
                u -= probs[k];
                if (u < 0.0) {
                    choice = candidates_[k];
                    break;
                }
            }
        } else if (rng_.bernoulli(p_.epsilon)) {
            choice = nth_unvisited(rng_.below(remaining_));
        } else {
            choice = argmax_unvisited(s);
        }
        if (hooks_.on_choice) hooks_.on_choice(choice, visited_);
        return choice;
    }

    const DistanceMatrix& d_;
    std::size_t n_;
    const RlParams& p_;
    Rng& rng_;
    const RlInstrumentation& hooks_;
    QTable q_;
    std::vector<double> reward_;
    std::vector<std::uint8_t> visited_;
    std::size_t remaining_ = 0;
    std::vector<std::size_t> candidates_;
    std::vector<double> qs_;
};

SolveResult train(const DistanceMatrix& d, const RlParams& p, SolveBudget budget, std::uint64_t seed,
                  bool on_policy, Policy policy, const RlInstrumentation& hooks) {
    check(p);
    Rng rng(seed);
    SearchMonitor monitor(d, budget, seed);
    if (d.size() < 2) throw InvalidParameters("RL solvers need at least two cities");

    Trainer trainer(d, p, rng, hooks);
    for (std::size_t ep = 0; ep < p.episodes; ++ep) {
        if (ep > 0 && monitor.exhausted()) break;
        const double temperature = boltzmann_temperature(ep, p.episodes);
        const Tour tour = trainer.episode(on_policy, policy, temperature);
        monitor.count();
        monitor.offer(tour);
    }
    const Tour greedy = trainer.greedy_rollout(0);
    SolveResult result = std::move(monitor).finish();
    result.greedy_rollout_cost = tour_length(greedy, d);
    return result;
}

}  // namespace

std::vector<double> boltzmann_probabilities(std::span<const double> q, double temperature) {
    if (q.empty()) throw BoltzmannError(BoltzmannError::Kind::EmptyInput, "empty action-value vector");
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw BoltzmannError(BoltzmannError::Kind::BadTemperature, "temperature must be positive and finite");
    double top = -std::numeric_limits<double>::infinity();
    for (double v : q) {
        if (!std::isfinite(v)) throw BoltzmannError(BoltzmannError::Kind::NonFiniteInput, "non-finite action value");
        top = std::max(top, v);
    }
    std::vector<double> p(q.size());
    double total = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        p[k] = std::exp(q[k] / temperature - top / temperature);
        total += p[k];
    }
    for (double& v : p) v /= total;
    return p;
}

double boltzmann_temperature(std::size_t episode, std::size_t episodes) noexcept {
    constexpr double kStart = 1.0;
    constexpr double kEnd = 0.1;
    if (episodes <= 1) return kStart;
    const double frac = static_cast<double>(episode) / static_cast<double>(episodes - 1);
    return kStart + (kEnd - kStart) * frac;
}

SolveResult solve_qlearning(const DistanceMatrix& d, const RlParams& p, SolveBudget budget, std::uint64_t seed) {
    return train(d, p, budget, seed, false, Policy::EpsilonGreedy, {});
}

SolveResult solve_qlearning(const DistanceMatrix& d, const RlParams& p, SolveBudget budget, std::uint64_t seed,
                            const RlInstrumentation& instrumentation) {
    return train(d, p, budget, seed, false, Policy::EpsilonGreedy, instrumentation);
}

SolveResult solve_sarsa(const DistanceMatrix& d, const RlParams& p, SolveBudget budget, std::uint64_t seed,
                        SarsaVariant variant) {
    return solve_sarsa(d, p, budget, seed, variant, {});
}

SolveResult solve_sarsa(const DistanceMatrix& d, const RlParams& p, SolveBudget budget, std::uint64_t seed,
                        SarsaVariant variant, const RlInstrumentation& instrumentation) {
    const Policy policy = variant == SarsaVariant::BoltzmannO1 ? Policy::Boltzmann : Policy::EpsilonGreedy;
    return train(d, p, budget, seed, true, policy, instrumentation);
}

}  // namespace tsplab::rl
