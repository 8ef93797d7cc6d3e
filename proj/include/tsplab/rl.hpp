#pragma once

// Tabular reinforcement-learning tour constructors. The state is the current
// city; actions are the unvisited cities; the reward of a move is minus its
// distance divided by the largest matrix entry, so rewards lie in [-1, 0].

#include <cstdint>
#include <functional>
#include <string>
#include <span>
#include <stdexcept>
#include <vector>

#include "tsplab/solve.hpp"

namespace tsplab::rl {

struct RlParams {
    double learning_rate = 0.44;  ///< lr
    double discount = 0.97;       ///< df
    double epsilon = 0.09;        ///< exploration rate
    std::size_t episodes = 4266;  ///< E
};

enum class SarsaVariant { Baseline, BoltzmannO1 };

/// Row-major n*n action-value table; values[s*n + a].
class QTable {
public:
    explicit QTable(std::size_t n) : n_(n), values_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& at(std::size_t s, std::size_t a) noexcept { return values_[s * n_ + a]; }
    double at(std::size_t s, std::size_t a) const noexcept { return values_[s * n_ + a]; }

private:
    std::size_t n_;
    std::vector<double> values_;
};

/// One temporal-difference step: q + lr * (reward + df * bootstrap - q).
inline double td_update(double q, double learning_rate, double reward, double discount, double bootstrap) noexcept {
    return q + learning_rate * (reward + discount * bootstrap - q);
}

class BoltzmannError : public std::invalid_argument {
public:
    enum class Kind { EmptyInput, NonFiniteInput, BadTemperature };

    BoltzmannError(Kind kind, const std::string& message) : std::invalid_argument(message), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Softmax of q / temperature, shifted by the maximum for stability.
std::vector<double> boltzmann_probabilities(std::span<const double> q, double temperature);

/// Temperature used by the Boltzmann SARSA variant in `episode` (0-based) of
/// `episodes`: linear from 1.0 down to 0.1.
double boltzmann_temperature(std::size_t episode, std::size_t episodes) noexcept;

SolveResult solve_qlearning(const DistanceMatrix& d, const RlParams& p, SolveBudget budget, std::uint64_t seed);

SolveResult solve_sarsa(const DistanceMatrix& d, const RlParams& p, SolveBudget budget, std::uint64_t seed,
                        SarsaVariant variant = SarsaVariant::Baseline);

/// Test hook: sees every training choice together with the visited mask
/// in effect when the choice was made.
struct RlInstrumentation {
    std::function<void(std::size_t chosen, std::span<const std::uint8_t> visited)> on_choice;
};

SolveResult solve_qlearning(const DistanceMatrix& d, const RlParams& p, SolveBudget budget, std::uint64_t seed,
                            const RlInstrumentation& instrumentation);
SolveResult solve_sarsa(const DistanceMatrix& d, const RlParams& p, SolveBudget budget, std::uint64_t seed,
                        SarsaVariant variant, const RlInstrumentation& instrumentation);

}  // namespace tsplab::rl
