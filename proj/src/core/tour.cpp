#include "tsplab/tour.hpp"

#include <algorithm>
#include <numeric>

#include "tsplab/kernels.hpp"

namespace tsplab {
namespace {

// Moves whose gain is below this are treated as neutral.
constexpr double kImprovementEps = 1e-10;

}  // namespace

double tour_length(std::span<const City> order, const DistanceMatrix& d) {
    if (order.size() != d.size()) {
        throw DimensionMismatch("tour has " + std::to_string(order.size()) + " cities, matrix has " +
                                std::to_string(d.size()));
    }
    const std::size_t m = order.size();
    if (m < 2) return 0.0;

    std::size_t start = 0;
    while (start < m && order[start] != 0) ++start;
    if (start == m) start = 0;  // not a permutation; any fixed order will do
    const City prev = order[(start + m - 1) % m];
    const City next = order[(start + 1) % m];
    const int step = next <= prev ? 1 : -1;
    return kernels::closed_path_length(order, start, step, d.data(), d.size());
}

std::string TourVerdict::describe() const {
    switch (kind) {
        case Kind::Valid: return "valid";
        case Kind::WrongLength: return "wrong length " + std::to_string(value);
        case Kind::DuplicateIndex: return "duplicate index " + std::to_string(value);
        case Kind::OutOfRange: return "index out of range " + std::to_string(value);
    }
    return "?";
}

TourVerdict validate_tour(std::span<const City> order, std::size_t n) {
    if (order.size() != n) {
        return {TourVerdict::Kind::WrongLength, static_cast<std::int64_t>(order.size())};
    }
    std::vector<std::uint8_t> seen(n, 0);
    for (const City c : order) {
        if (c < 0 || static_cast<std::size_t>(c) >= n) return {TourVerdict::Kind::OutOfRange, c};
        if (seen[static_cast<std::size_t>(c)]) return {TourVerdict::Kind::DuplicateIndex, c};
        seen[static_cast<std::size_t>(c)] = 1;
    }
    return {};
}

Tour nearest_neighbor_tour(const DistanceMatrix& d, City start) {
    const std::size_t n = d.size();
    if (start < 0 || static_cast<std::size_t>(start) >= n) {
        throw std::out_of_range("start city " + std::to_string(start) + " outside [0, n)");
    }
    Tour t;
    t.order.reserve(n);
    std::vector<std::uint8_t> visited(n, 0);
    auto current = static_cast<std::size_t>(start);
    visited[current] = 1;
    t.order.push_back(start);
    for (std::size_t step = 1; step < n; ++step) {
        current = kernels::nearest_unmasked(d.row(current), visited);
        visited[current] = 1;
        t.order.push_back(static_cast<City>(current));
    }
    return t;
}

Tour nearest_neighbor_tour(const DistanceMatrix& d, Rng& rng) {
    return nearest_neighbor_tour(d, static_cast<City>(rng.below(d.size())));
}

Tour random_tour(std::size_t n, Rng& rng) {
    Tour t;
    t.order.resize(n);
    std::iota(t.order.begin(), t.order.end(), City{0});
    rng.shuffle(std::span<City>(t.order));
    return t;
}

double two_opt_delta(std::span<const City> order, const DistanceMatrix& d, std::size_t i,
                     std::size_t j) noexcept {
    const std::size_t n = order.size();
    const auto a = static_cast<std::size_t>(order[i]);
    const auto b = static_cast<std::size_t>(order[i + 1]);
    const auto c = static_cast<std::size_t>(order[j]);
    const auto e = static_cast<std::size_t>(order[(j + 1) % n]);
    return (d(a, c) + d(b, e)) - (d(a, b) + d(c, e));
}

void apply_two_opt(std::span<City> order, std::size_t i, std::size_t j) noexcept {
    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i + 1),
                 order.begin() + static_cast<std::ptrdiff_t>(j + 1));
}

std::uint64_t two_opt_in_place(Tour& t, const DistanceMatrix& d, TwoOptMode mode, Rng& rng) {
    const std::size_t n = t.size();
    if (n < 4) return 0;
    std::uint64_t evaluated = 0;

    if (mode.kind == TwoOptMode::Kind::FullFirstImprovement) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t i = 0; i + 2 < n; ++i) {
                // (0, n-1) would remove the same edge twice.
                const std::size_t j_end = i == 0 ? n - 1 : n;
                for (std::size_t j = i + 2; j < j_end; ++j) {
                    ++evaluated;
                    if (two_opt_delta(t.order, d, i, j) < -kImprovementEps) {
                        apply_two_opt(t.order, i, j);
                        improved = true;
                    }
                }
            }
        }
        return evaluated;
    }

    const std::size_t tries = mode.tries == 0 ? n : mode.tries;
    for (std::size_t k = 0; k < tries; ++k) {
        // Uniform over the pairs i < j with j >= i+2, excluding (0, n-1).
        std::size_t i = 0;
        std::size_t j = 0;
        do {
            const auto a = static_cast<std::size_t>(rng.below(n));
            const auto b = static_cast<std::size_t>(rng.below(n));
            i = std::min(a, b);
            j = std::max(a, b);
        } while (j < i + 2 || (i == 0 && j == n - 1));
        ++evaluated;
        if (two_opt_delta(t.order, d, i, j) < -kImprovementEps) apply_two_opt(t.order, i, j);
    }
    return evaluated;
}

Tour two_opt(Tour t, const DistanceMatrix& d, TwoOptMode mode, Rng& rng) {
    two_opt_in_place(t, d, mode, rng);
    return t;
}

}  // namespace tsplab
