#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "tsplab/instance.hpp"
#include "tsplab/tour.hpp"

namespace oracle {

// Plain sequential closed-path sum.
inline double naive_length(const std::vector<tsplab::City>& order, const tsplab::DistanceMatrix& d) {
    double total = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto a = static_cast<std::size_t>(order[i]);
        const auto b = static_cast<std::size_t>(order[(i + 1) % order.size()]);
        total += d(a, b);
    }
    return total;
}

struct BruteForce {
    double cost = std::numeric_limits<double>::infinity();
    std::vector<tsplab::City> tour;
};

// Every permutation with city 0 fixed first.
inline BruteForce brute_force_tsp(const tsplab::DistanceMatrix& d) {
    const std::size_t n = d.size();
    BruteForce best;
    if (n == 0) return {0.0, {}};
    std::vector<tsplab::City> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        const double c = naive_length(perm, d);
        if (c < best.cost) {
            best.cost = c;
            best.tour = perm;
        }
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return best;
}

inline double relative_diff(double a, double b) {
    return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Minimum spanning tree weight by enumerating every labelled tree through
// its Pruefer sequence. n^(n-2) trees, so keep n <= 8.
inline double brute_force_mst(const tsplab::DistanceMatrix& d) {
    const std::size_t n = d.size();
    if (n < 2) return 0.0;
    if (n == 2) return d(0, 1);
    const std::size_t len = n - 2;
    std::vector<std::size_t> seq(len, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<std::size_t> degree(n, 1);
        for (auto s : seq) ++degree[s];
        double w = 0.0;
        for (auto s : seq) {
            std::size_t leaf = 0;
            while (degree[leaf] != 1) ++leaf;
            w += d(leaf, s);
            --degree[leaf];
            --degree[s];
        }
        std::size_t u = n, v = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (degree[i] == 1) (u == n ? u : v) = i;
        }
        w += d(u, v);
        best = std::min(best, w);

        std::size_t k = 0;
        while (k < len && ++seq[k] == n) seq[k++] = 0;
        if (k == len) break;
    }
    return best;
}

// True when no 2-opt move shortens the tour by more than eps.
inline bool is_two_opt_optimal(const std::vector<tsplab::City>& order, const tsplab::DistanceMatrix& d,
                               double eps = 1e-9) {
    const std::size_t n = order.size();
    const double base = naive_length(order, d);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            std::vector<tsplab::City> t = order;
            std::reverse(t.begin() + static_cast<std::ptrdiff_t>(i + 1), t.begin() + static_cast<std::ptrdiff_t>(j + 1));
            if (naive_length(t, d) < base - eps) return false;
        }
    }
    return true;
}

inline bool is_permutation_of_n(const std::vector<tsplab::City>& order, std::size_t n) {
    if (order.size() != n) return false;
    std::vector<char> seen(n, 0);
    for (auto c : order) {
        if (c < 0 || static_cast<std::size_t>(c) >= n || seen[static_cast<std::size_t>(c)]) return false;
        seen[static_cast<std::size_t>(c)] = 1;
    }
    return true;
}

// Triangle inequality over all triples.
inline bool is_metric(const tsplab::DistanceMatrix& d) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (d(i, j) > d(i, k) + d(k, j) + 1e-9) return false;
    return true;
}

}  // namespace oracle
