#pragma once

// Depth-first branch and bound with the two-minimum-edges lower bound.

#include <cstdint>
#include <optional>
#include <vector>

#include "tsplab/instance.hpp"
#include "tsplab/tour.hpp"

namespace tsplab::exact {

enum class BbVariant {
    Baseline,    ///< no initial incumbent, children in index order
    EnhancedR1,  ///< nearest-neighbour incumbent, children by edge weight
};

/// Smallest and second-smallest incident edge weight per city.
struct BoundCache {
    std::vector<double> min1;
    std::vector<double> min2;

    static BoundCache build(const DistanceMatrix& d);
};

/// sum_i (min1[i] + min2[i]) / 2
double root_lower_bound(const BoundCache& cache) noexcept;

struct SearchCap {
    std::optional<std::uint64_t> max_nodes;
    std::optional<double> max_seconds;
};

struct OptResult {
    Tour best;
    double best_cost = 0.0;
    std::uint64_t nodes_expanded = 0;
    double elapsed_s = 0.0;
    bool proven_optimal = true;
    /// Incumbent cost before the search started (infinity for the baseline).
    double initial_incumbent = 0.0;
};

/// Exact search rooted at city 0. When the cap fires the best tour found so
/// far is returned with proven_optimal = false; if none was found yet, the
/// nearest-neighbour tour stands in.
OptResult branch_and_bound(const DistanceMatrix& d, BbVariant variant = BbVariant::Baseline,
                           const SearchCap& cap = {});

}  // namespace tsplab::exact
