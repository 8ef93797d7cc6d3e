#pragma once

// Deterministic construction heuristics: Christofides and convex-hull
// insertion.

#include <optional>
#include <stdexcept>
#include <vector>

#include "tsplab/instance.hpp"
#include "tsplab/tour.hpp"

namespace tsplab::constructive {

struct Edge {
    City u = 0;
    City v = 0;
    double w = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

double total_weight(const EdgeList& edges) noexcept;

/// Prim's algorithm rooted at city 0; ties go to the lowest index. Each edge
/// is reported as (parent, child).
EdgeList minimum_spanning_tree(const DistanceMatrix& d);

struct ChristofidesResult {
    Tour tour;
    /// Triangle-inequality check outcome; empty when the instance was too
    /// large to check (n > kMetricCheckLimit).
    std::optional<bool> metric;
};

inline constexpr std::size_t kMetricCheckLimit = 300;

/// MST, greedy matching on odd-degree vertices, Hierholzer circuit,
/// shortcut. Deterministic.
ChristofidesResult christofides(const DistanceMatrix& d);

/// Greedy perfect matching on `vertices` (even count): repeatedly take the
/// cheapest remaining pair, ties by (u, v).
EdgeList greedy_matching(const DistanceMatrix& d, const std::vector<City>& vertices);

class DegenerateHull : public std::invalid_argument {
public:
    DegenerateHull(const std::string& message, std::vector<City> extremes)
        : std::invalid_argument(message), extremes_(std::move(extremes)) {}
    /// The extreme points (two indices for collinear input).
    const std::vector<City>& extremes() const noexcept { return extremes_; }

private:
    std::vector<City> extremes_;
};

/// Andrew's monotone chain. Counter-clockwise, starting at the lowest
/// (x, y) point, collinear boundary points excluded. Throws DegenerateHull
/// when every point is collinear or coincident.
std::vector<City> convex_hull(const std::vector<Point>& points);

class NoCoordinates : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class InsertionCriterion {
    Ratio,   ///< (d(i,k) + d(k,j)) / d(i,j)
    Detour,  ///< d(i,k) + d(k,j) - d(i,j)
};

/// Starts from the hull cycle and inserts the remaining cities one by one,
/// each time choosing the (city, edge) pair with the smallest criterion.
Tour convex_hull_tour(const Instance& inst, const DistanceMatrix& d,
                      InsertionCriterion criterion = InsertionCriterion::Ratio);

}  // namespace tsplab::constructive
