#include <algorithm>
#include <limits>
#include <numeric>

#include "tsplab/constructive.hpp"

namespace tsplab::constructive {
namespace {

double cross(const Point& o, const Point& a, const Point& b) noexcept {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double insertion_value(const DistanceMatrix& d, std::size_t i, std::size_t k, std::size_t j,
                       InsertionCriterion criterion) noexcept {
    const double around = d(i, k) + d(k, j);
    if (criterion == InsertionCriterion::Detour) return around - d(i, j);
    const double base = d(i, j);
    if (base > 0.0) return around / base;
    // Zero-length edge (coincident endpoints or a one-city tour).
    return around > 0.0 ? around * 1e300 : 1.0;
}

}  // namespace

std::vector<City> convex_hull(const std::vector<Point>& points) {
    const std::size_t n = points.size();
    std::vector<City> idx(n);
    std::iota(idx.begin(), idx.end(), City{0});
    std::sort(idx.begin(), idx.end(), [&](City a, City b) {
        const Point& p = points[static_cast<std::size_t>(a)];
        const Point& q = points[static_cast<std::size_t>(b)];
        if (p.x != q.x) return p.x < q.x;
        if (p.y != q.y) return p.y < q.y;
        return a < b;
    });
    if (n < 3) throw DegenerateHull("convex hull needs at least 3 points", {idx.front(), idx.back()});

    auto at = [&](City c) -> const Point& { return points[static_cast<std::size_t>(c)]; };
    std::vector<City> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(at(hull[k - 2]), at(hull[k - 1]), at(idx[i])) <= 0.0) --k;
        hull[k++] = idx[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(at(hull[k - 2]), at(hull[k - 1]), at(idx[i])) <= 0.0) --k;
        hull[k++] = idx[i];
    }
    hull.resize(k - 1);  // last point repeats the first

    if (hull.size() < 3) {
        throw DegenerateHull("all points are collinear", {idx.front(), idx.back()});
    }
    return hull;
}

Tour convex_hull_tour(const Instance& inst, const DistanceMatrix& d, InsertionCriterion criterion) {
    if (!inst.has_coordinates()) throw NoCoordinates("convex hull insertion needs coordinates: " + inst.name);
    const std::size_t n = d.size();
    if (inst.coords.size() != n) throw DimensionMismatch("coordinate count differs from matrix size");

    std::vector<City> start;
    try {
        start = convex_hull(inst.coords);
    } catch (const DegenerateHull& e) {
        start = e.extremes();
        if (start.size() == 2 && start[0] == start[1]) start.pop_back();
    }

    // Tour as a successor list.
    std::vector<City> succ(n, -1);
    std::vector<std::uint8_t> inserted(n, 0);
    for (std::size_t k = 0; k < start.size(); ++k) {
        succ[static_cast<std::size_t>(start[k])] = start[(k + 1) % start.size()];
        inserted[static_cast<std::size_t>(start[k])] = 1;
    }

    // Per uninserted city: best criterion value and the start city of that edge.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> best_value(n, kInf);
    std::vector<City> best_edge(n, -1);

    auto consider = [&](std::size_t k, City u) {
        const auto ui = static_cast<std::size_t>(u);
        const auto vi = static_cast<std::size_t>(succ[ui]);
        const double value = insertion_value(d, ui, k, vi, criterion);
        if (best_edge[k] < 0 || value < best_value[k] || (value == best_value[k] && u < best_edge[k])) {
            best_value[k] = value;
            best_edge[k] = u;
        }
    };
    auto rescan = [&](std::size_t k) {
        best_value[k] = kInf;
        best_edge[k] = -1;
        for (std::size_t u = 0; u < n; ++u)
            if (inserted[u]) consider(k, static_cast<City>(u));
    };
    for (std::size_t k = 0; k < n; ++k)
        if (!inserted[k]) rescan(k);

    for (std::size_t count = start.size(); count < n; ++count) {
        std::size_t pick = n;
        for (std::size_t k = 0; k < n; ++k) {
            if (inserted[k]) continue;
            if (pick == n || best_value[k] < best_value[pick]) pick = k;
        }
        const City u = best_edge[pick];
        const City v = succ[static_cast<std::size_t>(u)];
        succ[static_cast<std::size_t>(u)] = static_cast<City>(pick);
        succ[pick] = v;
        inserted[pick] = 1;

        for (std::size_t k = 0; k < n; ++k) {
            if (inserted[k]) continue;
            if (best_edge[k] == u) {
                rescan(k);
            } else {
                consider(k, u);
                consider(k, static_cast<City>(pick));
            }
        }
    }

    Tour t;
    t.order.reserve(n);
    City c = start.front();
    for (std::size_t k = 0; k < n; ++k) {
        t.order.push_back(c);
        c = succ[static_cast<std::size_t>(c)];
    }
    return t;
}

}  // namespace tsplab::constructive
