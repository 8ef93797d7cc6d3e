#include <doctest.h>

#include <algorithm>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "tsplab/constructive.hpp"

using namespace tsplab;
using namespace tsplab::constructive;

namespace {

// Hull vertices in `tour`, read cyclically from the position of hull[0].
std::vector<City> hull_subsequence(const std::vector<City>& tour, const std::vector<City>& hull) {
    std::vector<City> seq;
    for (City c : tour)
        if (std::find(hull.begin(), hull.end(), c) != hull.end()) seq.push_back(c);
    const auto it = std::find(seq.begin(), seq.end(), hull.front());
    std::rotate(seq.begin(), it, seq.end());
    return seq;
}

bool same_cycle(const std::vector<City>& seq, std::vector<City> hull) {
    if (seq == hull) return true;
    std::reverse(hull.begin() + 1, hull.end());
    return seq == hull;
}

}  // namespace

TEST_CASE("MST small cases") {
    const auto tri = minimum_spanning_tree(fixture::triangle345());
    REQUIRE(tri.size() == 2);
    CHECK(total_weight(tri) == 7.0);
    CHECK(tri[0] == Edge{0, 1, 3.0});
    CHECK(tri[1] == Edge{0, 2, 4.0});
    const auto line = minimum_spanning_tree(fixture::matrix_of({{0, 0}, {1, 0}, {3, 0}}));
    CHECK(total_weight(line) == 3.0);
    CHECK(line[1] == Edge{1, 2, 2.0});
}

TEST_CASE("MST weight equals the exhaustive spanning-tree minimum") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto d = fixture::random_matrix(3 + seed % 6, seed);
        CHECK(total_weight(minimum_spanning_tree(d)) == doctest::Approx(oracle::brute_force_mst(d)).epsilon(1e-12));
    }
}

TEST_CASE("greedy matching pairs everything") {
    const auto d = fixture::matrix_of({{0, 0}, {1, 0}, {10, 0}, {11, 0}});
    const auto m = greedy_matching(d, {0, 1, 2, 3});
    REQUIRE(m.size() == 2);
    CHECK(total_weight(m) == 2.0);
}

TEST_CASE("christofides small cases") {
    CHECK(tour_length(christofides(fixture::triangle345()).tour, fixture::triangle345()) == 12.0);
    const auto sq = fixture::unit_square();
    const auto r = christofides(sq);
    CHECK(tour_length(r.tour, sq) == doctest::Approx(oracle::brute_force_tsp(sq).cost));
    REQUIRE(r.metric.has_value());
    CHECK(*r.metric);
}

TEST_CASE("christofides within twice the optimum and deterministic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto d = fixture::random_matrix(4 + seed % 6, 500 + seed);
        const auto a = christofides(d);
        REQUIRE(validate_tour(a.tour.order, d.size()).valid());
        CHECK(tour_length(a.tour, d) <= 2.0 * oracle::brute_force_tsp(d).cost + 1e-9);
        CHECK(christofides(d).tour.order == a.tour.order);
    }
}

TEST_CASE("christofides flags non-metric input") {
    // d(0,2) = 10 > d(0,1) + d(1,2) = 2
    const auto d = DistanceMatrix::from_values(3, {0, 1, 10, 1, 0, 1, 10, 1, 0});
    const auto r = christofides(d);
    REQUIRE(r.metric.has_value());
    CHECK_FALSE(*r.metric);
    CHECK(validate_tour(r.tour.order, 3).valid());
}

TEST_CASE("convex hull") {
    const std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(convex_hull(square) == std::vector<City>{0, 1, 2, 3});
    const std::vector<Point> tri{{0, 0}, {4, 0}, {0, 4}, {1, 1}};
    CHECK(convex_hull(tri) == std::vector<City>{0, 1, 2});
    const std::vector<Point> line{{0, 0}, {2, 0}, {1, 0}, {3, 0}};
    try {
        convex_hull(line);
        FAIL("expected DegenerateHull");
    } catch (const DegenerateHull& e) {
        CHECK(e.extremes() == std::vector<City>{0, 3});
    }
    // collinear boundary point on an edge is excluded
    const std::vector<Point> edge_mid{{0, 0}, {1, 0}, {2, 0}, {1, 2}};
    CHECK(convex_hull(edge_mid) == std::vector<City>{0, 2, 3});
}

TEST_CASE("hull is convex and counter-clockwise") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = generate_random_instance(30, seed);
        const auto hull = convex_hull(inst.coords);
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const Point& a = inst.coords[static_cast<std::size_t>(hull[i])];
            const Point& b = inst.coords[static_cast<std::size_t>(hull[(i + 1) % hull.size()])];
            const Point& c = inst.coords[static_cast<std::size_t>(hull[(i + 2) % hull.size()])];
            CHECK((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) > 0.0);
        }
    }
}

TEST_CASE("convex hull tour") {
    const auto sq = fixture::points_instance({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const auto dsq = build_distance_matrix(sq);
    CHECK(tour_length(convex_hull_tour(sq, dsq), dsq) == 4.0);

    const auto centre = fixture::points_instance({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
    const auto dc = build_distance_matrix(centre);
    CHECK(tour_length(convex_hull_tour(centre, dc), dc) == doctest::Approx(oracle::brute_force_tsp(dc).cost));

    const auto tri = fixture::points_instance({{0, 0}, {4, 0}, {0, 4}, {1, 1}});
    const auto dt = build_distance_matrix(tri);
    const auto t = convex_hull_tour(tri, dt);
    CHECK(same_cycle(hull_subsequence(t.order, {0, 1, 2}), {0, 1, 2}));

    Instance expl;
    expl.name = "m";
    expl.dimension = 2;
    expl.kind = EdgeWeightKind::Explicit;
    expl.weights = {0, 1, 1, 0};
    CHECK_THROWS_AS(convex_hull_tour(expl, build_distance_matrix(expl)), NoCoordinates);
}

TEST_CASE("hull tour keeps hull order on random point sets, both criteria") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = generate_random_instance(5 + seed, seed);
        const auto d = build_distance_matrix(inst);
        const auto hull = convex_hull(inst.coords);
        for (auto crit : {InsertionCriterion::Ratio, InsertionCriterion::Detour}) {
            const auto t = convex_hull_tour(inst, d, crit);
            REQUIRE(validate_tour(t.order, d.size()).valid());
            CHECK(same_cycle(hull_subsequence(t.order, hull), hull));
        }
    }
}

TEST_CASE("hull tour handles collinear input") {
    const auto line = fixture::points_instance({{0, 0}, {2, 0}, {1, 0}, {3, 0}});
    const auto d = build_distance_matrix(line);
    const auto t = convex_hull_tour(line, d);
    CHECK(validate_tour(t.order, 4).valid());
    CHECK(tour_length(t, d) == 6.0);
}
