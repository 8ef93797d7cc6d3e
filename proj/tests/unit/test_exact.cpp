#include <doctest.h>

#include <cmath>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "tsplab/exact.hpp"

using namespace tsplab;
using namespace tsplab::exact;

TEST_CASE("bound cache") {
    const auto d = fixture::triangle345();
    const auto c = BoundCache::build(d);
    CHECK(c.min1 == std::vector<double>{3, 3, 4});
    CHECK(c.min2 == std::vector<double>{4, 5, 5});
    CHECK(root_lower_bound(c) == 12.0);
}

TEST_CASE("branch and bound on the triangle") {
    for (auto v : {BbVariant::Baseline, BbVariant::EnhancedR1}) {
        const auto r = branch_and_bound(fixture::triangle345(), v);
        CHECK(r.best_cost == 12.0);
        CHECK(r.proven_optimal);
    }
}

TEST_CASE("branch and bound equals brute force; root bound is admissible") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto d = fixture::random_matrix(4 + seed % 6, 700 + seed);
        const double opt = oracle::brute_force_tsp(d).cost;
        const auto base = branch_and_bound(d, BbVariant::Baseline);
        const auto enh = branch_and_bound(d, BbVariant::EnhancedR1);
        CHECK(oracle::relative_diff(base.best_cost, opt) < 1e-9);
        CHECK(base.best_cost == enh.best_cost);
        CHECK(base.best_cost == tour_length(base.best, d));
        CHECK(root_lower_bound(BoundCache::build(d)) <= opt + 1e-9);
        CHECK(enh.initial_incumbent == tour_length(nearest_neighbor_tour(d, 0), d));
        CHECK(std::isinf(base.initial_incumbent));
    }
}

TEST_CASE("frozen optimum of the n=12 seed=3 instance") {
    // Held-Karp in tests/oracles/frozen_values.py.
    const auto d = fixture::random_matrix(12, 3);
    const auto r = branch_and_bound(d, BbVariant::EnhancedR1);
    CHECK(oracle::relative_diff(r.best_cost, 311.79767758671977) < 1e-12);
    CHECK(r.proven_optimal);
}

TEST_CASE("burma14 optimum") {
    const auto d = build_distance_matrix(load_instance(fixture::data_path("burma14.tsp")));
    const auto r = branch_and_bound(d, BbVariant::EnhancedR1);
    CHECK(r.best_cost == 3323.0);
}

TEST_CASE("node cap returns a valid tour without the optimality claim") {
    const auto d = fixture::random_matrix(11, 2);
    SearchCap cap;
    cap.max_nodes = 5;
    const auto r = branch_and_bound(d, BbVariant::Baseline, cap);
    CHECK_FALSE(r.proven_optimal);
    CHECK(validate_tour(r.best.order, 11).valid());
    CHECK(r.best_cost == tour_length(r.best, d));
    CHECK_THROWS(branch_and_bound(DistanceMatrix::from_values(1, {0.0})));
}
