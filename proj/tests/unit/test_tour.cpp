#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "tsplab/rng.hpp"
#include "tsplab/tour.hpp"

using namespace tsplab;

TEST_CASE("tour_length basics") {
    const auto d = fixture::triangle345();
    CHECK(tour_length(Tour{{0, 1, 2}}, d) == 12.0);
    const auto two = DistanceMatrix::from_values(2, {0, 5, 5, 0});
    CHECK(tour_length(Tour{{0, 1}}, two) == 10.0);
    CHECK_THROWS_AS(tour_length(Tour{{0, 1}}, d), DimensionMismatch);
}

TEST_CASE("tour_length is exactly rotation and reversal invariant") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto d = fixture::random_matrix(13, seed);
        Rng rng(seed);
        auto order = random_tour(13, rng).order;
        const double base = tour_length(order, d);
        for (std::size_t r = 0; r < order.size(); ++r) {
            std::rotate(order.begin(), order.begin() + 1, order.end());
            REQUIRE(tour_length(order, d) == base);
            auto rev = order;
            std::reverse(rev.begin(), rev.end());
            REQUIRE(tour_length(rev, d) == base);
        }
        CHECK(std::abs(base - oracle::naive_length(order, d)) <= 1e-9 * base);
    }
}

TEST_CASE("validate_tour verdicts") {
    const std::vector<City> ok{0, 2, 1}, dup{0, 0, 1}, short_{0, 1}, range{0, 3, 1};
    CHECK(validate_tour(ok, 3).valid());
    const auto v1 = validate_tour(dup, 3);
    CHECK(v1.kind == TourVerdict::Kind::DuplicateIndex);
    CHECK(v1.value == 0);
    CHECK(validate_tour(short_, 3).kind == TourVerdict::Kind::WrongLength);
    const auto v3 = validate_tour(range, 3);
    CHECK(v3.kind == TourVerdict::Kind::OutOfRange);
    CHECK(v3.value == 3);
    CHECK(validate_tour({}, 0).valid());
}

TEST_CASE("nearest neighbour construction") {
    const auto d = fixture::triangle345();
    CHECK(nearest_neighbor_tour(d, 0).order == std::vector<City>{0, 1, 2});
    const auto line = fixture::matrix_of({{0, 0}, {1, 0}, {3, 0}, {7, 0}});
    const auto t = nearest_neighbor_tour(line, 0);
    CHECK(t.order == std::vector<City>{0, 1, 2, 3});
    CHECK(tour_length(t, line) == 14.0);
    // city 0 at the centre, 1 and 2 equidistant: lower index wins
    const auto tie = fixture::matrix_of({{0, 0}, {1, 0}, {-1, 0}});
    CHECK(nearest_neighbor_tour(tie, 0).order == std::vector<City>{0, 1, 2});
    Rng rng(1);
    const auto r = nearest_neighbor_tour(fixture::random_matrix(9, 2), rng);
    CHECK(validate_tour(r.order, 9).valid());
}

TEST_CASE("two_opt uncrosses the square") {
    const auto d = fixture::unit_square();
    Rng rng(0);
    Tour crossed{{0, 2, 1, 3}};
    CHECK(tour_length(crossed, d) == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)));
    const auto t = two_opt(crossed, d, TwoOptMode::full(), rng);
    CHECK(tour_length(t, d) == doctest::Approx(4.0));
    // fixed point
    Tour good{{0, 1, 2, 3}};
    CHECK(two_opt(good, d, TwoOptMode::full(), rng).order == good.order);
}

TEST_CASE("full 2-opt reaches a local optimum") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto d = fixture::random_matrix(8 + seed % 5, seed);
        Rng rng(seed);
        const Tour start = random_tour(d.size(), rng);
        const Tour t = two_opt(start, d, TwoOptMode::full(), rng);
        REQUIRE(validate_tour(t.order, d.size()).valid());
        CHECK(tour_length(t, d) <= tour_length(start, d));
        CHECK(oracle::is_two_opt_optimal(t.order, d));
    }
}

TEST_CASE("stochastic 2-opt never worsens and counts its tries") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto d = fixture::random_matrix(12, seed);
        Rng rng(seed);
        Tour t = random_tour(12, rng);
        const double before = tour_length(t, d);
        const auto tries = two_opt_in_place(t, d, TwoOptMode::stochastic(), rng);
        CHECK(tries == 12);
        CHECK(validate_tour(t.order, 12).valid());
        CHECK(tour_length(t, d) <= before + 1e-9);
    }
}

TEST_CASE("two_opt_delta matches recomputation") {
    const auto d = fixture::random_matrix(10, 4);
    Rng rng(4);
    const Tour t = random_tour(10, rng);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t j = i + 2; j < 10; ++j) {
            if (i == 0 && j == 9) continue;
            Tour u = t;
            apply_two_opt(u.order, i, j);
            CHECK(two_opt_delta(t.order, d, i, j) ==
                  doctest::Approx(oracle::naive_length(u.order, d) - oracle::naive_length(t.order, d)).epsilon(1e-9));
        }
    }
}
