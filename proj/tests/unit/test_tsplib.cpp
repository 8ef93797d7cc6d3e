#include <doctest.h>

#include <cmath>

#include "../support/fixtures.hpp"
#include "tsplab/instance.hpp"

using namespace tsplab;

TEST_CASE("minimal EUC_2D file") {
    const auto inst = parse_instance(
        "NAME : tri\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nEOF\n");
    CHECK(inst.dimension == 3);
    CHECK(inst.kind == EdgeWeightKind::Euc2D);
    REQUIRE(inst.coords.size() == 3);
    CHECK(inst.coords[1].x == 3.0);
    const auto d = build_distance_matrix(inst);
    CHECK(d(0, 1) == 3.0);
    CHECK(d(0, 2) == 4.0);
    CHECK(d(1, 2) == 5.0);
}

TEST_CASE("explicit full matrix") {
    const auto inst = parse_instance(
        "NAME : two\nTYPE : TSP\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : FULL_MATRIX\n"
        "EDGE_WEIGHT_SECTION\n0 5\n5 0\n");
    CHECK(inst.kind == EdgeWeightKind::Explicit);
    const auto d = build_distance_matrix(inst);
    CHECK(d(0, 1) == 5.0);
    CHECK(d(1, 0) == 5.0);
    CHECK(d(0, 0) == 0.0);
}

TEST_CASE("lower-diagonal and upper-row formats give the same matrix") {
    const auto lower = parse_instance(
        "NAME : l\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : LOWER_DIAG_ROW\n"
        "EDGE_WEIGHT_SECTION\n0\n3 0\n4 5 0\nEOF\n");
    const auto upper = parse_instance(
        "NAME : u\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : UPPER_ROW\n"
        "EDGE_WEIGHT_SECTION\n3 4\n5\n");
    const auto a = build_distance_matrix(lower);
    const auto b = build_distance_matrix(upper);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(a(i, j) == b(i, j));
    CHECK(a(1, 2) == 5.0);
}

TEST_CASE("keyword order does not matter and EOF is optional") {
    const auto inst = parse_instance(
        "EDGE_WEIGHT_TYPE: EUC_2D\nDIMENSION: 2\nTYPE: TSP\nNAME: x\nNODE_COORD_SECTION\n2 1 1\n1 0 0\n");
    CHECK(inst.coords[0].x == 0.0);
    CHECK(inst.coords[1].x == 1.0);
}

TEST_CASE("parse errors") {
    auto kind_of = [](const char* text) {
        try {
            parse_instance(text);
        } catch (const ParseError& e) {
            return static_cast<int>(e.kind());
        }
        return -1;
    };
    CHECK(kind_of("NAME : a\nTYPE : TSP\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n") ==
          static_cast<int>(ParseError::Kind::MissingField));
    CHECK(kind_of("NAME : a\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n") ==
          static_cast<int>(ParseError::Kind::CountMismatch));
    CHECK(kind_of("NAME : a\nTYPE : TSP\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : ATT\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n") ==
          static_cast<int>(ParseError::Kind::UnsupportedFormat));
    CHECK(kind_of("NAME : a\nTYPE : TSP\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : "
                  "UPPER_DIAG_COL\nEDGE_WEIGHT_SECTION\n0 1 0\n") ==
          static_cast<int>(ParseError::Kind::UnsupportedFormat));
    CHECK(kind_of("NAME : a\nTYPE : ATSP\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n") ==
          static_cast<int>(ParseError::Kind::UnsupportedFormat));
}

TEST_CASE("unsupported format error names the offender") {
    try {
        parse_instance("NAME : a\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : CEIL_2D\nNODE_COORD_SECTION\n1 0 0\n2 1 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("CEIL_2D") != std::string::npos);
    }
}

TEST_CASE("asymmetric explicit matrix is rejected") {
    CHECK_THROWS_AS(build_distance_matrix(parse_instance(
                        "NAME : a\nTYPE : TSP\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : "
                        "FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 5\n4 0\n")),
                    std::exception);
    try {
        DistanceMatrix::from_values(2, {0, 5, 4, 0});
        FAIL("expected DistanceError");
    } catch (const DistanceError& e) {
        CHECK(e.kind() == DistanceError::Kind::NonSymmetric);
    }
    try {
        DistanceMatrix::from_values(2, {0, -1, -1, 0});
        FAIL("expected DistanceError");
    } catch (const DistanceError& e) {
        CHECK(e.kind() == DistanceError::Kind::NegativeDistance);
    }
}

TEST_CASE("tsplib_nint rounding") {
    const auto inst = fixture::points_instance({{0, 0}, {1, 1}});
    CHECK(build_distance_matrix(inst, Rounding::TsplibNint)(0, 1) == 1.0);
    CHECK(build_distance_matrix(inst, Rounding::None)(0, 1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(tsplib_nint(2.5) == 3.0);
    CHECK(tsplib_nint(2.4999) == 2.0);
}

TEST_CASE("GEO distances match the independent transcription") {
    // burma14, GEO. Values from tests/oracles/frozen_values.py style script:
    // d(1,2) = 153, d(1,3) = 510, d(5,10) = 1261 (TSPLIB 1-based ids).
    const auto inst = load_instance(fixture::data_path("burma14.tsp"));
    CHECK(inst.kind == EdgeWeightKind::Geo);
    const auto d = build_distance_matrix(inst, Rounding::TsplibNint);
    CHECK(d(0, 1) == 153.0);
    CHECK(d(0, 2) == 510.0);
    CHECK(d(4, 9) == 1261.0);
    // rounding flag does not touch GEO
    const auto raw = build_distance_matrix(inst, Rounding::None);
    CHECK(raw(0, 1) == 153.0);
}

TEST_CASE("generator determinism and degenerate range") {
    const auto a = generate_random_instance(10, 7);
    const auto b = generate_random_instance(10, 7);
    CHECK(a == b);
    CHECK(render_instance(a) == render_instance(b));
    CHECK(a.name == "rand_n10_s7");
    const auto z = generate_random_instance(2, 0, 0.0, 0.0);
    const auto d = build_distance_matrix(z);
    CHECK(d(0, 1) == 0.0);
    CHECK(z.coords[0].x == 0.0);
}

TEST_CASE("render and parse round trip") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = generate_random_instance(3 + seed, seed);
        CHECK(parse_instance(render_instance(inst)) == inst);
    }
    const auto expl = parse_instance(
        "NAME : u\nTYPE : TSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : UPPER_ROW\n"
        "EDGE_WEIGHT_SECTION\n3 4\n5\n");
    CHECK(parse_instance(render_instance(expl)) == expl);
}

TEST_CASE("random EUC_2D matrices are metric") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = fixture::random_matrix(15, seed);
        CHECK(d.satisfies_triangle_inequality(1e-9));
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(d(i, i) == 0.0);
            for (std::size_t j = 0; j < d.size(); ++j) REQUIRE(d(i, j) == d(j, i));
        }
    }
}
