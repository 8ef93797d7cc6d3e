#pragma once

#include <string>
#include <vector>

#include "tsplab/instance.hpp"

namespace fixture {

inline tsplab::DistanceMatrix matrix_of(const std::vector<tsplab::Point>& pts) {
    tsplab::Instance inst;
    inst.name = "points";
    inst.dimension = pts.size();
    inst.kind = tsplab::EdgeWeightKind::Euc2D;
    inst.coords = pts;
    return tsplab::build_distance_matrix(inst);
}

inline tsplab::Instance points_instance(const std::vector<tsplab::Point>& pts, std::string name = "points") {
    tsplab::Instance inst;
    inst.name = std::move(name);
    inst.dimension = pts.size();
    inst.kind = tsplab::EdgeWeightKind::Euc2D;
    inst.coords = pts;
    return inst;
}

inline tsplab::DistanceMatrix triangle345() { return matrix_of({{0, 0}, {3, 0}, {0, 4}}); }

inline tsplab::DistanceMatrix unit_square() { return matrix_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline tsplab::DistanceMatrix random_matrix(std::size_t n, std::uint64_t seed) {
    return tsplab::build_distance_matrix(tsplab::generate_random_instance(n, seed));
}

inline std::string data_path(const std::string& name) { return std::string(TSPLAB_TEST_DATA_DIR) + "/" + name; }

}  // namespace fixture
