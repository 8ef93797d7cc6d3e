#pragma once

// Tour representation and the shared construction/improvement primitives.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsplab/instance.hpp"
#include "tsplab/rng.hpp"

namespace tsplab {

using City = std::int32_t;

/// A closed tour stored open: the edge from the last city back to the first
/// is implicit.
struct Tour {
    std::vector<City> order;

    std::size_t size() const noexcept { return order.size(); }
    friend bool operator==(const Tour&, const Tour&) = default;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Closed-tour length. The sum is accumulated in a canonical order (from
/// city 0 toward its lower-indexed neighbour), so every rotation and reversal
/// of the same cycle produces a bit-identical result.
double tour_length(std::span<const City> order, const DistanceMatrix& d);
inline double tour_length(const Tour& t, const DistanceMatrix& d) { return tour_length(t.order, d); }

struct TourVerdict {
    enum class Kind { Valid, WrongLength, DuplicateIndex, OutOfRange };

    Kind kind = Kind::Valid;
    /// Offending index for DuplicateIndex/OutOfRange, observed length for
    /// WrongLength.
    std::int64_t value = 0;

    bool valid() const noexcept { return kind == Kind::Valid; }
    std::string describe() const;
};

TourVerdict validate_tour(std::span<const City> order, std::size_t n);

/// Greedy nearest-neighbour construction; ties go to the lowest index.
Tour nearest_neighbor_tour(const DistanceMatrix& d, City start);
/// As above with a uniformly drawn start city.
Tour nearest_neighbor_tour(const DistanceMatrix& d, Rng& rng);

/// Identity permutation shuffled uniformly.
Tour random_tour(std::size_t n, Rng& rng);

struct TwoOptMode {
    enum class Kind { FullFirstImprovement, Stochastic };

    Kind kind = Kind::FullFirstImprovement;
    std::size_t tries = 0;  ///< Stochastic only; 0 means n.

    static TwoOptMode full() { return {}; }
    static TwoOptMode stochastic(std::size_t tries = 0) { return {Kind::Stochastic, tries}; }
};

/// Change in tour length from reversing order[i+1 .. j] (0 <= i < j < n).
double two_opt_delta(std::span<const City> order, const DistanceMatrix& d, std::size_t i,
                     std::size_t j) noexcept;

/// Reverses order[i+1 .. j].
void apply_two_opt(std::span<City> order, std::size_t i, std::size_t j) noexcept;

/// In-place 2-opt. Returns the number of candidate moves evaluated.
std::uint64_t two_opt_in_place(Tour& t, const DistanceMatrix& d, TwoOptMode mode, Rng& rng);

Tour two_opt(Tour t, const DistanceMatrix& d, TwoOptMode mode, Rng& rng);

}  // namespace tsplab
