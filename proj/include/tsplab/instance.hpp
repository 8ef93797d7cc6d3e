#pragma once

// TSPLIB ingestion, distance matrices and seeded random instances.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsplab {

enum class EdgeWeightKind { Euc2D, Geo, Explicit };

std::string_view to_string(EdgeWeightKind kind) noexcept;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// A symmetric TSP instance. Coordinates are stored for EUC_2D and GEO;
/// EXPLICIT instances carry a full row-major n*n weight block instead.
struct Instance {
    std::string name;
    std::size_t dimension = 0;
    EdgeWeightKind kind = EdgeWeightKind::Euc2D;
    std::vector<Point> coords;
    std::vector<double> weights;

    bool has_coordinates() const noexcept { return !coords.empty(); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

enum class Rounding { None, TsplibNint };

std::string_view to_string(Rounding rounding) noexcept;
Rounding parse_rounding(std::string_view text);

/// Dense symmetric non-negative matrix with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    /// Validates the invariants. Throws DistanceError on violation.
    static DistanceMatrix from_values(std::size_t n, std::vector<double> values);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }
    const double* data() const noexcept { return data_.data(); }

    double max_entry() const noexcept;
    double mean_entry() const noexcept;

    /// True when d(i,k) <= d(i,j) + d(j,k) + tolerance for every triple.
    bool satisfies_triangle_inequality(double tolerance = 1e-9) const noexcept;

private:
    DistanceMatrix(std::size_t n, std::vector<double> values) : n_(n), data_(std::move(values)) {}

    std::size_t n_ = 0;
    std::vector<double> data_;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { MissingField, CountMismatch, UnsupportedFormat, Malformed };

    ParseError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class DistanceError : public std::runtime_error {
public:
    enum class Kind { NonSymmetric, NegativeDistance, BadShape };

    DistanceError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Parses the TSPLIB subset: TYPE TSP, EDGE_WEIGHT_TYPE EUC_2D | GEO |
/// EXPLICIT, EDGE_WEIGHT_FORMAT FULL_MATRIX | LOWER_DIAG_ROW | UPPER_ROW.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

/// NODE_COORD_SECTION form for coordinate instances, FULL_MATRIX otherwise.
/// Coordinates are written with round-trip precision.
std::string render_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::filesystem::path& path);

DistanceMatrix build_distance_matrix(const Instance& inst, Rounding rounding = Rounding::None);

/// TSPLIB GEO distance between two (latitude, longitude) points given in
/// DDD.MM notation.
double geo_distance(Point a, Point b) noexcept;

/// TSPLIB nint: nearest integer, halves rounded up.
inline double tsplib_nint(double x) noexcept { return static_cast<double>(static_cast<long long>(x + 0.5)); }

/// n points drawn i.i.d. uniform in [lo, hi)^2. Deterministic in its arguments.
Instance generate_random_instance(std::size_t n, std::uint64_t seed, double lo = 0.0, double hi = 100.0);

}  // namespace tsplab
