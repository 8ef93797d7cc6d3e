#include "tsplab/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "tsplab/kernels.hpp"
#include "tsplab/rng.hpp"

namespace tsplab {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

bool starts_numeric(std::string_view line) {
    const char c = line.front();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

double parse_number(std::string_view token) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(ParseError::Kind::Malformed, "not a number: '" + std::string(token) + "'");
    }
    return value;
}

void split_tokens(std::string_view line, std::vector<std::string_view>& out) {
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t begin = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > begin) out.push_back(line.substr(begin, i - begin));
    }
}

enum class Section { None, NodeCoord, EdgeWeight, DisplayData };

struct RawFile {
    std::optional<std::string> name;
    std::optional<std::string> type;
    std::optional<std::string> dimension;
    std::optional<std::string> weight_type;
    std::optional<std::string> weight_format;
    std::vector<std::string_view> coord_tokens;
    std::vector<std::string_view> weight_tokens;
    bool has_coord_section = false;
    bool has_weight_section = false;
};

RawFile scan(std::string_view text) {
    RawFile raw;
    Section section = Section::None;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (line.empty()) continue;

        if (section != Section::None && starts_numeric(line)) {
            if (section == Section::NodeCoord) split_tokens(line, raw.coord_tokens);
            if (section == Section::EdgeWeight) split_tokens(line, raw.weight_tokens);
            continue;
        }
        section = Section::None;

        std::string_view key_part;
        std::string_view value;
        if (const auto colon = line.find(':'); colon != std::string_view::npos) {
            key_part = trim(line.substr(0, colon));
            value = trim(line.substr(colon + 1));
        } else {
            const auto space = line.find_first_of(" \t");
            key_part = trim(line.substr(0, space));
            value = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
        }
        const std::string key = upper(key_part);

        if (key == "EOF") break;
        if (key == "NAME") raw.name = std::string(value);
        else if (key == "TYPE") raw.type = upper(value);
        else if (key == "COMMENT") continue;
        else if (key == "DIMENSION") raw.dimension = std::string(value);
        else if (key == "EDGE_WEIGHT_TYPE") raw.weight_type = upper(value);
        else if (key == "EDGE_WEIGHT_FORMAT") raw.weight_format = upper(value);
        else if (key == "NODE_COORD_TYPE" || key == "DISPLAY_DATA_TYPE") continue;
        else if (key == "NODE_COORD_SECTION") {
            section = Section::NodeCoord;
            raw.has_coord_section = true;
        } else if (key == "EDGE_WEIGHT_SECTION") {
            section = Section::EdgeWeight;
            raw.has_weight_section = true;
        } else if (key == "DISPLAY_DATA_SECTION") {
            section = Section::DisplayData;
        } else {
            throw ParseError(ParseError::Kind::UnsupportedFormat, "unsupported keyword " + key);
        }
    }
    return raw;
}

std::size_t parse_dimension(const std::string& text) {
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(ParseError::Kind::Malformed, "DIMENSION is not a positive integer: " + text);
    }
    if (n < 2) throw ParseError(ParseError::Kind::Malformed, "DIMENSION must be at least 2");
    return n;
}

void read_coordinates(const RawFile& raw, Instance& inst) {
    const std::size_t n = inst.dimension;
    if (raw.coord_tokens.size() % 3 != 0 || raw.coord_tokens.size() / 3 != n) {
        throw ParseError(ParseError::Kind::CountMismatch,
                         "NODE_COORD_SECTION has " + std::to_string(raw.coord_tokens.size() / 3) +
                             " complete entries, DIMENSION is " + std::to_string(n));
    }
    inst.coords.assign(n, Point{});
    std::vector<bool> seen(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        const double id = parse_number(raw.coord_tokens[3 * k]);
        if (id < 1 || id > static_cast<double>(n) || id != std::floor(id)) {
            throw ParseError(ParseError::Kind::Malformed,
                             "node id out of range: " + std::string(raw.coord_tokens[3 * k]));
        }
        const auto slot = static_cast<std::size_t>(id) - 1;
        if (seen[slot]) {
            throw ParseError(ParseError::Kind::Malformed,
                             "duplicate node id " + std::string(raw.coord_tokens[3 * k]));
        }
        seen[slot] = true;
        inst.coords[slot] = {parse_number(raw.coord_tokens[3 * k + 1]),
                             parse_number(raw.coord_tokens[3 * k + 2])};
    }
}

void read_weights(const RawFile& raw, Instance& inst) {
    const std::size_t n = inst.dimension;
    if (!raw.weight_format) throw ParseError(ParseError::Kind::MissingField, "missing EDGE_WEIGHT_FORMAT");
    const std::string& format = *raw.weight_format;

    std::size_t expected = 0;
    if (format == "FULL_MATRIX") expected = n * n;
    else if (format == "LOWER_DIAG_ROW") expected = n * (n + 1) / 2;
    else if (format == "UPPER_ROW") expected = n * (n - 1) / 2;
    else throw ParseError(ParseError::Kind::UnsupportedFormat, "unsupported EDGE_WEIGHT_FORMAT " + format);

    if (raw.weight_tokens.size() != expected) {
        throw ParseError(ParseError::Kind::CountMismatch,
                         "EDGE_WEIGHT_SECTION has " + std::to_string(raw.weight_tokens.size()) +
                             " values, " + format + " with DIMENSION " + std::to_string(n) +
                             " needs " + std::to_string(expected));
    }

    inst.weights.assign(n * n, 0.0);
    std::size_t t = 0;
    if (format == "FULL_MATRIX") {
        for (std::size_t i = 0; i < n * n; ++i) inst.weights[i] = parse_number(raw.weight_tokens[t++]);
    } else if (format == "LOWER_DIAG_ROW") {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                const double w = parse_number(raw.weight_tokens[t++]);
                inst.weights[i * n + j] = w;
                inst.weights[j * n + i] = w;
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double w = parse_number(raw.weight_tokens[t++]);
                inst.weights[i * n + j] = w;
                inst.weights[j * n + i] = w;
            }
        }
    }
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

constexpr double kGeoPi = 3.141592;
constexpr double kEarthRadius = 6378.388;

double geo_radians(double value) {
    const double degrees = std::trunc(value);
    const double minutes = value - degrees;
    return kGeoPi * (degrees + 5.0 * minutes / 3.0) / 180.0;
}

}  // namespace

std::string_view to_string(EdgeWeightKind kind) noexcept {
    switch (kind) {
        case EdgeWeightKind::Euc2D: return "EUC_2D";
        case EdgeWeightKind::Geo: return "GEO";
        case EdgeWeightKind::Explicit: return "EXPLICIT";
    }
    return "?";
}

std::string_view to_string(Rounding rounding) noexcept {
    return rounding == Rounding::None ? "none" : "tsplib_nint";
}

Rounding parse_rounding(std::string_view text) {
    if (text == "none") return Rounding::None;
    if (text == "tsplib_nint" || text == "nint") return Rounding::TsplibNint;
    throw std::invalid_argument("unknown rounding '" + std::string(text) + "' (expected none|tsplib_nint)");
}

DistanceMatrix DistanceMatrix::from_values(std::size_t n, std::vector<double> values) {
    if (n == 0 || values.size() != n * n) {
        throw DistanceError(DistanceError::Kind::BadShape, "matrix size does not match n*n");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i * n + i] != 0.0) {
            throw DistanceError(DistanceError::Kind::BadShape,
                                "non-zero diagonal at " + std::to_string(i));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double v = values[i * n + j];
            if (!std::isfinite(v) || v < 0.0) {
                throw DistanceError(DistanceError::Kind::NegativeDistance,
                                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") is negative or not finite");
            }
            if (v != values[j * n + i]) {
                throw DistanceError(DistanceError::Kind::NonSymmetric,
                                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                        ") differs from its transpose");
            }
        }
    }
    return DistanceMatrix(n, std::move(values));
}

double DistanceMatrix::max_entry() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, v);
    return m;
}

double DistanceMatrix::mean_entry() const noexcept {
    if (n_ < 2) return 0.0;
    double total = 0.0;
    for (double v : data_) total += v;
    return total / static_cast<double>(n_ * (n_ - 1));
}

bool DistanceMatrix::satisfies_triangle_inequality(double tolerance) const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k)
                if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + tolerance) return false;
    return true;
}

Instance parse_instance(std::string_view text) {
    const RawFile raw = scan(text);

    if (raw.type && raw.type->rfind("TSP", 0) != 0) {
        throw ParseError(ParseError::Kind::UnsupportedFormat, "unsupported TYPE " + *raw.type);
    }
    if (!raw.dimension) throw ParseError(ParseError::Kind::MissingField, "missing DIMENSION");

    Instance inst;
    inst.name = raw.name.value_or("unnamed");
    inst.dimension = parse_dimension(*raw.dimension);

    std::string weight_type;
    if (raw.weight_type) weight_type = *raw.weight_type;
    else if (raw.has_weight_section) weight_type = "EXPLICIT";
    else if (raw.has_coord_section) weight_type = "EUC_2D";
    else throw ParseError(ParseError::Kind::MissingField, "missing NODE_COORD_SECTION or EDGE_WEIGHT_SECTION");

    if (weight_type == "EUC_2D" || weight_type == "GEO") {
        inst.kind = weight_type == "GEO" ? EdgeWeightKind::Geo : EdgeWeightKind::Euc2D;
        if (!raw.has_coord_section) throw ParseError(ParseError::Kind::MissingField, "missing NODE_COORD_SECTION");
        read_coordinates(raw, inst);
    } else if (weight_type == "EXPLICIT") {
        inst.kind = EdgeWeightKind::Explicit;
        if (!raw.has_weight_section) throw ParseError(ParseError::Kind::MissingField, "missing EDGE_WEIGHT_SECTION");
        read_weights(raw, inst);
    } else {
        throw ParseError(ParseError::Kind::UnsupportedFormat, "unsupported EDGE_WEIGHT_TYPE " + weight_type);
    }
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

std::string render_instance(const Instance& inst) {
    std::string out;
    out += "NAME : " + inst.name + "\n";
    out += "TYPE : TSP\n";
    out += "DIMENSION : " + std::to_string(inst.dimension) + "\n";
    out += "EDGE_WEIGHT_TYPE : " + std::string(to_string(inst.kind)) + "\n";
    if (inst.kind == EdgeWeightKind::Explicit) {
        out += "EDGE_WEIGHT_FORMAT : FULL_MATRIX\n";
        out += "EDGE_WEIGHT_SECTION\n";
        for (std::size_t i = 0; i < inst.dimension; ++i) {
            for (std::size_t j = 0; j < inst.dimension; ++j) {
                if (j) out += ' ';
                out += format_double(inst.weights[i * inst.dimension + j]);
            }
            out += '\n';
        }
    } else {
        out += "NODE_COORD_SECTION\n";
        for (std::size_t i = 0; i < inst.coords.size(); ++i) {
            out += std::to_string(i + 1) + ' ' + format_double(inst.coords[i].x) + ' ' +
                   format_double(inst.coords[i].y) + '\n';
        }
    }
    out += "EOF\n";
    return out;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << render_instance(inst);
}

double geo_distance(Point a, Point b) noexcept {
    const double lat_a = geo_radians(a.x), lon_a = geo_radians(a.y);
    const double lat_b = geo_radians(b.x), lon_b = geo_radians(b.y);
    const double q1 = std::cos(lon_a - lon_b);
    const double q2 = std::cos(lat_a - lat_b);
    const double q3 = std::cos(lat_a + lat_b);
    return std::trunc(kEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

DistanceMatrix build_distance_matrix(const Instance& inst, Rounding rounding) {
    const std::size_t n = inst.dimension;
    std::vector<double> values(n * n, 0.0);

    switch (inst.kind) {
        case EdgeWeightKind::Euc2D: {
            std::vector<double> xs(n), ys(n);
            for (std::size_t i = 0; i < n; ++i) {
                xs[i] = inst.coords[i].x;
                ys[i] = inst.coords[i].y;
            }
            for (std::size_t i = 0; i < n; ++i) {
                std::span<double> row(values.data() + i * n, n);
                kernels::euclidean_row(xs, ys, i, row);
                if (rounding == Rounding::TsplibNint) {
                    for (double& v : row) v = tsplib_nint(v);
                }
            }
            break;
        }
        case EdgeWeightKind::Geo:
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double w = geo_distance(inst.coords[i], inst.coords[j]);
                    values[i * n + j] = w;
                    values[j * n + i] = w;
                }
            }
            break;
        case EdgeWeightKind::Explicit:
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    const double w = inst.weights[i * n + j];
                    if (w < 0.0) {
                        throw DistanceError(DistanceError::Kind::NegativeDistance,
                                            "negative weight at (" + std::to_string(i) + "," +
                                                std::to_string(j) + ")");
                    }
                    if (std::abs(w - inst.weights[j * n + i]) > 1e-9) {
                        throw DistanceError(DistanceError::Kind::NonSymmetric,
                                            "weight (" + std::to_string(i) + "," + std::to_string(j) +
                                                ") differs from its transpose");
                    }
                    // Upper triangle is authoritative.
                    values[i * n + j] = i <= j ? w : inst.weights[j * n + i];
                }
            }
            break;
    }
    return DistanceMatrix::from_values(n, std::move(values));
}

Instance generate_random_instance(std::size_t n, std::uint64_t seed, double lo, double hi) {
    if (n < 2) throw std::invalid_argument("random instance needs n >= 2");
    if (!(lo <= hi)) throw std::invalid_argument("coordinate range is empty");
    Rng rng(seed);
    Instance inst;
    inst.name = "rand_n" + std::to_string(n) + "_s" + std::to_string(seed);
    inst.dimension = n;
    inst.kind = EdgeWeightKind::Euc2D;
    inst.coords.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + (hi - lo) * rng.uniform01();
        const double y = lo + (hi - lo) * rng.uniform01();
        inst.coords.push_back({x, y});
    }
    return inst;
}

}  // namespace tsplab
