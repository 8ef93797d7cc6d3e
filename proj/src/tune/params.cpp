#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "tsplab/rng.hpp"
#include "tsplab/tuner.hpp"

namespace tsplab {
namespace {

using Kind = ParamDef::Kind;

std::vector<ParamSpace> build_spaces() {
    std::vector<ParamSpace> s;
    s.push_back({AlgorithmId::Aco,
                 {{"m", Kind::Integer, 2, 20}, {"alpha", Kind::Real, 1.0, 2.0}, {"beta", Kind::Real, 1.0, 2.0},
                  {"rho", Kind::Real, 0.01, 0.3}}});
    s.push_back({AlgorithmId::Ga,
                 {{"N", Kind::Integer, 5, 100}, {"mu", Kind::Real, 0.01, 0.2}, {"e", Kind::Integer, 1, 5}}});
    s.push_back({AlgorithmId::Alns, {{"lambda", Kind::Real, 0.05, 0.3}, {"rho", Kind::Real, 0.01, 0.3}}});
    s.push_back({AlgorithmId::Tabu, {{"T", Kind::Integer, 3, 30}}});
    s.push_back({AlgorithmId::Sa,
                 {{"T0", Kind::Real, 1.0, 50.0}, {"Tf", Kind::Real, 0.0001, 0.1}, {"alpha", Kind::Real, 0.8, 0.99}}});
    s.push_back({AlgorithmId::QLearning,
                 {{"lr", Kind::Real, 0.01, 0.5}, {"df", Kind::Real, 0.8, 0.99}, {"epsilon", Kind::Real, 0.01, 0.3},
                  {"E", Kind::Integer, 1000, 10000}}});
    s.push_back({AlgorithmId::Sarsa,
                 {{"lr", Kind::Real, 0.01, 0.5}, {"df", Kind::Real, 0.8, 0.99}, {"epsilon", Kind::Real, 0.01, 0.3},
                  {"E", Kind::Integer, 100, 5000}}});
    return s;
}

const std::vector<ParamSpace>& spaces() {
    static const std::vector<ParamSpace> all = build_spaces();
    return all;
}

// Tuned values, one row per parameter in space order, columns in
// PresetColumn order: original, claude, gemini, llama, o1, r1.
struct PresetRow {
    AlgorithmId algorithm;
    const char* param;
    double values[6];
};

constexpr PresetRow kPresets[] = {
    {AlgorithmId::Aco, "m", {7, 4, 2, 3, 17, 20}},
    {AlgorithmId::Aco, "alpha", {1.34, 1.72, 1.67, 1.46, 1.72, 1.22}},
    {AlgorithmId::Aco, "beta", {1.59, 1.24, 1.98, 1.97, 1.93, 1.55}},
    {AlgorithmId::Aco, "rho", {0.24, 0.12, 0.24, 0.29, 0.06, 0.05}},
    {AlgorithmId::Ga, "N", {97, 14, 97, 84, 55, 58}},
    {AlgorithmId::Ga, "mu", {0.02, 0.04, 0.16, 0.16, 0.01, 0.13}},
    {AlgorithmId::Ga, "e", {4, 2, 5, 2, 3, 5}},
    {AlgorithmId::Alns, "lambda", {0.27, 0.05, 0.26, 0.29, 0.22, 0.29}},
    {AlgorithmId::Alns, "rho", {0.27, 0.25, 0.04, 0.2, 0.27, 0.02}},
    {AlgorithmId::Tabu, "T", {8, 12, 30, 15, 10, 9}},
    {AlgorithmId::Sa, "T0", {12, 49, 9, 30, 35, 50}},
    {AlgorithmId::Sa, "Tf", {0.0547, 0.0464, 0.074, 0.056, 0.0433, 0.048}},
    {AlgorithmId::Sa, "alpha", {0.9895, 0.8732, 0.8956, 0.8131, 0.9154, 0.8777}},
    {AlgorithmId::QLearning, "lr", {0.44, 0.15, 0.26, 0.49, 0.46, 0.34}},
    {AlgorithmId::QLearning, "df", {0.97, 0.82, 0.98, 0.87, 0.98, 0.82}},
    {AlgorithmId::QLearning, "epsilon", {0.09, 0.28, 0.03, 0.24, 0.21, 0.13}},
    {AlgorithmId::QLearning, "E", {4266, 1082, 4906, 2474, 1294, 1989}},
    {AlgorithmId::Sarsa, "lr", {0.04, 0.36, 0.49, 0.19, 0.41, 0.29}},
    {AlgorithmId::Sarsa, "df", {0.86, 0.91, 0.80, 0.88, 0.83, 0.87}},
    {AlgorithmId::Sarsa, "epsilon", {0.23, 0.18, 0.16, 0.08, 0.12, 0.16}},
    {AlgorithmId::Sarsa, "E", {105, 156, 1850, 137, 124, 1711}},
};

constexpr std::string_view kColumns[] = {"original", "claude", "gemini", "llama", "o1", "r1"};

std::string format_number(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::size_t as_count(const ParamConfig& c, std::string_view name) {
    return static_cast<std::size_t>(std::llround(c.get(name)));
}

void expect_algorithm(const ParamConfig& c, AlgorithmId id) {
    if (c.algorithm != id)
        throw TunerError(TunerError::Kind::Malformed, "configuration is for " + std::string(to_string(c.algorithm)) +
                                                          ", expected " + std::string(to_string(id)));
}

}  // namespace

const ParamDef* ParamSpace::find(std::string_view name) const noexcept {
    for (const auto& p : params)
        if (p.name == name) return &p;
    return nullptr;
}

double ParamConfig::get(std::string_view name) const {
    const auto it = values.find(std::string(name));
    if (it == values.end())
        throw TunerError(TunerError::Kind::Malformed, "configuration has no parameter '" + std::string(name) + "'");
    return it->second;
}

std::string ParamConfig::id() const {
    switch (provenance.kind) {
        case Provenance::Kind::Preset: return provenance.detail;
        case Provenance::Kind::Sampled: return "sampled-" + provenance.detail;
        case Provenance::Kind::Raced: return "raced-" + provenance.detail;
        case Provenance::Kind::Manual: break;
    }
    return provenance.detail.empty() ? "custom" : "custom-" + provenance.detail;
}

const ParamSpace& param_space(AlgorithmId id) {
    for (const auto& s : spaces())
        if (s.algorithm == id) return s;
    throw TunerError(TunerError::Kind::UnknownAlgorithm,
                     std::string(to_string(id)) + " has no tunable parameters");
}

std::string_view to_string(PresetColumn column) noexcept { return kColumns[static_cast<std::size_t>(column)]; }

PresetColumn parse_column(std::string_view name) {
    for (std::size_t i = 0; i < std::size(kColumns); ++i)
        if (kColumns[i] == name) return static_cast<PresetColumn>(i);
    throw TunerError(TunerError::Kind::NoSuchColumn, "no preset column '" + std::string(name) + "'");
}

ParamConfig preset(AlgorithmId id, PresetColumn column) {
    const auto col = static_cast<std::size_t>(column);
    if (col >= std::size(kColumns)) throw TunerError(TunerError::Kind::NoSuchColumn, "preset column out of range");
    param_space(id);  // UnknownAlgorithm for the deterministic ones
    ParamConfig c;
    c.algorithm = id;
    c.provenance = {Provenance::Kind::Preset, std::string(kColumns[col])};
    for (const auto& row : kPresets)
        if (row.algorithm == id) c.values[row.param] = row.values[col];
    return c;
}

void check_config(const ParamConfig& config) {
    const ParamSpace& space = param_space(config.algorithm);
    if (config.values.size() != space.params.size()) {
        throw TunerError(TunerError::Kind::Malformed, std::string(to_string(config.algorithm)) + " expects " +
                                                          std::to_string(space.params.size()) + " parameters");
    }
    for (const auto& [name, value] : config.values) {
        const ParamDef* def = space.find(name);
        if (def == nullptr)
            throw TunerError(TunerError::Kind::Malformed, "unknown parameter '" + name + "' for " +
                                                              std::string(to_string(config.algorithm)));
        if (!(value >= def->lo && value <= def->hi))
            throw TunerError(TunerError::Kind::OutOfRange, name + " = " + format_number(value) + " outside [" +
                                                               format_number(def->lo) + ", " +
                                                               format_number(def->hi) + "]");
        if (def->kind == Kind::Integer && value != std::floor(value))
            throw TunerError(TunerError::Kind::OutOfRange, name + " must be an integer");
    }
}

ParamConfig sample_config(const ParamSpace& space, std::uint64_t seed) {
    Rng rng(seed);
    ParamConfig c;
    c.algorithm = space.algorithm;
    c.provenance = {Provenance::Kind::Sampled, std::to_string(seed)};
    for (const auto& def : space.params) {
        double v;
        if (def.kind == Kind::Integer) {
            v = static_cast<double>(rng.between(static_cast<std::int64_t>(def.lo), static_cast<std::int64_t>(def.hi)));
        } else {
            v = std::min(def.hi, rng.uniform(def.lo, def.hi));
        }
        c.values[def.name] = v;
    }
    return c;
}

meta::AcoParams to_aco(const ParamConfig& c) {
    expect_algorithm(c, AlgorithmId::Aco);
    return {as_count(c, "m"), c.get("alpha"), c.get("beta"), c.get("rho")};
}

meta::GaParams to_ga(const ParamConfig& c) {
    expect_algorithm(c, AlgorithmId::Ga);
    meta::GaParams p;
    p.population = as_count(c, "N");
    p.mutation_rate = c.get("mu");
    p.elite = as_count(c, "e");
    return p;
}

meta::AlnsParams to_alns(const ParamConfig& c) {
    expect_algorithm(c, AlgorithmId::Alns);
    return {c.get("lambda"), c.get("rho")};
}

meta::TabuParams to_tabu(const ParamConfig& c) {
    expect_algorithm(c, AlgorithmId::Tabu);
    return {as_count(c, "T")};
}

meta::SaParams to_sa(const ParamConfig& c) {
    expect_algorithm(c, AlgorithmId::Sa);
    return {c.get("T0"), c.get("Tf"), c.get("alpha")};
}

rl::RlParams to_rl(const ParamConfig& c) {
    if (c.algorithm != AlgorithmId::QLearning) expect_algorithm(c, AlgorithmId::Sarsa);
    return {c.get("lr"), c.get("df"), c.get("epsilon"), as_count(c, "E")};
}

std::string render_config(const ParamConfig& config) {
    static constexpr std::string_view kKinds[] = {"preset", "sampled", "raced", "manual"};
    std::ostringstream out;
    out << "algorithm = " << to_string(config.algorithm) << '\n';
    out << "provenance = " << kKinds[static_cast<std::size_t>(config.provenance.kind)];
    if (!config.provenance.detail.empty()) out << ':' << config.provenance.detail;
    out << '\n';
    // Space order reads better than map order.
    const ParamSpace& space = param_space(config.algorithm);
    for (const auto& def : space.params) {
        const auto it = config.values.find(def.name);
        if (it != config.values.end()) out << def.name << " = " << format_number(it->second) << '\n';
    }
    return out.str();
}

ParamConfig parse_config(std::string_view text) {
    ParamConfig c;
    bool have_algorithm = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw TunerError(TunerError::Kind::Malformed, "line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "algorithm") {
            const auto id = parse_algorithm(value);
            if (!id) throw TunerError(TunerError::Kind::UnknownAlgorithm, "unknown algorithm '" + std::string(value) + "'");
            c.algorithm = *id;
            have_algorithm = true;
        } else if (key == "provenance") {
            const auto colon = value.find(':');
            const auto kind = value.substr(0, colon);
            c.provenance.detail = colon == std::string_view::npos ? "" : std::string(value.substr(colon + 1));
            if (kind == "preset") c.provenance.kind = Provenance::Kind::Preset;
            else if (kind == "sampled") c.provenance.kind = Provenance::Kind::Sampled;
            else if (kind == "raced") c.provenance.kind = Provenance::Kind::Raced;
            else if (kind == "manual") c.provenance.kind = Provenance::Kind::Manual;
            else throw TunerError(TunerError::Kind::Malformed, "unknown provenance '" + std::string(kind) + "'");
        } else {
            double v = 0.0;
            const auto r = std::from_chars(value.data(), value.data() + value.size(), v);
            if (r.ec != std::errc{} || r.ptr != value.data() + value.size())
                throw TunerError(TunerError::Kind::Malformed,
                                 "line " + std::to_string(line_no) + ": bad number '" + std::string(value) + "'");
            if (!c.values.emplace(std::string(key), v).second)
                throw TunerError(TunerError::Kind::Malformed, "duplicate parameter '" + std::string(key) + "'");
        }
    }
    if (!have_algorithm) throw TunerError(TunerError::Kind::Malformed, "missing 'algorithm' line");
    check_config(c);
    return c;
}

std::string render_space(const ParamSpace& space) {
    std::ostringstream out;
    out << "algorithm = " << to_string(space.algorithm) << '\n';
    for (const auto& def : space.params) {
        out << def.name << " = " << (def.kind == Kind::Integer ? "integer " : "real ") << format_number(def.lo)
            << ' ' << format_number(def.hi) << '\n';
    }
    return out.str();
}

}  // namespace tsplab
