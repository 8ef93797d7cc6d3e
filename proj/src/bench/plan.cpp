#include <cctype>
#include <cmath>
#include <cstring>
#include <map>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tsplab/bench.hpp"
#include "tsplab/rng.hpp"

namespace tsplab::bench {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

template <class T>
T number(std::string_view text, std::size_t line) {
    T v{};
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size())
        throw PlanError("line " + std::to_string(line) + ": bad number '" + std::string(text) + "'");
    return v;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PlanError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string short_hash(const std::map<std::string, double>& values) {
    StableHash h;
    for (const auto& [k, v] : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        h.add(k).add(bits);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%08llx", static_cast<unsigned long long>(h.value() & 0xFFFFFFFFULL));
    return buf;
}

RunSpec parse_run(std::string_view value, const std::filesystem::path& base_dir, std::size_t line) {
    const auto tokens = split_ws(value);
    auto where = [&] { return "line " + std::to_string(line) + ": "; };
    if (tokens.empty()) throw PlanError(where() + "run needs an algorithm");
    const auto id = parse_algorithm(tokens[0]);
    if (!id) throw PlanError(where() + "unknown algorithm '" + std::string(tokens[0]) + "'");
    RunSpec spec;
    spec.algorithm = *id;
    if (tokens.size() > 1) spec.variant = std::string(tokens[1]);
    if (!is_valid_variant(*id, spec.variant))
        throw PlanError(where() + "unknown variant '" + spec.variant + "' for " + std::string(tokens[0]));

    if (!is_stochastic(*id)) {
        if (tokens.size() > 2 && !(tokens.size() == 3 && tokens[2] == "-"))
            throw PlanError(where() + std::string(tokens[0]) + " takes no configuration");
        return spec;
    }

    try {
        if (tokens.size() <= 2) {
            spec.config = preset(*id, PresetColumn::Original);
        } else if (tokens[2].find('=') != std::string_view::npos) {
            ParamConfig c;
            c.algorithm = *id;
            for (std::size_t k = 2; k < tokens.size(); ++k) {
                const auto eq = tokens[k].find('=');
                if (eq == std::string_view::npos) throw PlanError(where() + "expected name=value");
                c.values[std::string(tokens[k].substr(0, eq))] = number<double>(tokens[k].substr(eq + 1), line);
            }
            check_config(c);
            c.provenance = {Provenance::Kind::Manual, short_hash(c.values)};
            spec.config = std::move(c);
        } else if (tokens.size() > 3) {
            throw PlanError(where() + "too many fields");
        } else if (tokens[2].front() == '@') {
            std::filesystem::path p(tokens[2].substr(1));
            if (p.is_relative()) p = base_dir / p;
            ParamConfig c = parse_config(read_file(p));
            if (c.algorithm != *id) throw PlanError(where() + p.string() + " configures a different algorithm");
            spec.config = std::move(c);
        } else {
            spec.config = preset(*id, parse_column(tokens[2]));
        }
    } catch (const TunerError& e) {
        throw PlanError(where() + e.what());
    }
    return spec;
}

}  // namespace

double time_limit_for(std::size_t n, double time_scale) {
    const double limit = std::ceil(time_scale * static_cast<double>(n));
    return limit < 1.0 ? 1.0 : limit;
}

Instance InstanceSource::load() const {
    if (kind == Kind::Random) return generate_random_instance(n, seed);
    return load_instance(path);
}

std::string InstanceSource::describe() const {
    if (kind == Kind::Random) return "random " + std::to_string(n) + " " + std::to_string(seed);
    return path.string();
}

std::string_view to_string(Metric m) noexcept { return m == Metric::BestCost ? "best_cost" : "runtime"; }

ExperimentPlan parse_plan(std::string_view text, const std::filesystem::path& base_dir) {
    ExperimentPlan plan;
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
            throw PlanError("line " + std::to_string(line_no) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        if (key == "name") {
            plan.name = std::string(value);
        } else if (key == "repetitions") {
            plan.repetitions = number<std::size_t>(value, line_no);
            if (plan.repetitions < 1) throw PlanError("repetitions must be at least 1");
        } else if (key == "base_seed") {
            plan.base_seed = number<std::uint64_t>(value, line_no);
        } else if (key == "time_scale") {
            plan.time_scale = number<double>(value, line_no);
            if (!(plan.time_scale > 0.0)) throw PlanError("time_scale must be positive");
        } else if (key == "metric") {
            if (value == "best_cost") plan.metric = Metric::BestCost;
            else if (value == "runtime") plan.metric = Metric::Runtime;
            else throw PlanError("metric must be best_cost or runtime");
        } else if (key == "rounding") {
            try {
                plan.rounding = parse_rounding(value);
            } catch (const std::invalid_argument& e) {
                throw PlanError(e.what());
            }
        } else if (key == "max_evaluations") {
            plan.max_evaluations = number<std::uint64_t>(value, line_no);
        } else if (key == "workers") {
            plan.workers = number<std::size_t>(value, line_no);
            if (plan.workers < 1) throw PlanError("workers must be at least 1");
        } else if (key == "instance") {
            const auto tokens = split_ws(value);
            InstanceSource src;
            if (!tokens.empty() && tokens[0] == "random") {
                if (tokens.size() != 3) throw PlanError("line " + std::to_string(line_no) + ": random <n> <seed>");
                src.kind = InstanceSource::Kind::Random;
                src.n = number<std::size_t>(tokens[1], line_no);
                src.seed = number<std::uint64_t>(tokens[2], line_no);
            } else {
                src.path = std::filesystem::path(std::string(value));
                if (src.path.is_relative()) src.path = base_dir / src.path;
            }
            plan.instances.push_back(std::move(src));
        } else if (key == "run") {
            plan.runs.push_back(parse_run(value, base_dir, line_no));
        } else {
            throw PlanError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    if (plan.instances.empty()) throw PlanError("plan lists no instances");
    if (plan.runs.empty()) throw PlanError("plan lists no runs");
    return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
    return parse_plan(read_file(path), path.parent_path());
}

std::string render_plan(const ExperimentPlan& plan) {
    std::ostringstream out;
    out << "name = " << plan.name << '\n';
    out << "repetitions = " << plan.repetitions << '\n';
    out << "base_seed = " << plan.base_seed << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", plan.time_scale);
    out << "time_scale = " << buf << '\n';
    out << "metric = " << to_string(plan.metric) << '\n';
    out << "rounding = " << to_string(plan.rounding) << '\n';
    if (plan.max_evaluations) out << "max_evaluations = " << *plan.max_evaluations << '\n';
    out << "workers = " << plan.workers << '\n';
    for (const auto& src : plan.instances) out << "instance = " << src.describe() << '\n';
    for (const auto& run : plan.runs) {
        out << "run = " << to_string(run.algorithm) << ' ' << run.variant;
        if (run.config) {
            if (run.config->provenance.kind == Provenance::Kind::Preset) {
                out << ' ' << run.config->provenance.detail;
            } else {
                for (const auto& [k, v] : run.config->values) {
                    std::snprintf(buf, sizeof buf, "%.17g", v);
                    out << ' ' << k << '=' << buf;
                }
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace tsplab::bench
