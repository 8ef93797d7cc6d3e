#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "tsplab/bench.hpp"
#include "tsplab/rng.hpp"

namespace tsplab::bench {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Job {
    const RunSpec* run;
    std::size_t instance;
    std::size_t rep;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

auto record_key(const RunRecord& r) {
    return std::tie(r.algorithm, r.variant, r.config_id, r.instance, r.rep);
}

RunRecord execute(const Job& job, const ExperimentPlan& plan, const Instance& inst, const DistanceMatrix& d) {
    const RunSpec& spec = *job.run;
    RunRecord rec;
    rec.algorithm = std::string(to_string(spec.algorithm));
    rec.variant = spec.variant;
    rec.config_id = spec.config_id();
    rec.instance = inst.name;
    rec.n = inst.dimension;
    rec.rep = job.rep;
    rec.seed = run_seed(plan.base_seed, rec.algorithm, rec.variant, rec.instance, job.rep);
    if (spec.algorithm == AlgorithmId::BranchAndBound) rec.nodes_expanded = 0;

    SolveBudget budget{time_limit_for(inst.dimension, plan.time_scale), std::nullopt};
    if (is_stochastic(spec.algorithm)) budget.max_evaluations = plan.max_evaluations;

    try {
        const ParamConfig* config = spec.config ? &*spec.config : nullptr;
        RunOutcome out = run_algorithm(spec.algorithm, spec.variant, config, inst, d, budget, rec.seed);
        rec.elapsed_s = out.elapsed_s;
        rec.evaluations = out.evaluations;
        if (spec.algorithm == AlgorithmId::BranchAndBound) rec.nodes_expanded = out.nodes_expanded;

        // Never trust the solver's own bookkeeping.
        const TourVerdict verdict = validate_tour(out.tour.order, d.size());
        if (!verdict.valid()) {
            rec.status = RunStatus::Failed;
            rec.best_cost = kNaN;
            rec.message = "invalid tour: " + verdict.describe();
            return rec;
        }
        const double cost = tour_length(out.tour, d);
        if (std::abs(cost - out.cost) > 1e-9 * std::max(1.0, std::abs(cost))) {
            rec.status = RunStatus::Failed;
            rec.best_cost = kNaN;
            rec.message = "reported cost " + fmt(out.cost) + " differs from tour length " + fmt(cost);
            return rec;
        }
        rec.best_cost = cost;
        rec.status = out.capped ? RunStatus::TimeoutWithResult : RunStatus::Ok;
    } catch (const std::exception& e) {
        rec.status = RunStatus::Failed;
        rec.best_cost = kNaN;
        rec.message = e.what();
    }
    return rec;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

template <class T>
T parse_num(const std::string& s, std::size_t line) {
    std::istringstream in(s);
    T v{};
    in >> v;
    if (in.fail() || !in.eof()) throw PlanError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

double median_of(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    const std::size_t m = hi - lo;
    if (m % 2 == 1) return v[lo + m / 2];
    return (v[lo + m / 2 - 1] + v[lo + m / 2]) / 2.0;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return median_of(v, 0, v.size());
}

}  // namespace

std::string_view to_string(RunStatus s) noexcept {
    switch (s) {
        case RunStatus::Ok: return "ok";
        case RunStatus::TimeoutWithResult: return "timeout_with_result";
        case RunStatus::Failed: break;
    }
    return "failed";
}

std::uint64_t run_seed(std::uint64_t base_seed, std::string_view algorithm, std::string_view variant,
                       std::string_view instance, std::size_t rep) {
    return StableHash{}.add(base_seed).add(algorithm).add(variant).add(instance).add(std::uint64_t{rep}).value();
}

std::size_t expected_record_count(const ExperimentPlan& plan) {
    std::size_t total = 0;
    for (const auto& run : plan.runs)
        total += (is_stochastic(run.algorithm) ? plan.repetitions : 1) * plan.instances.size();
    return total;
}

std::vector<RunRecord> run_experiment(const ExperimentPlan& plan) {
    if (plan.repetitions < 1) throw PlanError("repetitions must be at least 1");
    std::vector<Instance> instances;
    std::vector<DistanceMatrix> matrices;
    for (const auto& src : plan.instances) {
        instances.push_back(src.load());
        matrices.push_back(build_distance_matrix(instances.back(), plan.rounding));
    }

    std::vector<Job> jobs;
    for (const auto& run : plan.runs) {
        const std::size_t reps = is_stochastic(run.algorithm) ? plan.repetitions : 1;
        for (std::size_t i = 0; i < instances.size(); ++i)
            for (std::size_t r = 0; r < reps; ++r) jobs.push_back({&run, i, r});
    }

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();)
            records[k] = execute(jobs[k], plan, instances[jobs[k].instance], matrices[jobs[k].instance]);
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(plan.workers, jobs.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::stable_sort(records.begin(), records.end(),
                     [](const RunRecord& a, const RunRecord& b) { return record_key(a) < record_key(b); });
    return records;
}

std::string render_csv(const std::vector<RunRecord>& records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += csv_field(r.algorithm) + ',' + csv_field(r.variant) + ',' + csv_field(r.config_id) + ',' +
               csv_field(r.instance) + ',' + std::to_string(r.n) + ',' + std::to_string(r.seed) + ',' +
               std::to_string(r.rep) + ',' + (std::isnan(r.best_cost) ? std::string() : fmt(r.best_cost)) + ',' +
               fmt(r.elapsed_s) + ',' + std::to_string(r.evaluations) + ',' +
               (r.nodes_expanded ? std::to_string(*r.nodes_expanded) : std::string()) + ',' +
               std::string(to_string(r.status)) + '\n';
    }
    return out;
}

std::vector<RunRecord> parse_csv(std::string_view text) {
    std::vector<RunRecord> records;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kCsvHeader) throw PlanError("unexpected CSV header: " + std::string(line));
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 12)
            throw PlanError("csv line " + std::to_string(line_no) + ": expected 12 fields, got " +
                            std::to_string(f.size()));
        RunRecord r;
        r.algorithm = f[0];
        r.variant = f[1];
        r.config_id = f[2];
        r.instance = f[3];
        r.n = parse_num<std::size_t>(f[4], line_no);
        r.seed = parse_num<std::uint64_t>(f[5], line_no);
        r.rep = parse_num<std::size_t>(f[6], line_no);
        r.best_cost = f[7].empty() ? kNaN : std::strtod(f[7].c_str(), nullptr);
        r.elapsed_s = std::strtod(f[8].c_str(), nullptr);
        r.evaluations = parse_num<std::uint64_t>(f[9], line_no);
        if (!f[10].empty()) r.nodes_expanded = parse_num<std::uint64_t>(f[10], line_no);
        if (f[11] == "ok") r.status = RunStatus::Ok;
        else if (f[11] == "timeout_with_result") r.status = RunStatus::TimeoutWithResult;
        else if (f[11] == "failed") r.status = RunStatus::Failed;
        else throw PlanError("csv line " + std::to_string(line_no) + ": unknown status '" + f[11] + "'");
        records.push_back(std::move(r));
    }
    if (!header_seen) throw PlanError("empty CSV");
    return records;
}

double compute_gap(double baseline_cost, double variant_cost) {
    if (!(baseline_cost > 0.0)) throw ZeroBaseline("gap needs a positive baseline cost, got " + fmt(baseline_cost));
    return 100.0 * (baseline_cost - variant_cost) / baseline_cost;
}

std::vector<SummaryStats> summarize(const std::vector<RunRecord>& records, Metric metric) {
    using Key = std::tuple<std::string, std::string, std::string, std::string>;
    std::map<Key, std::pair<std::vector<double>, std::size_t>> groups;
    for (const auto& r : records) {
        auto& g = groups[{r.algorithm, r.variant, r.config_id, r.instance}];
        if (r.status == RunStatus::Failed) {
            ++g.second;
            continue;
        }
        const bool runtime = metric == Metric::Runtime || r.algorithm == to_string(AlgorithmId::BranchAndBound);
        g.first.push_back(runtime ? r.elapsed_s : r.best_cost);
    }

    std::vector<SummaryStats> out;
    for (auto& [key, g] : groups) {
        SummaryStats s;
        std::tie(s.algorithm, s.variant, s.config_id, s.instance) = key;
        s.metric = (metric == Metric::Runtime || s.algorithm == to_string(AlgorithmId::BranchAndBound))
                       ? Metric::Runtime
                       : Metric::BestCost;
        auto& v = g.first;
        s.count = v.size();
        s.failed = g.second;
        if (v.empty()) {
            s.not_available = true;
            s.min = s.q1 = s.median = s.q3 = s.max = s.mean = s.stddev = kNaN;
            out.push_back(std::move(s));
            continue;
        }
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        s.min = v.front();
        s.max = v.back();
        s.median = median_of(v, 0, n);
        if (n == 1) {
            s.q1 = s.q3 = v[0];
        } else {
            s.q1 = median_of(v, 0, n / 2);
            s.q3 = median_of(v, n - n / 2, n);
        }
        double sum = 0.0;
        for (double x : v) sum += x;
        s.mean = sum / static_cast<double>(n);
        if (n > 1) {
            double ss = 0.0;
            for (double x : v) ss += (x - s.mean) * (x - s.mean);
            s.stddev = std::sqrt(ss / static_cast<double>(n - 1));
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<GapRow> gap_table(const std::vector<RunRecord>& records, std::string_view baseline_variant) {
    using Key = std::pair<std::string, std::string>;  // algorithm, instance
    std::map<Key, std::vector<double>> baseline;
    std::map<std::tuple<std::string, std::string, std::string, std::string>, std::vector<double>> others;
    for (const auto& r : records) {
        if (r.status == RunStatus::Failed) continue;
        if (r.variant == baseline_variant) {
            baseline[{r.algorithm, r.instance}].push_back(r.best_cost);
        } else {
            others[{r.algorithm, r.instance, r.variant, r.config_id}].push_back(r.best_cost);
        }
    }
    std::vector<GapRow> rows;
    for (const auto& [key, costs] : others) {
        const auto& [algorithm, instance, variant, config_id] = key;
        const auto it = baseline.find({algorithm, instance});
        if (it == baseline.end()) continue;
        GapRow row{algorithm, instance, variant, config_id, median(it->second), median(costs), 0.0};
        row.gap_percent = compute_gap(row.baseline_median, row.variant_median);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_gap_table(const std::vector<GapRow>& rows) {
    std::ostringstream out;
    out << "algorithm,instance,variant,config_id,baseline_median,variant_median,gap_percent\n";
    char buf[32];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%+.1f", r.gap_percent);
        out << r.algorithm << ',' << r.instance << ',' << r.variant << ',' << r.config_id << ','
            << fmt(r.baseline_median) << ',' << fmt(r.variant_median) << ',' << buf << '\n';
    }
    return out.str();
}

std::string render_report(const ExperimentPlan& plan, const std::vector<RunRecord>& records) {
    using nlohmann::json;
    auto num = [](double v) -> json { return std::isnan(v) ? json(nullptr) : json(v); };

    json j;
    j["schema"] = 1;
    json p;
    p["name"] = plan.name;
    p["repetitions"] = plan.repetitions;
    p["base_seed"] = plan.base_seed;
    p["time_scale"] = plan.time_scale;
    p["metric"] = std::string(to_string(plan.metric));
    p["rounding"] = std::string(to_string(plan.rounding));
    p["max_evaluations"] = plan.max_evaluations ? json(*plan.max_evaluations) : json(nullptr);
    p["workers"] = plan.workers;
    p["instances"] = json::array();
    for (const auto& src : plan.instances) p["instances"].push_back(src.describe());
    p["runs"] = json::array();
    for (const auto& run : plan.runs) {
        json r;
        r["algorithm"] = std::string(to_string(run.algorithm));
        r["variant"] = run.variant;
        r["config_id"] = run.config_id();
        if (run.config) {
            json values;
            for (const auto& [k, v] : run.config->values) values[k] = v;
            r["config"] = values;
        }
        p["runs"].push_back(r);
    }
    j["plan"] = p;

    j["summary"] = json::array();
    for (const auto& s : summarize(records, plan.metric)) {
        json row;
        row["algorithm"] = s.algorithm;
        row["variant"] = s.variant;
        row["config_id"] = s.config_id;
        row["instance"] = s.instance;
        row["metric"] = std::string(to_string(s.metric));
        row["count"] = s.count;
        row["failed"] = s.failed;
        if (s.not_available) {
            row["status"] = "N/A";
        } else {
            row["status"] = "ok";
        }
        row["min"] = num(s.min);
        row["q1"] = num(s.q1);
        row["median"] = num(s.median);
        row["q3"] = num(s.q3);
        row["max"] = num(s.max);
        row["mean"] = num(s.mean);
        row["stddev"] = num(s.stddev);
        j["summary"].push_back(row);
    }

    j["gaps"] = json::array();
    for (const auto& g : gap_table(records)) {
        j["gaps"].push_back({{"algorithm", g.algorithm},
                             {"instance", g.instance},
                             {"variant", g.variant},
                             {"config_id", g.config_id},
                             {"baseline_median", g.baseline_median},
                             {"variant_median", g.variant_median},
                             {"gap_percent", g.gap_percent}});
    }
    return j.dump(2) + '\n';
}

}  // namespace tsplab::bench
