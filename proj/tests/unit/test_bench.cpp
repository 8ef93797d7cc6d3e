#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "../support/fixtures.hpp"
#include "tsplab/bench.hpp"

using namespace tsplab;
using namespace tsplab::bench;

namespace {

ExperimentPlan small_plan(std::size_t reps) {
    return parse_plan("name = t\nrepetitions = " + std::to_string(reps) +
                      "\nbase_seed = 5\ntime_scale = 0.01\nmax_evaluations = 300\n"
                      "instance = random 8 1\ninstance = random 9 2\n"
                      "run = sa baseline\nrun = tabu baseline gemini\nrun = christofides\n");
}

}  // namespace

TEST_CASE("time limits") {
    CHECK(time_limit_for(99, 1.0) == 99.0);
    CHECK(time_limit_for(280, 0.1) == 28.0);
    CHECK(time_limit_for(99, 0.001) == 1.0);
}

TEST_CASE("gap sign convention") {
    CHECK(compute_gap(100, 90) == doctest::Approx(10.0));
    CHECK(compute_gap(100, 100) == 0.0);
    CHECK(compute_gap(100, 110) == doctest::Approx(-10.0));
    CHECK_THROWS_AS(compute_gap(0, 1), ZeroBaseline);
}

TEST_CASE("plan parsing") {
    const auto plan = small_plan(3);
    CHECK(plan.instances.size() == 2);
    CHECK(plan.runs.size() == 3);
    CHECK(plan.runs[1].config_id() == "gemini");
    CHECK(plan.runs[2].config_id() == "-");
    CHECK(expected_record_count(plan) == 2 * 3 * 2 + 2);
    const auto again = parse_plan(render_plan(plan));
    CHECK(render_plan(again) == render_plan(plan));
    CHECK_THROWS_AS(parse_plan("instance = random 5 1\nrun = nope\n"), PlanError);
    CHECK_THROWS_AS(parse_plan("instance = random 5 1\nrun = ga fancy\n"), PlanError);
    CHECK_THROWS_AS(parse_plan("instance = random 5 1\nrun = christofides baseline r1\n"), PlanError);
    CHECK_THROWS_AS(parse_plan("instance = random 5 1\nrun = tabu baseline T=99\n"), PlanError);
    CHECK_THROWS_AS(parse_plan("bogus = 1\n"), PlanError);
    CHECK_THROWS_AS(parse_plan("repetitions = 0\ninstance = random 5 1\nrun = sa\n"), PlanError);
    const auto inline_cfg = parse_plan("instance = random 5 1\nrun = tabu baseline T=12\n");
    CHECK(inline_cfg.runs[0].config->get("T") == 12);
    CHECK(inline_cfg.runs[0].config_id().rfind("custom-", 0) == 0);
}

TEST_CASE("experiment rows, determinism and csv fidelity") {
    const auto plan = small_plan(3);
    const auto a = run_experiment(plan);
    CHECK(a.size() == expected_record_count(plan));
    CHECK(std::count_if(a.begin(), a.end(), [](const RunRecord& r) { return r.algorithm == "christofides"; }) == 2);
    for (const auto& r : a) {
        CHECK(r.status == RunStatus::Ok);
        CHECK(r.seed == run_seed(5, r.algorithm, r.variant, r.instance, r.rep));
    }
    auto b_plan = plan;
    b_plan.workers = 3;
    const auto b = run_experiment(b_plan);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].best_cost == b[i].best_cost);

    const auto parsed = parse_csv(render_csv(a));
    REQUIRE(parsed.size() == a.size());
    const auto s1 = summarize(a), s2 = summarize(parsed);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].median == s2[i].median);
        CHECK(s1[i].q1 == s2[i].q1);
        CHECK(s1[i].stddev == s2[i].stddev);
    }
    CHECK(render_csv(a).rfind(std::string(kCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("summary conventions") {
    auto rows = [](std::vector<double> values) {
        std::vector<RunRecord> out;
        for (std::size_t i = 0; i < values.size(); ++i) {
            RunRecord r;
            r.algorithm = "ga";
            r.variant = "baseline";
            r.config_id = "original";
            r.instance = "x";
            r.rep = i;
            r.best_cost = values[i];
            out.push_back(r);
        }
        return out;
    };
    auto s = summarize(rows({4, 1, 3, 2}));
    REQUIRE(s.size() == 1);
    CHECK(s[0].median == 2.5);
    CHECK(s[0].q1 == 1.5);
    CHECK(s[0].q3 == 3.5);
    CHECK(s[0].min == 1);
    CHECK(s[0].max == 4);
    s = summarize(rows({7}));
    CHECK(s[0].min == 7);
    CHECK(s[0].q1 == 7);
    CHECK(s[0].median == 7);
    CHECK(s[0].q3 == 7);
    CHECK(s[0].max == 7);
    CHECK(s[0].stddev == 0);

    auto failed = rows({1, 2});
    for (auto& r : failed) {
        r.status = RunStatus::Failed;
        r.best_cost = NAN;
    }
    s = summarize(failed);
    CHECK(s[0].not_available);
    CHECK(s[0].failed == 2);
}

TEST_CASE("branch and bound summaries use runtime") {
    const auto plan = parse_plan("time_scale = 0.01\ninstance = random 8 1\nrun = bb enhanced_r1\n");
    const auto recs = run_experiment(plan);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].nodes_expanded.has_value());
    const auto s = summarize(recs);
    CHECK(s[0].metric == Metric::Runtime);
    CHECK(s[0].median == recs[0].elapsed_s);
}

TEST_CASE("failed runs are recorded, not thrown") {
    // convex hull needs coordinates
    const std::string dir = TSPLAB_TEST_DATA_DIR;
    const auto plan = parse_plan("instance = explicit4.tsp\nrun = convex_hull\nrun = christofides\n", dir);
    const auto recs = run_experiment(plan);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].status == RunStatus::Ok);  // christofides sorts first
    CHECK(recs[1].status == RunStatus::Failed);
    CHECK(std::isnan(recs[1].best_cost));
    const auto csv = render_csv(recs);
    CHECK(csv.find(",failed\n") != std::string::npos);
    CHECK(std::isnan(parse_csv(csv)[1].best_cost));
}

TEST_CASE("gap table and report") {
    std::vector<RunRecord> recs;
    auto add = [&](std::string variant, double cost) {
        RunRecord r;
        r.algorithm = "ga";
        r.variant = std::move(variant);
        r.config_id = "original";
        r.instance = "x";
        r.best_cost = cost;
        recs.push_back(r);
    };
    add("baseline", 100);
    add("hybrid_r1", 90);
    const auto rows = gap_table(recs);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].gap_percent == doctest::Approx(10.0));
    CHECK(render_gap_table(rows).find(",+10.0\n") != std::string::npos);

    const auto plan = small_plan(2);
    const auto report = render_report(plan, run_experiment(plan));
    CHECK(report.find("\"schema\": 1") != std::string::npos);
    CHECK(report.find("\"summary\"") != std::string::npos);
}
