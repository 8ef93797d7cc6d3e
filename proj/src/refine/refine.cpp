#include <algorithm>

#include <json.hpp>

#include "tsplab/refine.hpp"

namespace tsplab::refine {
namespace {

constexpr std::string_view kDefaultBody = R"(You are an optimization algorithm expert.

I need to improve this {{algorithm name}} implementation for the travelling salesman problem (TSP) by incorporating state-of-the-art techniques. Focus on:

1. Finding better quality solutions
2. Faster convergence time

Requirements:
- Keep the main function signature: {{the signature of an the main function}}
- Include detailed docstrings explaining:
  * What improvement is implemented
  * How it enhances performance
  * Which state-of-the-art technique it is based on
- All explanations must be within docstrings, no additional text
- Check that there are no errors in the code

IMPORTANT:
- Return ONLY Python code
- Any explanation or discussion must be inside docstrings
- At the end, include a comment block listing unmodified functions from the original code

Current implementation:
{{algorithm code}}
)";

}  // namespace

PromptTemplate PromptTemplate::default_template() { return {std::string(kDefaultBody)}; }

std::string render_prompt(const PromptTemplate& t, const RefinementRequest& r) {
    if (r.algorithm_name.empty()) throw RefineError(RefineError::Kind::EmptyField, "algorithm name is empty");
    if (r.main_signature.empty()) throw RefineError(RefineError::Kind::EmptyField, "main signature is empty");
    if (r.code.empty()) throw RefineError(RefineError::Kind::EmptyField, "algorithm code is empty");

    const std::string_view placeholders[] = {kNamePlaceholder, kSignaturePlaceholder, kCodePlaceholder};
    const std::string* fields[] = {&r.algorithm_name, &r.main_signature, &r.code};
    int seen[3] = {0, 0, 0};

    const std::string_view body = t.body;
    std::string out;
    out.reserve(body.size() + r.code.size() + r.algorithm_name.size() + r.main_signature.size());
    std::size_t pos = 0;
    while (pos < body.size()) {
        const auto open = body.find("{{", pos);
        if (open == std::string_view::npos) {
            out.append(body.substr(pos));
            break;
        }
        out.append(body.substr(pos, open - pos));
        const auto close = body.find("}}", open + 2);
        if (close == std::string_view::npos)
            throw RefineError(RefineError::Kind::UnknownPlaceholder, "unterminated '{{' in template");
        const auto token = body.substr(open, close + 2 - open);
        std::size_t k = 0;
        while (k < 3 && placeholders[k] != token) ++k;
        if (k == 3)
            throw RefineError(RefineError::Kind::UnknownPlaceholder, "unknown placeholder " + std::string(token));
        if (++seen[k] > 1)
            throw RefineError(RefineError::Kind::DuplicatePlaceholder,
                              "placeholder " + std::string(token) + " occurs more than once");
        out.append(*fields[k]);
        pos = close + 2;
    }
    for (std::size_t k = 0; k < 3; ++k) {
        if (seen[k] == 0)
            throw RefineError(RefineError::Kind::MissingPlaceholder,
                              "template lacks placeholder " + std::string(placeholders[k]));
    }
    return out;
}

void TemperatureSchedule::check() const {
    if (!(start > 0.0)) throw RefineError(RefineError::Kind::BadSchedule, "start temperature must be positive");
    if (!(decrement >= 0.0)) throw RefineError(RefineError::Kind::BadSchedule, "decrement must be non-negative");
    if (!(floor > 0.0)) throw RefineError(RefineError::Kind::BadSchedule, "floor must be positive");
    if (start < floor) throw RefineError(RefineError::Kind::BadSchedule, "start is below floor");
    if (max_attempts < 1) throw RefineError(RefineError::Kind::BadSchedule, "max_attempts must be at least 1");
}

double next_temperature(const TemperatureSchedule& s, std::size_t attempt) {
    if (attempt < 1 || attempt > s.max_attempts) {
        throw RefineError(RefineError::Kind::AttemptOutOfRange,
                          "attempt " + std::to_string(attempt) + " outside 1.." + std::to_string(s.max_attempts));
    }
    return std::max(s.floor, s.start - static_cast<double>(attempt - 1) * s.decrement);
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Valid: return "valid";
        case Verdict::ExecutionError: return "execution_error";
        case Verdict::InvalidSolution: break;
    }
    return "invalid_solution";
}

RefinementReport refinement_loop(const RefinementRequest& r, const PromptTemplate& t, const TemperatureSchedule& s,
                                 const Evaluator& evaluator) {
    s.check();
    RefinementReport report;
    report.prompt = render_prompt(t, r);

    std::string candidate = report.prompt;
    std::optional<std::string> feedback;
    bool had_error = false;
    bool had_invalid = false;

    for (std::size_t attempt = 1; attempt <= s.max_attempts; ++attempt) {
        ValidationOutcome outcome;
        outcome.attempt = attempt;
        outcome.temperature = next_temperature(s, attempt);
        outcome.feedback = feedback;

        EvaluatorOutput result;
        try {
            EvaluatorInput in{candidate, outcome.temperature, std::nullopt};
            if (feedback) in.feedback = *feedback;
            result = evaluator(in);
        } catch (const std::exception& e) {
            report.failure_reason = "evaluator raised: " + std::string(e.what());
            break;
        } catch (...) {
            report.failure_reason = "evaluator raised a non-standard exception";
            break;
        }

        outcome.verdict = result.verdict;
        outcome.message = result.message;
        report.outcomes.push_back(outcome);
        candidate = std::move(result.candidate);

        if (result.verdict == Verdict::Valid) {
            report.succeeded = true;
            break;
        }
        if (result.verdict == Verdict::ExecutionError) {
            had_error = true;
            feedback = result.message;
        } else {
            had_invalid = true;
            feedback = std::string(kCorrectionSentence);
        }
    }

    report.final_candidate = candidate;
    report.corrections = report.outcomes.empty() ? 0 : report.outcomes.size() - 1;
    report.both_failures = had_error && had_invalid;
    if (!report.succeeded && report.failure_reason.empty())
        report.failure_reason = "no valid candidate after " + std::to_string(s.max_attempts) + " attempts";
    return report;
}

ValidationOutcome validate_candidate_tour(std::span<const City> order, std::size_t n) {
    ValidationOutcome out;
    const TourVerdict v = validate_tour(order, n);
    if (v.valid()) {
        out.verdict = Verdict::Valid;
    } else {
        out.verdict = Verdict::InvalidSolution;
        out.message = v.describe();
    }
    return out;
}

std::string report_to_json(const RefinementReport& report) {
    using nlohmann::json;
    json j;
    j["succeeded"] = report.succeeded;
    j["attempts"] = report.outcomes.size();
    j["corrections"] = report.corrections;
    j["both_failures"] = report.both_failures;
    j["failure_reason"] = report.succeeded ? json(nullptr) : json(report.failure_reason);
    j["outcomes"] = json::array();
    for (const auto& o : report.outcomes) {
        j["outcomes"].push_back({{"attempt", o.attempt},
                                 {"verdict", std::string(to_string(o.verdict))},
                                 {"message", o.message},
                                 {"temperature", o.temperature},
                                 {"feedback", o.feedback ? json(*o.feedback) : json(nullptr)}});
    }
    return j.dump(2) + '\n';
}

}  // namespace tsplab::refine
