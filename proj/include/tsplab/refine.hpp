#pragma once

// Prompt rendering and the validate-and-retry refinement loop, driven by an
// injected evaluator so no model transport is involved.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsplab/tour.hpp"

namespace tsplab::refine {

inline constexpr std::string_view kNamePlaceholder = "{{algorithm name}}";
inline constexpr std::string_view kSignaturePlaceholder = "{{the signature of an the main function}}";
inline constexpr std::string_view kCodePlaceholder = "{{algorithm code}}";

/// Feedback sent after a candidate produced an invalid tour.
inline constexpr std::string_view kCorrectionSentence =
    "The provided code generates invalid solutions; please verify and return a corrected version.";

struct PromptTemplate {
    std::string body;

    /// The shipped template (trailing whitespace stripped from each line).
    static PromptTemplate default_template();
};

struct RefinementRequest {
    std::string algorithm_name;
    std::string main_signature;
    std::string code;
};

class RefineError : public std::invalid_argument {
public:
    enum class Kind { MissingPlaceholder, DuplicatePlaceholder, UnknownPlaceholder, EmptyField, AttemptOutOfRange,
                      BadSchedule };

    RefineError(Kind kind, const std::string& message) : std::invalid_argument(message), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Substitutes the three placeholders in one pass; field text is never
/// re-scanned. Every placeholder must occur exactly once and no other
/// `{{...}}` token may occur.
std::string render_prompt(const PromptTemplate& t, const RefinementRequest& r);

struct TemperatureSchedule {
    double start = 1.0;
    double decrement = 0.2;
    double floor = 0.2;
    std::size_t max_attempts = 5;

    /// Throws RefineError{BadSchedule}.
    void check() const;
};

/// max(floor, start - (attempt - 1) * decrement), attempt 1-based.
double next_temperature(const TemperatureSchedule& s, std::size_t attempt);

enum class Verdict { Valid, ExecutionError, InvalidSolution };

std::string_view to_string(Verdict v) noexcept;

struct ValidationOutcome {
    Verdict verdict = Verdict::Valid;
    std::string message;  ///< error text for ExecutionError
    std::size_t attempt = 0;
    double temperature = 0.0;
    std::optional<std::string> feedback;  ///< what this attempt was sent
};

struct EvaluatorInput {
    std::string_view candidate;  ///< rendered prompt first, then the previous candidate
    double temperature = 0.0;
    std::optional<std::string_view> feedback;
};

struct EvaluatorOutput {
    std::string candidate;
    Verdict verdict = Verdict::Valid;
    std::string message;
};

using Evaluator = std::function<EvaluatorOutput(const EvaluatorInput&)>;

struct RefinementReport {
    bool succeeded = false;
    std::string prompt;
    std::vector<ValidationOutcome> outcomes;
    std::size_t corrections = 0;  ///< attempts after the first
    bool both_failures = false;   ///< execution error and invalid solution both occurred
    std::string final_candidate;
    std::string failure_reason;
};

/// Runs attempts until the first valid verdict or max_attempts. An
/// exception from the evaluator ends the loop with a failed report.
RefinementReport refinement_loop(const RefinementRequest& r, const PromptTemplate& t, const TemperatureSchedule& s,
                                 const Evaluator& evaluator);

/// Maps tour validity onto the loop's verdicts.
ValidationOutcome validate_candidate_tour(std::span<const City> order, std::size_t n);

std::string report_to_json(const RefinementReport& report);

}  // namespace tsplab::refine
