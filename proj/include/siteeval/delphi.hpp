#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace siteeval::delphi {

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 5;
// Scores at or above this count toward the full-mark rate.
inline constexpr int kDefaultFullMarkThreshold = 4;

struct RespondentClass {
    std::string label;          // e.g. "expert", "end_user"
    double score_weight = 1.0;  // in (0, 1]
};

// The 0.8 / 0.2 expert and end-user weighting.
std::vector<RespondentClass> default_classes();

struct Response {
    std::string respondent;
    std::string respondent_class;
    std::string indicator;
    int score = 0;
    std::optional<int> confidence;
};

struct SurveyRound {
    int round_index = 1;
    std::vector<Response> responses;
};

// Checks class weights, score/confidence ranges, known class labels and
// (respondent, indicator) uniqueness. Throws ValidationError on the first problem.
void validate_round(const SurveyRound& round, const std::vector<RespondentClass>& classes);

struct IndicatorStats {
    std::string indicator;
    double mean = 0.0;
    double std_dev = 0.0;
    double cv = 0.0;
    double full_mark_rate = 0.0;
    std::optional<double> gcr;
    int respondent_count = 0;
};

// Per-indicator mean, sample standard deviation (d - 1 divisor), coefficient of
// variation, class-weighted full-mark rate and mean confidence. Output follows the
// order in which indicators first appear in the round.
std::vector<IndicatorStats> round_statistics(const SurveyRound& round, const std::vector<RespondentClass>& classes,
                                             int full_mark_threshold = kDefaultFullMarkThreshold);

// Sum_c w_c * max_c / Sum_c w_c * total_c. Classes absent from the maps count as zero.
double weighted_full_mark_rate(const std::map<std::string, int>& max_scorers_by_class,
                               const std::map<std::string, int>& totals_by_class,
                               const std::vector<RespondentClass>& classes);

struct ScreeningCriteria {
    double min_mean = 3.5;
    double min_full_mark_rate = 0.5;
    double max_cv = 0.25;
    std::optional<double> min_gcr = 3.0;
    std::set<std::string> overrides;
};

enum class ScreenReason { MeanTooLow, FullMarkRateTooLow, CvTooHigh, GcrTooLow };

// Stable machine code, e.g. "mean_too_low".
const char* reason_code(ScreenReason reason);
// Human text using the active thresholds, e.g. "mean ≤ 3.5".
std::string describe(ScreenReason reason, const ScreeningCriteria& criteria);

struct ScreenDecision {
    std::string indicator;
    std::vector<ScreenReason> failed;
    std::vector<std::string> reasons;
};

struct ScreeningResult {
    std::vector<ScreenDecision> selected;
    std::vector<ScreenDecision> rejected;
    std::vector<ScreenDecision> overridden;
    // Override ids that matched no indicator in the input.
    std::vector<std::string> unmatched_overrides;
};

// Strict comparisons: mean > min_mean, rate > min_full_mark_rate, cv < max_cv,
// gcr > min_gcr when both are present. Failing override ids move to `overridden`.
ScreeningResult screen(const std::vector<IndicatorStats>& stats, const ScreeningCriteria& criteria);

struct StatDelta {
    std::string indicator;
    double std_dev_delta = 0.0;
    double cv_delta = 0.0;
};

struct ConvergenceReport {
    std::vector<StatDelta> deltas;  // round_b - round_a, in round_a order
    int improved = 0;               // cv decreased
    int worsened = 0;               // cv increased
    bool converged = false;         // strict majority improved
};

ConvergenceReport convergence_report(const std::vector<IndicatorStats>& round_a,
                                     const std::vector<IndicatorStats>& round_b);

}  // namespace siteeval::delphi
