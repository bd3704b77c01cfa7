#include "siteeval/delphi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "siteeval/core_model.hpp"
#include "siteeval/error.hpp"

namespace siteeval::delphi {

namespace {

const RespondentClass& find_class(const std::vector<RespondentClass>& classes, const std::string& label) {
    for (const auto& c : classes) {
        if (c.label == label) return c;
    }
    throw ValidationError("unknown respondent class '" + label + "'");
}

void validate_classes(const std::vector<RespondentClass>& classes) {
    std::set<std::string> seen;
    for (const auto& c : classes) {
        if (!(c.score_weight > 0.0 && c.score_weight <= 1.0)) {
            throw ValidationError("respondent class '" + c.label + "': score weight must be in (0, 1]");
        }
        if (!seen.insert(c.label).second) {
            throw ValidationError("duplicate respondent class '" + c.label + "'");
        }
    }
}

std::string format_threshold(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::vector<RespondentClass> default_classes() { return {{"expert", 0.8}, {"end_user", 0.2}}; }

void validate_round(const SurveyRound& round, const std::vector<RespondentClass>& classes) {
    validate_classes(classes);
    if (round.round_index < 1) throw ValidationError("round index must be positive");
    std::set<std::pair<std::string, std::string>> seen;
    std::unordered_map<std::string, std::string> class_of;
    for (const auto& r : round.responses) {
        find_class(classes, r.respondent_class);
        if (r.score < kMinScore || r.score > kMaxScore) {
            throw ValidationError("score out of range 1–5 for (" + r.respondent + ", " + r.indicator + ")");
        }
        if (r.confidence && (*r.confidence < kMinScore || *r.confidence > kMaxScore)) {
            throw ValidationError("confidence out of range 1–5 for (" + r.respondent + ", " + r.indicator + ")");
        }
        if (!seen.emplace(r.respondent, r.indicator).second) {
            throw ValidationError("duplicate response for (" + r.respondent + ", " + r.indicator + ")");
        }
        auto [it, inserted] = class_of.emplace(r.respondent, r.respondent_class);
        if (!inserted && it->second != r.respondent_class) {
            throw ValidationError("respondent '" + r.respondent + "' appears in classes '" + it->second + "' and '" +
                                  r.respondent_class + "'");
        }
    }
}

double weighted_full_mark_rate(const std::map<std::string, int>& max_scorers_by_class,
                               const std::map<std::string, int>& totals_by_class,
                               const std::vector<RespondentClass>& classes) {
    validate_classes(classes);
    for (const auto& [label, count] : max_scorers_by_class) {
        find_class(classes, label);
        if (count < 0) throw ValidationError("negative max-scorer count for class '" + label + "'");
    }
    double numerator = 0.0;
    double denominator = 0.0;
    for (const auto& [label, total] : totals_by_class) {
        const auto& cls = find_class(classes, label);
        if (total < 0) throw ValidationError("negative respondent count for class '" + label + "'");
        auto it = max_scorers_by_class.find(label);
        const int max_count = it == max_scorers_by_class.end() ? 0 : it->second;
        if (max_count > total) {
            throw ValidationError("class '" + label + "': more max scorers than respondents");
        }
        numerator += cls.score_weight * max_count;
        denominator += cls.score_weight * total;
    }
    for (const auto& [label, count] : max_scorers_by_class) {
        if (count > 0 && !totals_by_class.contains(label)) {
            throw ValidationError("class '" + label + "': more max scorers than respondents");
        }
    }
    if (!(denominator > 0.0)) throw ValidationError("no respondents");
    return numerator / denominator;
}

std::vector<IndicatorStats> round_statistics(const SurveyRound& round, const std::vector<RespondentClass>& classes,
                                             int full_mark_threshold) {
    validate_round(round, classes);

    struct Bucket {
        std::vector<int> scores;
        std::vector<int> confidences;
        std::map<std::string, int> totals;
        std::map<std::string, int> max_scorers;
    };
    std::vector<std::string> order;
    std::unordered_map<std::string, Bucket> buckets;
    for (const auto& r : round.responses) {
        auto [it, inserted] = buckets.try_emplace(r.indicator);
        if (inserted) order.push_back(r.indicator);
        auto& b = it->second;
        b.scores.push_back(r.score);
        if (r.confidence) b.confidences.push_back(*r.confidence);
        ++b.totals[r.respondent_class];
        if (r.score >= full_mark_threshold) ++b.max_scorers[r.respondent_class];
    }

    std::vector<IndicatorStats> out;
    out.reserve(order.size());
    for (const auto& id : order) {
        const auto& b = buckets.at(id);
        const auto d = static_cast<int>(b.scores.size());
        if (d < 2) throw ValidationError("insufficient responses for indicator '" + id + "' (need at least 2)");

        double sum = 0.0;
        for (int s : b.scores) sum += s;
        const double mean = sum / d;
        double ss = 0.0;
        for (int s : b.scores) ss += (s - mean) * (s - mean);
        const double sd = std::sqrt(ss / (d - 1));

        IndicatorStats st;
        st.indicator = id;
        st.mean = mean;
        st.std_dev = sd;
        st.cv = sd / mean;
        st.full_mark_rate = weighted_full_mark_rate(b.max_scorers, b.totals, classes);
        st.respondent_count = d;
        if (!b.confidences.empty()) {
            double c = 0.0;
            for (int v : b.confidences) c += v;
            st.gcr = c / static_cast<double>(b.confidences.size());
        }
        out.push_back(std::move(st));
    }
    return out;
}

const char* reason_code(ScreenReason reason) {
    switch (reason) {
        case ScreenReason::MeanTooLow: return "mean_too_low";
        case ScreenReason::FullMarkRateTooLow: return "full_mark_rate_too_low";
        case ScreenReason::CvTooHigh: return "cv_too_high";
        case ScreenReason::GcrTooLow: return "gcr_too_low";
    }
    return "unknown";
}

std::string describe(ScreenReason reason, const ScreeningCriteria& criteria) {
    switch (reason) {
        case ScreenReason::MeanTooLow: return "mean ≤ " + format_threshold(criteria.min_mean);
        case ScreenReason::FullMarkRateTooLow:
            return "full_mark_rate ≤ " + format_threshold(criteria.min_full_mark_rate);
        case ScreenReason::CvTooHigh: return "cv ≥ " + format_threshold(criteria.max_cv);
        case ScreenReason::GcrTooLow: return "gcr ≤ " + format_threshold(criteria.min_gcr.value_or(0.0));
    }
    return "unknown";
}

ScreeningResult screen(const std::vector<IndicatorStats>& stats, const ScreeningCriteria& criteria) {
    for (double t : {criteria.min_mean, criteria.min_full_mark_rate, criteria.max_cv}) {
        if (!std::isfinite(t)) throw ValidationError("screening thresholds must be finite");
    }
    if (criteria.min_gcr && !std::isfinite(*criteria.min_gcr)) {
        throw ValidationError("screening thresholds must be finite");
    }

    ScreeningResult result;
    std::set<std::string> seen;
    for (const auto& s : stats) {
        seen.insert(s.indicator);
        ScreenDecision d{s.indicator, {}, {}};
        if (!(s.mean > criteria.min_mean)) d.failed.push_back(ScreenReason::MeanTooLow);
        if (!(s.full_mark_rate > criteria.min_full_mark_rate)) d.failed.push_back(ScreenReason::FullMarkRateTooLow);
        if (!(s.cv < criteria.max_cv)) d.failed.push_back(ScreenReason::CvTooHigh);
        if (criteria.min_gcr && s.gcr && !(*s.gcr > *criteria.min_gcr)) d.failed.push_back(ScreenReason::GcrTooLow);
        for (auto r : d.failed) d.reasons.push_back(describe(r, criteria));

        if (d.failed.empty()) result.selected.push_back(std::move(d));
        else if (criteria.overrides.contains(s.indicator)) result.overridden.push_back(std::move(d));
        else result.rejected.push_back(std::move(d));
    }
    for (const auto& id : criteria.overrides) {
        if (!seen.contains(id)) result.unmatched_overrides.push_back(id);
    }
    return result;
}

ConvergenceReport convergence_report(const std::vector<IndicatorStats>& round_a,
                                     const std::vector<IndicatorStats>& round_b) {
    std::vector<std::string> ids_a;
    std::vector<std::string> ids_b;
    std::unordered_map<std::string, const IndicatorStats*> by_id;
    for (const auto& s : round_a) ids_a.push_back(s.indicator);
    for (const auto& s : round_b) {
        ids_b.push_back(s.indicator);
        by_id.emplace(s.indicator, &s);
    }
    if (const auto diff = symmetric_difference(ids_a, ids_b); !diff.empty() || ids_a.size() != ids_b.size()) {
        std::string msg = "rounds cover different indicators:";
        for (const auto& d : diff) msg += " " + d + ";";
        if (diff.empty()) msg += " duplicate indicator ids";
        throw ValidationError(msg);
    }

    ConvergenceReport report;
    for (const auto& a : round_a) {
        const auto& b = *by_id.at(a.indicator);
        StatDelta d{a.indicator, b.std_dev - a.std_dev, b.cv - a.cv};
        if (d.cv_delta < 0.0) ++report.improved;
        else if (d.cv_delta > 0.0) ++report.worsened;
        report.deltas.push_back(std::move(d));
    }
    report.converged = 2 * report.improved > static_cast<int>(report.deltas.size());
    return report;
}

}  // namespace siteeval::delphi
