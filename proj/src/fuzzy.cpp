#include "siteeval/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "siteeval/error.hpp"

namespace siteeval::fuzzy {

namespace {
constexpr double kRangeSlack = 1e-9;

std::string mismatch_message(const std::string& prefix, const std::vector<std::string>& diff) {
    std::string msg = prefix;
    for (const auto& d : diff) msg += " " + d;
    return msg;
}
}  // namespace

FuzzyVector::FuzzyVector(GradeScale grades, std::vector<double> values)
    : grades_(std::move(grades)), values_(std::move(values)) {
    if (values_.size() != grades_.size()) {
        throw ValidationError("fuzzy vector has " + std::to_string(values_.size()) + " values for " +
                              std::to_string(grades_.size()) + " grades");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] >= -kRangeSlack && values_[i] <= 1.0 + kRangeSlack)) {
            throw ValidationError("fuzzy membership for '" + grades_.label(i) + "' must lie in [0,1]");
        }
    }
}

double FuzzyVector::at(const std::string& grade) const {
    const auto i = grades_.index_of(grade);
    if (!i) throw ValidationError("unknown grade '" + grade + "'");
    return values_[*i];
}

double FuzzyVector::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

const char* to_string(Operator op) { return op == Operator::MinMax ? "min-max" : "weighted-average"; }

Operator parse_operator(const std::string& text) {
    if (text == "weighted-average") return Operator::WeightedAverage;
    if (text == "min-max") return Operator::MinMax;
    throw UsageError("unknown fuzzy operator '" + text + "' (expected weighted-average or min-max)");
}

FuzzyVector compose(const WeightVector& weights, const MembershipMatrix& r, Operator op) {
    const std::size_t g = r.grades().size();
    std::vector<double> out(g, 0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights.values()[i];
        const auto row = r.row(weights.ids()[i]);
        for (std::size_t k = 0; k < g; ++k) {
            if (op == Operator::WeightedAverage) out[k] += w * row[k];
            else out[k] = std::max(out[k], std::min(w, row[k]));
        }
    }
    return FuzzyVector(r.grades(), std::move(out));
}

std::map<std::string, FuzzyVector> first_level(const IndicatorHierarchy& h,
                                               const std::map<std::string, WeightVector>& within_criterion_weights,
                                               const MembershipMatrix& r, Operator op) {
    std::map<std::string, FuzzyVector> out;
    for (const auto& c : h.criteria) {
        auto it = within_criterion_weights.find(c.id);
        if (it == within_criterion_weights.end()) throw ValidationError("no weights for criterion " + c.id);
        const auto& w = it->second;
        if (auto diff = symmetric_difference(c.children, w.ids()); !diff.empty()) {
            throw ValidationError(mismatch_message("weights for " + c.id + " do not match its indicators:", diff));
        }
        if (std::abs(w.sum() - 1.0) > kWeightSumTolerance) {
            throw ValidationError("weights for " + c.id + " are not normalized");
        }
        for (const auto& child : c.children) {
            if (!r.contains(child)) throw ValidationError("missing membership row for indicator '" + child + "'");
        }
        out.emplace(c.id, compose(w.select(c.children), r, op));
    }
    return out;
}

FuzzyVector second_level(const WeightVector& criterion_weights, const std::map<std::string, FuzzyVector>& first,
                         Operator op, double weight_sum_tolerance) {
    std::vector<std::string> keys;
    for (const auto& [k, _] : first) keys.push_back(k);
    if (auto diff = symmetric_difference(criterion_weights.ids(), keys); !diff.empty()) {
        throw ValidationError(mismatch_message("first-level vectors do not match the criterion weights:", diff));
    }
    if (first.empty()) throw ValidationError("no first-level vectors");
    if (std::abs(criterion_weights.sum() - 1.0) > weight_sum_tolerance) {
        throw ValidationError("criterion weights are not normalized");
    }
    const GradeScale& grades = first.begin()->second.grades();
    std::vector<double> out(grades.size(), 0.0);
    for (std::size_t i = 0; i < criterion_weights.size(); ++i) {
        const auto& b = first.at(criterion_weights.ids()[i]);
        if (!(b.grades() == grades)) throw ValidationError("first-level vectors use different grade scales");
        const double w = criterion_weights.values()[i];
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (op == Operator::WeightedAverage) out[k] += w * b.values()[k];
            else out[k] = std::max(out[k], std::min(w, b.values()[k]));
        }
    }
    return FuzzyVector(grades, std::move(out));
}

Verdict verdict(const FuzzyVector& b, const GradeScale& scale) {
    if (b.values().empty()) throw ValidationError("cannot take a verdict on an empty vector");
    if (!(b.grades() == scale)) throw ValidationError("fuzzy vector grades do not match the grade scale");
    // Scale order is best first, so the first maximum is the better grade.
    std::size_t best = 0;
    for (std::size_t k = 1; k < b.values().size(); ++k) {
        if (b.values()[k] > b.values()[best] + kTieTolerance) best = k;
    }
    bool tied = false;
    for (std::size_t k = 0; k < b.values().size(); ++k) {
        if (k != best && std::abs(b.values()[k] - b.values()[best]) <= kTieTolerance) tied = true;
    }
    return {scale.label(best), b.values()[best], tied, b};
}

double Trapezoid::degree(double x) const {
    if (x < a || x > d) return 0.0;
    if (x >= b && x <= c) return 1.0;
    if (x < b) return (x - a) / (b - a);
    return (d - x) / (d - c);
}

void validate(const Trapezoid& t) {
    if (!(std::isfinite(t.a) && std::isfinite(t.d) && t.a <= t.b && t.b <= t.c && t.c <= t.d)) {
        throw ValidationError("trapezoid corners must be finite and ordered a <= b <= c <= d");
    }
}

std::vector<double> membership_row(double value, const std::vector<Trapezoid>& per_grade) {
    std::vector<double> row;
    row.reserve(per_grade.size());
    double total = 0.0;
    for (const auto& t : per_grade) {
        validate(t);
        row.push_back(t.degree(value));
        total += row.back();
    }
    if (!(total > 0.0)) throw ValidationError("value " + std::to_string(value) + " lies outside every membership function");
    for (double& v : row) v /= total;
    return row;
}

}  // namespace siteeval::fuzzy
