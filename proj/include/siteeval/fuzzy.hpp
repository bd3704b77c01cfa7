#pragma once

#include <map>
#include <string>
#include <vector>

#include "siteeval/core_model.hpp"

namespace siteeval::fuzzy {

// Membership per grade. Values are kept raw (never re-normalized).
class FuzzyVector {
public:
    FuzzyVector() = default;
    FuzzyVector(GradeScale grades, std::vector<double> values);

    const GradeScale& grades() const noexcept { return grades_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double at(const std::string& grade) const;
    double sum() const;

private:
    GradeScale grades_;
    std::vector<double> values_;
};

inline constexpr double kWeightSumTolerance = 1e-6;

enum class Operator {
    WeightedAverage,  // M(., +): b_j = sum_i w_i r_ij
    MinMax,           // M(min, max): b_j = max_i min(w_i, r_ij)
};

const char* to_string(Operator op);
Operator parse_operator(const std::string& text);

// Composes one weight vector with the matching membership rows.
FuzzyVector compose(const WeightVector& weights, const MembershipMatrix& r, Operator op = Operator::WeightedAverage);

// One vector per criterion, from the weights of that criterion's indicators.
std::map<std::string, FuzzyVector> first_level(const IndicatorHierarchy& h,
                                               const std::map<std::string, WeightVector>& within_criterion_weights,
                                               const MembershipMatrix& r, Operator op = Operator::WeightedAverage);

// Weights must sum to 1 within `weight_sum_tolerance`; widen it for weights
// published with rounded entries.
FuzzyVector second_level(const WeightVector& criterion_weights, const std::map<std::string, FuzzyVector>& first,
                         Operator op = Operator::WeightedAverage, double weight_sum_tolerance = kWeightSumTolerance);

struct Verdict {
    std::string grade;
    double membership = 0.0;
    bool tied = false;
    FuzzyVector full_vector;
};

inline constexpr double kTieTolerance = 1e-12;

// Max-membership grade. Near-ties (within 1e-12) go to the better grade and set `tied`.
Verdict verdict(const FuzzyVector& b, const GradeScale& scale);

// Piecewise-linear membership: 0 outside [a, d], 1 on [b, c], linear in between.
// a == b or c == d gives a shoulder.
struct Trapezoid {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    double degree(double x) const;
};

void validate(const Trapezoid& t);

// Evaluates one trapezoid per grade at `value` and scales the row to unit sum.
// Throws when the value falls outside every trapezoid.
std::vector<double> membership_row(double value, const std::vector<Trapezoid>& per_grade);

}  // namespace siteeval::fuzzy
