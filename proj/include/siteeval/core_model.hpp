#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace siteeval {

// Ordered grade labels, best first. Tie-breaking everywhere follows this order.
class GradeScale {
public:
    GradeScale() = default;
    explicit GradeScale(std::vector<std::string> labels);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    std::optional<std::size_t> index_of(const std::string& label) const;

    bool operator==(const GradeScale&) const = default;

private:
    std::vector<std::string> labels_;
};

enum class IndicatorKind { Qualitative, Quantitative };

const char* to_string(IndicatorKind kind);
IndicatorKind parse_indicator_kind(const std::string& text);

struct Indicator {
    std::string id;
    std::string name;
    IndicatorKind kind = IndicatorKind::Qualitative;

    bool operator==(const Indicator&) const = default;
};

struct Criterion {
    std::string id;
    std::string name;
    std::vector<std::string> children;  // indicator ids, in display order

    bool operator==(const Criterion&) const = default;
};

struct IndicatorHierarchy {
    std::string goal_name;
    std::vector<Criterion> criteria;
    std::vector<Indicator> indicators;

    const Criterion* find_criterion(const std::string& id) const;
    const Indicator* find_indicator(const std::string& id) const;
    // Parent criterion of an indicator; nullptr when the indicator is unassigned.
    const Criterion* criterion_of(const std::string& indicator_id) const;
    // Indicator ids in criterion order (B1 children, then B2 children, ...).
    std::vector<std::string> ordered_indicator_ids() const;
    std::vector<std::string> criterion_ids() const;

    bool operator==(const IndicatorHierarchy&) const = default;
};

struct Violation {
    std::string path;
    std::string message;
};

struct HierarchyValidation {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

HierarchyValidation validate_hierarchy(const IndicatorHierarchy& h);

// Throws ValidationError listing every violation.
void require_valid(const IndicatorHierarchy& h);

// Non-negative weights keyed by stable ids; insertion order is preserved.
class WeightVector {
public:
    WeightVector() = default;
    WeightVector(std::vector<std::string> ids, std::vector<double> values);
    WeightVector(std::initializer_list<std::pair<std::string, double>> entries);

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::vector<double>& values() const noexcept { return values_; }

    bool contains(const std::string& id) const { return index_.contains(id); }
    std::optional<std::size_t> index_of(const std::string& id) const;
    // Throws ValidationError naming the id when absent.
    double at(const std::string& id) const;
    double sum() const;

    // Same weights re-ordered (and restricted) to `ids`. Every id must be present.
    WeightVector select(const std::vector<std::string>& ids) const;

    bool operator==(const WeightVector& other) const {
        return ids_ == other.ids_ && values_ == other.values_;
    }

private:
    std::vector<std::string> ids_;
    std::vector<double> values_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Scales to unit sum. Throws ValidationError("degenerate weight vector") on an all-zero input.
WeightVector normalize(const WeightVector& w);

// Lists ids present in exactly one of the two sets, each tagged with the side it is missing from.
std::vector<std::string> symmetric_difference(const std::vector<std::string>& expected,
                                              const std::vector<std::string>& actual);

struct RowSumIssue {
    std::string indicator;
    double sum = 0.0;
};

// Indicators x grades membership degrees (the fuzzy evaluation matrix).
class MembershipMatrix {
public:
    MembershipMatrix() = default;
    MembershipMatrix(GradeScale grades, std::vector<std::string> indicators,
                     std::vector<std::vector<double>> rows);

    const GradeScale& grades() const noexcept { return grades_; }
    const std::vector<std::string>& indicators() const noexcept { return indicators_; }
    bool contains(const std::string& indicator) const { return index_.contains(indicator); }
    // Throws ValidationError naming the indicator when the row is missing.
    std::span<const double> row(const std::string& indicator) const;

    // Rows whose sum differs from 1 by more than `tolerance`.
    std::vector<RowSumIssue> row_sum_issues(double tolerance = 1e-6) const;

private:
    GradeScale grades_;
    std::vector<std::string> indicators_;
    std::vector<double> data_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace siteeval
