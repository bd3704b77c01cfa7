#include "siteeval/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "siteeval/error.hpp"

namespace siteeval {

GradeScale::GradeScale(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() < 2) {
        throw ValidationError("grade scale needs at least 2 grades");
    }
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) throw ValidationError("grade scale: empty grade label");
        if (!seen.insert(l).second) throw ValidationError("grade scale: duplicate grade '" + l + "'");
    }
}

std::optional<std::size_t> GradeScale::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

const char* to_string(IndicatorKind kind) {
    return kind == IndicatorKind::Quantitative ? "quantitative" : "qualitative";
}

IndicatorKind parse_indicator_kind(const std::string& text) {
    if (text == "qualitative") return IndicatorKind::Qualitative;
    if (text == "quantitative") return IndicatorKind::Quantitative;
    throw ValidationError("unknown indicator kind '" + text + "'");
}

const Criterion* IndicatorHierarchy::find_criterion(const std::string& id) const {
    for (const auto& c : criteria) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

const Indicator* IndicatorHierarchy::find_indicator(const std::string& id) const {
    for (const auto& ind : indicators) {
        if (ind.id == id) return &ind;
    }
    return nullptr;
}

const Criterion* IndicatorHierarchy::criterion_of(const std::string& indicator_id) const {
    for (const auto& c : criteria) {
        if (std::find(c.children.begin(), c.children.end(), indicator_id) != c.children.end()) {
            return &c;
        }
    }
    return nullptr;
}

std::vector<std::string> IndicatorHierarchy::ordered_indicator_ids() const {
    std::vector<std::string> out;
    for (const auto& c : criteria) out.insert(out.end(), c.children.begin(), c.children.end());
    return out;
}

std::vector<std::string> IndicatorHierarchy::criterion_ids() const {
    std::vector<std::string> out;
    out.reserve(criteria.size());
    for (const auto& c : criteria) out.push_back(c.id);
    return out;
}

HierarchyValidation validate_hierarchy(const IndicatorHierarchy& h) {
    HierarchyValidation result;
    auto flag = [&](std::string path, std::string message) {
        result.violations.push_back({std::move(path), std::move(message)});
    };

    if (h.criteria.empty()) flag("criteria", "empty criteria list");

    std::set<std::string> indicator_ids;
    for (std::size_t i = 0; i < h.indicators.size(); ++i) {
        const auto& ind = h.indicators[i];
        const std::string path = "indicators[" + std::to_string(i) + "]";
        if (ind.id.empty()) flag(path, "empty indicator id");
        else if (!indicator_ids.insert(ind.id).second) flag(path + "(" + ind.id + ")", "duplicate indicator id");
    }

    std::set<std::string> criterion_ids;
    std::map<std::string, std::string> owner;  // indicator -> first criterion listing it
    for (std::size_t ci = 0; ci < h.criteria.size(); ++ci) {
        const auto& c = h.criteria[ci];
        const std::string path = "criteria[" + std::to_string(ci) + "](" + c.id + ")";
        if (c.id.empty()) flag(path, "empty criterion id");
        else if (!criterion_ids.insert(c.id).second) flag(path, "duplicate criterion id");
        if (indicator_ids.contains(c.id)) flag(path, "criterion id collides with an indicator id");
        if (c.children.empty()) flag(path, "criterion has no indicators");

        for (std::size_t k = 0; k < c.children.size(); ++k) {
            const auto& child = c.children[k];
            const std::string child_path = path + ".children[" + std::to_string(k) + "](" + child + ")";
            if (!indicator_ids.contains(child)) {
                flag(child_path, "unknown indicator");
                continue;
            }
            auto [it, inserted] = owner.emplace(child, c.id);
            if (!inserted) {
                flag(child_path, it->second == c.id
                                     ? "duplicate membership (listed twice under " + c.id + ")"
                                     : "duplicate membership (also under " + it->second + ")");
            }
        }
    }

    for (std::size_t i = 0; i < h.indicators.size(); ++i) {
        const auto& ind = h.indicators[i];
        if (!ind.id.empty() && !owner.contains(ind.id)) {
            flag("indicators[" + std::to_string(i) + "](" + ind.id + ")", "indicator not assigned to any criterion");
        }
    }
    return result;
}

void require_valid(const IndicatorHierarchy& h) {
    const auto v = validate_hierarchy(h);
    if (v.ok()) return;
    std::ostringstream msg;
    msg << "invalid hierarchy:";
    for (const auto& x : v.violations) msg << "\n  " << x.path << ": " << x.message;
    throw ValidationError(msg.str());
}

WeightVector::WeightVector(std::vector<std::string> ids, std::vector<double> values)
    : ids_(std::move(ids)), values_(std::move(values)) {
    if (ids_.size() != values_.size()) {
        throw ValidationError("weight vector: " + std::to_string(ids_.size()) + " ids but " +
                              std::to_string(values_.size()) + " values");
    }
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
            throw ValidationError("weight vector: weight for '" + ids_[i] + "' must be finite and non-negative");
        }
        if (!index_.emplace(ids_[i], i).second) {
            throw ValidationError("weight vector: duplicate id '" + ids_[i] + "'");
        }
    }
}

WeightVector::WeightVector(std::initializer_list<std::pair<std::string, double>> entries) {
    std::vector<std::string> ids;
    std::vector<double> values;
    for (const auto& [id, w] : entries) {
        ids.push_back(id);
        values.push_back(w);
    }
    *this = WeightVector(std::move(ids), std::move(values));
}

std::optional<std::size_t> WeightVector::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

double WeightVector::at(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ValidationError("weight vector has no entry for '" + id + "'");
    return values_[it->second];
}

double WeightVector::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

WeightVector WeightVector::select(const std::vector<std::string>& ids) const {
    std::vector<double> out;
    out.reserve(ids.size());
    for (const auto& id : ids) out.push_back(at(id));
    return WeightVector(ids, std::move(out));
}

WeightVector normalize(const WeightVector& w) {
    const double total = w.sum();
    if (!(total > 0.0)) throw ValidationError("degenerate weight vector");
    std::vector<double> scaled;
    scaled.reserve(w.size());
    for (double v : w.values()) scaled.push_back(v / total);
    return WeightVector(w.ids(), std::move(scaled));
}

std::vector<std::string> symmetric_difference(const std::vector<std::string>& expected,
                                              const std::vector<std::string>& actual) {
    const std::set<std::string> want(expected.begin(), expected.end());
    const std::set<std::string> got(actual.begin(), actual.end());
    std::vector<std::string> out;
    for (const auto& id : want) {
        if (!got.contains(id)) out.push_back("missing " + id);
    }
    for (const auto& id : got) {
        if (!want.contains(id)) out.push_back("unexpected " + id);
    }
    return out;
}

MembershipMatrix::MembershipMatrix(GradeScale grades, std::vector<std::string> indicators,
                                   std::vector<std::vector<double>> rows)
    : grades_(std::move(grades)), indicators_(std::move(indicators)) {
    if (indicators_.size() != rows.size()) {
        throw ValidationError("membership matrix: " + std::to_string(indicators_.size()) + " indicators but " +
                              std::to_string(rows.size()) + " rows");
    }
    const std::size_t g = grades_.size();
    data_.reserve(rows.size() * g);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& id = indicators_[i];
        if (!index_.emplace(id, i).second) {
            throw ValidationError("membership matrix: duplicate row for '" + id + "'");
        }
        if (rows[i].size() != g) {
            throw ValidationError("membership matrix: row '" + id + "' has " + std::to_string(rows[i].size()) +
                                  " entries, expected " + std::to_string(g));
        }
        for (std::size_t k = 0; k < g; ++k) {
            const double v = rows[i][k];
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ValidationError("membership matrix: entry (" + id + ", " + grades_.label(k) +
                                      ") must lie in [0,1]");
            }
            data_.push_back(v);
        }
    }
}

std::span<const double> MembershipMatrix::row(const std::string& indicator) const {
    auto it = index_.find(indicator);
    if (it == index_.end()) throw ValidationError("missing membership row for indicator '" + indicator + "'");
    const std::size_t g = grades_.size();
    return std::span<const double>(data_).subspan(it->second * g, g);
}

std::vector<RowSumIssue> MembershipMatrix::row_sum_issues(double tolerance) const {
    std::vector<RowSumIssue> out;
    for (const auto& id : indicators_) {
        const auto r = row(id);
        const double s = std::accumulate(r.begin(), r.end(), 0.0);
        if (std::abs(s - 1.0) > tolerance) out.push_back({id, s});
    }
    return out;
}

}  // namespace siteeval
