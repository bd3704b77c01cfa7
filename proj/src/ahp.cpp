#include "siteeval/ahp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "siteeval/error.hpp"

namespace siteeval::ahp {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& raw, const std::string& whole) {
    const std::string s = trim(raw);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ValidationError("invalid judgment value '" + whole + "'");
    }
    return v;
}

constexpr double kNormalizedTolerance = 1e-6;

}  // namespace

double parse_judgment(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_number(text, text);
    const double num = parse_number(text.substr(0, slash), text);
    const double den = parse_number(text.substr(slash + 1), text);
    if (den == 0.0) throw ValidationError("invalid judgment value '" + text + "' (zero denominator)");
    return num / den;
}

JudgmentMatrix::JudgmentMatrix(std::string node, std::vector<std::string> items,
                               std::vector<std::vector<double>> rows)
    : node_(std::move(node)), items_(std::move(items)) {
    const std::size_t n = items_.size();
    if (n == 0) throw ValidationError("judgment matrix '" + node_ + "' is empty");
    if (rows.size() != n) {
        throw ValidationError("judgment matrix '" + node_ + "': expected " + std::to_string(n) + " rows, got " +
                              std::to_string(rows.size()));
    }
    data_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw ValidationError("judgment matrix '" + node_ + "': row " + items_[i] + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
        }
        data_.insert(data_.end(), rows[i].begin(), rows[i].end());
    }
    validate();
}

JudgmentMatrix JudgmentMatrix::from_text(std::string node, std::vector<std::string> items,
                                         const std::vector<std::vector<std::string>>& cells) {
    std::vector<std::vector<double>> rows;
    rows.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < cells[i].size(); ++j) {
            try {
                row.push_back(parse_judgment(cells[i][j]));
            } catch (const ValidationError& e) {
                throw ValidationError("judgment matrix '" + node + "' cell (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + "): " + e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    JudgmentMatrix m(std::move(node), std::move(items), std::move(rows));
    for (const auto& row : cells) m.text_.insert(m.text_.end(), row.begin(), row.end());
    return m;
}

std::optional<std::string> JudgmentMatrix::text(std::size_t i, std::size_t j) const {
    if (text_.empty()) return std::nullopt;
    return text_[i * order() + j];
}

void JudgmentMatrix::validate() const {
    const std::size_t n = order();
    std::set<std::string> seen;
    for (const auto& id : items_) {
        if (!seen.insert(id).second) {
            throw ValidationError("judgment matrix '" + node_ + "': duplicate item '" + id + "'");
        }
    }
    auto cell = [&](std::size_t i, std::size_t j) {
        return "judgment matrix '" + node_ + "' cell (" + items_[i] + "," + items_[j] + ")";
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(at(i, i) - 1.0) > kReciprocityTolerance) throw ValidationError(cell(i, i) + ": diagonal must be 1");
        for (std::size_t j = 0; j < n; ++j) {
            const double a = at(i, j);
            if (!(a >= kMinScale * (1.0 - 1e-12) && a <= kMaxScale * (1.0 + 1e-12))) {
                throw ValidationError(cell(i, j) + ": value outside the 1/9..9 scale");
            }
            if (j > i && std::abs(a * at(j, i) - 1.0) > kReciprocityTolerance) {
                throw ValidationError(cell(i, j) + ": not reciprocal (a_ij * a_ji must be 1)");
            }
        }
    }
}

double ri_lookup(std::size_t n, const RiTable& table) {
    if (n == 0) throw ValidationError("RI undefined for order 0");
    if (n > table.values.size()) {
        throw ValidationError("RI undefined for order > " + std::to_string(table.values.size()));
    }
    return table.values[n - 1];
}

AhpResult derive_weights(const JudgmentMatrix& m, const RiTable& ri, const PowerIterationOptions& opts) {
    const std::size_t n = m.order();
    const double ri_value = ri_lookup(n, ri);

    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    int iterations = 0;
    bool converged = false;
    while (iterations < opts.max_iterations) {
        ++iterations;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * w[j];
            next[i] = acc;
            total += acc;
        }
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= total;
            change = std::max(change, std::abs(next[i] - w[i]));
        }
        w.swap(next);
        if (change < opts.tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw ValidationError("judgment matrix '" + m.node() + "': power iteration did not converge in " +
                              std::to_string(opts.max_iterations) + " iterations");
    }

    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double aw = 0.0;
        for (std::size_t j = 0; j < n; ++j) aw += m.at(i, j) * w[j];
        lambda += aw / w[i];
    }
    lambda /= static_cast<double>(n);

    ConsistencyReport c;
    c.lambda_max = lambda;
    c.ri = ri_value;
    c.ci = n >= 2 ? (lambda - static_cast<double>(n)) / static_cast<double>(n - 1) : 0.0;
    c.cr = (n <= 2 || ri_value == 0.0) ? 0.0 : c.ci / ri_value;
    c.consistent = c.cr < kConsistencyThreshold;

    return {WeightVector(m.items(), std::move(w)), c, iterations};
}

WeightVector synthesize_global(const IndicatorHierarchy& h, const WeightVector& criterion_weights,
                               const std::map<std::string, WeightVector>& per_criterion) {
    const auto crit_ids = h.criterion_ids();
    if (auto diff = symmetric_difference(crit_ids, criterion_weights.ids()); !diff.empty()) {
        std::string msg = "criterion weights do not match the hierarchy:";
        for (const auto& d : diff) msg += " " + d;
        throw ValidationError(msg);
    }
    std::vector<std::string> keys;
    for (const auto& [k, _] : per_criterion) keys.push_back(k);
    if (auto diff = symmetric_difference(crit_ids, keys); !diff.empty()) {
        std::string msg = "per-criterion weights do not match the hierarchy:";
        for (const auto& d : diff) msg += " " + d;
        throw ValidationError(msg);
    }
    if (std::abs(criterion_weights.sum() - 1.0) > kNormalizedTolerance) {
        throw ValidationError("criterion weights are not normalized");
    }

    std::vector<std::string> ids;
    std::vector<double> values;
    for (const auto& c : h.criteria) {
        const auto& rel = per_criterion.at(c.id);
        if (auto diff = symmetric_difference(c.children, rel.ids()); !diff.empty()) {
            std::string msg = "relative weights for " + c.id + " do not match its indicators:";
            for (const auto& d : diff) msg += " " + d;
            throw ValidationError(msg);
        }
        if (std::abs(rel.sum() - 1.0) > kNormalizedTolerance) {
            throw ValidationError("relative weights for " + c.id + " are not normalized");
        }
        const double cw = criterion_weights.at(c.id);
        for (const auto& child : c.children) {
            ids.push_back(child);
            values.push_back(cw * rel.at(child));
        }
    }
    return WeightVector(std::move(ids), std::move(values));
}

}  // namespace siteeval::ahp
