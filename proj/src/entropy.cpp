#include "siteeval/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "siteeval/error.hpp"

namespace siteeval::entropy {

namespace {
constexpr double kShareSumTolerance = 1e-9;
constexpr double kUniformTolerance = 1e-12;
}  // namespace

DecisionMatrix::DecisionMatrix(std::vector<std::string> alternatives, std::vector<std::string> indicators,
                               std::vector<std::vector<double>> rows)
    : alternatives_(std::move(alternatives)), indicators_(std::move(indicators)) {
    if (alternatives_.size() < 2) throw ValidationError("decision matrix needs at least 2 observations");
    if (indicators_.empty()) throw ValidationError("decision matrix has no indicator columns");
    if (rows.size() != alternatives_.size()) {
        throw ValidationError("decision matrix: " + std::to_string(alternatives_.size()) + " alternatives but " +
                              std::to_string(rows.size()) + " rows");
    }
    std::set<std::string> seen;
    for (const auto& id : indicators_) {
        if (!seen.insert(id).second) throw ValidationError("decision matrix: duplicate indicator '" + id + "'");
    }
    data_.reserve(rows.size() * indicators_.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != indicators_.size()) {
            throw ValidationError("decision matrix: row '" + alternatives_[r] + "' has " +
                                  std::to_string(rows[r].size()) + " values, expected " +
                                  std::to_string(indicators_.size()));
        }
        for (std::size_t c = 0; c < indicators_.size(); ++c) {
            const double v = rows[r][c];
            if (!std::isfinite(v) || v < 0.0) {
                throw ValidationError("decision matrix: value at (" + alternatives_[r] + ", " + indicators_[c] +
                                      ") must be finite and non-negative");
            }
            data_.push_back(v);
        }
    }
}

std::vector<double> DecisionMatrix::column(std::size_t c) const {
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
    return out;
}

std::vector<std::vector<double>> column_shares(const DecisionMatrix& m) {
    std::vector<std::vector<double>> out;
    out.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        auto col = m.column(c);
        const double total = std::accumulate(col.begin(), col.end(), 0.0);
        if (!(total > 0.0)) throw ValidationError("degenerate indicator column '" + m.indicators()[c] + "'");
        for (double& v : col) v /= total;
        out.push_back(std::move(col));
    }
    return out;
}

double information_entropy(std::span<const double> shares, std::size_t n) {
    if (n < 2) throw ValidationError("entropy needs at least 2 observations");
    if (shares.size() != n) throw ValidationError("share count does not match the observation count");
    double total = 0.0;
    double acc = 0.0;
    for (double p : shares) {
        if (!(p >= 0.0)) throw ValidationError("shares must be non-negative");
        total += p;
        if (p > 0.0) acc += p * std::log(p);
    }
    if (std::abs(total - 1.0) > kShareSumTolerance) throw ValidationError("shares must sum to 1");
    const double e = -acc / std::log(static_cast<double>(n));
    // Rounding can push a uniform column a hair above 1.
    return std::clamp(e, 0.0, 1.0);
}

std::vector<double> column_entropies(const DecisionMatrix& m) {
    const auto shares = column_shares(m);
    std::vector<double> out;
    out.reserve(shares.size());
    for (const auto& col : shares) out.push_back(information_entropy(col, m.rows()));
    return out;
}

WeightVector entropy_weights(const DecisionMatrix& m) {
    const auto e = column_entropies(m);
    std::vector<double> divergence;
    divergence.reserve(e.size());
    double total = 0.0;
    for (double ej : e) {
        const double d = ej >= 1.0 - kUniformTolerance ? 0.0 : 1.0 - ej;
        divergence.push_back(d);
        total += d;
    }
    if (!(total > 0.0)) throw ValidationError("no information content (every indicator column is uniform)");
    for (double& d : divergence) d /= total;
    return WeightVector(m.indicators(), std::move(divergence));
}

}  // namespace siteeval::entropy
