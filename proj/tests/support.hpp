#pragma once

// Shared fixtures and independent reference computations for the test suites.
// The oracles here deliberately avoid the library's algorithms: eigenvectors come
// from repeated matrix squaring rather than vector power iteration, and fuzzy and
// entropy arithmetic is spelled out with plain loops.

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "siteeval/ahp.hpp"
#include "siteeval/core_model.hpp"

namespace testsupport {

using Matrix = std::vector<std::vector<double>>;

inline std::filesystem::path fixture_dir() { return SITEEVAL_FIXTURE_DIR; }
inline std::filesystem::path fixture_config() { return fixture_dir() / "project.json"; }

inline const std::vector<std::string> kGrades{"Excellent", "Good", "Poor"};

// Pairwise comparison matrices of the worked campus case.
inline const Matrix kGoalMatrix{
    {1, 3, 3, 3}, {1.0 / 3, 1, 3, 3}, {1.0 / 3, 1.0 / 3, 1, 1}, {1.0 / 3, 1.0 / 3, 1, 1}};
inline const Matrix kB1Matrix{{1, 3, 3}, {1.0 / 3, 1, 0.5}, {1.0 / 3, 2, 1}};
inline const Matrix kB2Matrix{{1, 0.5, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3},
                              {2, 1, 0.5, 0.5, 0.5, 0.5},
                              {3, 2, 1, 2, 1, 1},
                              {3, 2, 0.5, 1, 0.5, 0.5},
                              {3, 2, 1, 2, 1, 1},
                              {3, 2, 1, 2, 1, 1}};
inline const Matrix kB3Matrix{{1, 1.0 / 3}, {3, 1}};
inline const Matrix kB4Matrix{{1, 1.0 / 3, 1.0 / 3}, {3, 1, 0.5}, {3, 2, 1}};

inline const std::vector<std::pair<std::string, std::vector<std::string>>> kCriteria{
    {"B1", {"C1", "C2", "C3"}},
    {"B2", {"C4", "C5", "C6", "C7", "C8", "C9"}},
    {"B3", {"C10", "C11"}},
    {"B4", {"C12", "C13", "C14"}},
};

inline const std::vector<std::string> kIndicators{"C1", "C2", "C3",  "C4",  "C5",  "C6",  "C7",
                                                  "C8", "C9", "C10", "C11", "C12", "C13", "C14"};

// Membership rows (Excellent, Good, Poor) per indicator.
inline const std::map<std::string, std::vector<double>> kMembership{
    {"C1", {0.1, 0.5, 0.4}},  {"C2", {0.3, 0.6, 0.1}},  {"C3", {0.2, 0.5, 0.3}},  {"C4", {0.0, 0.5, 0.5}},
    {"C5", {0.0, 0.4, 0.6}},  {"C6", {0.1, 0.3, 0.6}},  {"C7", {0.4, 0.4, 0.2}},  {"C8", {0.4, 0.4, 0.2}},
    {"C9", {0.0, 0.2, 0.8}},  {"C10", {0.2, 0.4, 0.4}}, {"C11", {0.1, 0.6, 0.3}}, {"C12", {0.3, 0.5, 0.2}},
    {"C13", {0.4, 0.6, 0.0}}, {"C14", {0.3, 0.6, 0.1}},
};

// Published objective weights, consumed as input.
inline const std::vector<double> kObjective{0.0460, 0.1313, 0.0308, 0.3449, 0.0190, 0.0441, 0.0443,
                                            0.0398, 0.0409, 0.0138, 0.0319, 0.1563, 0.0360, 0.0209};

// Published subjective weights as printed (three decimals).
inline const std::vector<double> kPrintedCriterionWeights{0.487, 0.276, 0.118, 0.118};
inline const std::vector<double> kPrintedRelative{0.594, 0.157, 0.249, 0.065, 0.107, 0.227, 0.147,
                                                  0.227, 0.227, 0.25,  0.75,  0.140, 0.333, 0.528};
inline const std::vector<double> kPrintedGlobal{0.289, 0.076, 0.121, 0.018, 0.030, 0.063, 0.041,
                                                0.063, 0.063, 0.030, 0.089, 0.017, 0.040, 0.062};
// Published comprehensive weights at alpha = 0.5.
inline const std::vector<double> kPrintedComprehensive{0.1675,  0.10365, 0.0759, 0.18145, 0.0245,
                                                       0.05355, 0.04265, 0.0514, 0.05195, 0.0219,
                                                       0.06045, 0.08665, 0.038,  0.04145};
// Published first-level vectors and the second-level result.
inline const Matrix kPrintedFirstLevel{
    {0.1563, 0.5157, 0.328}, {0.1723, 0.3384, 0.4893}, {0.125, 0.55, 0.325}, {0.3326, 0.5866, 0.0808}};
inline const std::vector<double> kPrintedSecondLevel{0.1896, 0.458, 0.3524};

inline std::vector<std::string> ids(const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

inline siteeval::IndicatorHierarchy campus_hierarchy() {
    siteeval::IndicatorHierarchy h;
    h.goal_name = "campus site plan";
    for (const auto& [cid, children] : kCriteria) {
        h.criteria.push_back({cid, cid, children});
        for (const auto& c : children) h.indicators.push_back({c, c, siteeval::IndicatorKind::Qualitative});
    }
    return h;
}

inline siteeval::MembershipMatrix campus_membership() {
    std::vector<std::vector<double>> rows;
    for (const auto& id : kIndicators) rows.push_back(kMembership.at(id));
    return siteeval::MembershipMatrix(siteeval::GradeScale(kGrades), kIndicators, rows);
}

inline siteeval::ahp::JudgmentMatrix judgment(const std::string& node, const std::vector<std::string>& items,
                                              const Matrix& m) {
    return siteeval::ahp::JudgmentMatrix(node, items, m);
}

// ---- Oracles ----

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix c(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

// Principal eigenvector as the normalized row sums of A^(2^k), rescaling each
// square to keep the entries bounded.
inline std::vector<double> oracle_eigenvector(const Matrix& a) {
    Matrix p = a;
    for (int step = 0; step < 40; ++step) {
        p = multiply(p, p);
        double total = 0.0;
        for (const auto& row : p)
            for (double x : row) total += x;
        for (auto& row : p)
            for (double& x : row) x /= total;
    }
    std::vector<double> w(a.size(), 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (double x : p[i]) w[i] += x;
        s += w[i];
    }
    for (double& x : w) x /= s;
    return w;
}

struct OracleConsistency {
    double lambda_max;
    double ci;
    double cr;
};

inline OracleConsistency oracle_consistency(const Matrix& a, const std::vector<double>& w) {
    static const double ri[] = {0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45};
    const std::size_t n = a.size();
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double aw = 0.0;
        for (std::size_t j = 0; j < n; ++j) aw += a[i][j] * w[j];
        lambda += aw / w[i];
    }
    lambda /= static_cast<double>(n);
    if (n <= 2) return {lambda, 0.0, 0.0};
    const double ci = (lambda - static_cast<double>(n)) / static_cast<double>(n - 1);
    return {lambda, ci, ci / ri[n - 1]};
}

inline std::vector<double> oracle_compose(const std::vector<double>& w, const Matrix& rows) {
    std::vector<double> b(rows.front().size(), 0.0);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) b[k] += w[i] * rows[i][k];
    return b;
}

// Entropy weights of a row-major matrix, straight from the definitions.
inline std::vector<double> oracle_entropy_weights(const Matrix& x) {
    const std::size_t n = x.size();
    const std::size_t m = x.front().size();
    std::vector<double> d(m, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n; ++i) col += x[i][j];
        double h = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = x[i][j] / col;
            if (p > 0.0) h -= p * std::log(p);
        }
        d[j] = 1.0 - h / std::log(static_cast<double>(n));
        if (d[j] < 1e-12) d[j] = 0.0;
        total += d[j];
    }
    for (double& v : d) v /= total;
    return d;
}

// Consistent matrix a_ij = w_i / w_j.
inline Matrix consistent_matrix(const std::vector<double>& w) {
    Matrix a(w.size(), std::vector<double>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) a[i][j] = w[i] / w[j];
    return a;
}

// Random reciprocal matrix on the 1/9..9 scale.
inline Matrix random_reciprocal(std::mt19937_64& rng, std::size_t n) {
    static const double scale[] = {1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::uniform_int_distribution<int> pick(0, 8);
    std::bernoulli_distribution invert(0.5);
    Matrix a(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = scale[pick(rng)];
            if (invert(rng)) v = 1.0 / v;
            a[i][j] = v;
            a[j][i] = 1.0 / v;
        }
    }
    return a;
}

inline constexpr std::uint64_t kSeed = 20240917;

}  // namespace testsupport
