#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siteeval/core_model.hpp"

namespace siteeval::ahp {

inline constexpr double kReciprocityTolerance = 1e-9;
inline constexpr double kConsistencyThreshold = 0.10;
inline constexpr double kMinScale = 1.0 / 9.0;
inline constexpr double kMaxScale = 9.0;

// Parses "3", "1/3", "0.5" or " 2 / 7 ". Fractions are divided once, so "1/3"
// becomes the nearest double to one third.
double parse_judgment(const std::string& text);

// Positive reciprocal pairwise-comparison matrix for one hierarchy node. The
// constructor enforces a_ii = 1, a_ij * a_ji = 1 (within 1e-9) and the 1/9..9 scale,
// naming the offending cell on failure.
class JudgmentMatrix {
public:
    JudgmentMatrix(std::string node, std::vector<std::string> items, std::vector<std::vector<double>> rows);

    // Keeps the original cell text so the matrix can be written back verbatim.
    static JudgmentMatrix from_text(std::string node, std::vector<std::string> items,
                                    const std::vector<std::vector<std::string>>& cells);

    const std::string& node() const noexcept { return node_; }
    const std::vector<std::string>& items() const noexcept { return items_; }
    std::size_t order() const noexcept { return items_.size(); }
    double at(std::size_t i, std::size_t j) const { return data_[i * order() + j]; }
    // Original text for cell (i, j) when built with from_text.
    std::optional<std::string> text(std::size_t i, std::size_t j) const;

private:
    void validate() const;

    std::string node_;
    std::vector<std::string> items_;
    std::vector<double> data_;
    std::vector<std::string> text_;
};

// Average random index by matrix order (index 0 holds n = 1).
struct RiTable {
    std::vector<double> values{0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45};
};

// Throws ValidationError("RI undefined for order > 9") past the table end.
double ri_lookup(std::size_t n, const RiTable& table = {});

struct ConsistencyReport {
    double lambda_max = 0.0;
    double ci = 0.0;
    double ri = 0.0;
    double cr = 0.0;
    bool consistent = true;
};

struct PowerIterationOptions {
    double tolerance = 1e-10;  // max-abs change between successive unit-sum iterates
    int max_iterations = 1000;
};

struct AhpResult {
    WeightVector weights;  // keyed by the matrix items
    ConsistencyReport consistency;
    int iterations = 0;
};

// Principal eigenvector by power iteration from the uniform vector, then
// lambda_max = mean_i (A w)_i / w_i, CI = (lambda_max - n)/(n - 1), CR = CI/RI.
// CR is 0 for n <= 2.
AhpResult derive_weights(const JudgmentMatrix& m, const RiTable& ri = {}, const PowerIterationOptions& opts = {});

// global(indicator) = criterion weight * relative weight within its criterion.
WeightVector synthesize_global(const IndicatorHierarchy& h, const WeightVector& criterion_weights,
                               const std::map<std::string, WeightVector>& per_criterion);

}  // namespace siteeval::ahp
