#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "siteeval/core_model.hpp"

namespace siteeval::entropy {

// Observations (rows, e.g. stations) by indicators (columns); entries are
// non-negative and every column has positive mass.
class DecisionMatrix {
public:
    DecisionMatrix(std::vector<std::string> alternatives, std::vector<std::string> indicators,
                   std::vector<std::vector<double>> rows);

    const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }
    const std::vector<std::string>& indicators() const noexcept { return indicators_; }
    std::size_t rows() const noexcept { return alternatives_.size(); }
    std::size_t cols() const noexcept { return indicators_.size(); }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }
    std::vector<double> column(std::size_t c) const;

private:
    std::vector<std::string> alternatives_;
    std::vector<std::string> indicators_;
    std::vector<double> data_;
};

// Column-major shares: result[c][r] = X_rc / sum_r X_rc.
std::vector<std::vector<double>> column_shares(const DecisionMatrix& m);

// -(1/ln n) * sum p ln p, with 0 ln 0 = 0. `n` is the observation count (n >= 2).
double information_entropy(std::span<const double> shares, std::size_t n);

std::vector<double> column_entropies(const DecisionMatrix& m);

// w_j = (1 - e_j) / sum_k (1 - e_k). Throws "no information content" when every
// column is uniform.
WeightVector entropy_weights(const DecisionMatrix& m);

}  // namespace siteeval::entropy
