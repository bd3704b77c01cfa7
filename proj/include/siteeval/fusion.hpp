#pragma once

#include "siteeval/core_model.hpp"

namespace siteeval::fusion {

struct FusionConfig {
    double alpha = 0.5;  // share of the subjective (AHP) weight
    // Allowed deviation of each input's sum from 1. Widen it to fuse tables
    // published with rounded entries.
    double sum_tolerance = 1e-6;
};

// w_j = alpha * subjective_j + (1 - alpha) * objective_j, keyed and ordered by the
// subjective vector. Both inputs must cover the same ids and sum to 1 within cfg.sum_tolerance.
WeightVector fuse(const WeightVector& subjective, const WeightVector& objective, const FusionConfig& cfg);

// Sums indicator weights within each criterion, in hierarchy order.
WeightVector aggregate_by_criterion(const IndicatorHierarchy& h, const WeightVector& indicator_weights);

// Weights of one criterion's children rescaled to unit sum.
WeightVector within_criterion(const Criterion& c, const WeightVector& indicator_weights);

}  // namespace siteeval::fusion
