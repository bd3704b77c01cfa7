#include "siteeval/fusion.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "siteeval/error.hpp"

namespace siteeval::fusion {

WeightVector fuse(const WeightVector& subjective, const WeightVector& objective, const FusionConfig& cfg) {
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
    if (auto diff = symmetric_difference(subjective.ids(), objective.ids()); !diff.empty()) {
        std::string msg = "subjective and objective weights cover different ids:";
        for (const auto& d : diff) msg += " " + d;
        throw ValidationError(msg);
    }
    if (!(cfg.sum_tolerance >= 0.0)) throw ValidationError("sum tolerance must be non-negative");
    if (std::abs(subjective.sum() - 1.0) > cfg.sum_tolerance) {
        throw ValidationError("subjective weights sum to " + std::to_string(subjective.sum()) + ", expected 1");
    }
    if (std::abs(objective.sum() - 1.0) > cfg.sum_tolerance) {
        throw ValidationError("objective weights sum to " + std::to_string(objective.sum()) + ", expected 1");
    }

    std::vector<double> out;
    out.reserve(subjective.size());
    for (std::size_t i = 0; i < subjective.size(); ++i) {
        const auto& id = subjective.ids()[i];
        out.push_back(cfg.alpha * subjective.values()[i] + (1.0 - cfg.alpha) * objective.at(id));
    }
    return WeightVector(subjective.ids(), std::move(out));
}

WeightVector aggregate_by_criterion(const IndicatorHierarchy& h, const WeightVector& indicator_weights) {
    std::vector<double> sums;
    sums.reserve(h.criteria.size());
    for (const auto& c : h.criteria) {
        double s = 0.0;
        for (const auto& child : c.children) s += indicator_weights.at(child);
        sums.push_back(s);
    }
    return WeightVector(h.criterion_ids(), std::move(sums));
}

WeightVector within_criterion(const Criterion& c, const WeightVector& indicator_weights) {
    try {
        return normalize(indicator_weights.select(c.children));
    } catch (const ValidationError& e) {
        throw ValidationError("criterion " + c.id + ": " + e.what());
    }
}

}  // namespace siteeval::fusion
