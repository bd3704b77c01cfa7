#include "siteeval/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <set>
#include <sstream>

#include "siteeval/entropy.hpp"
#include "siteeval/error.hpp"
#include "siteeval/fusion.hpp"

namespace siteeval {

namespace {

template <typename F>
auto in_stage(const char* stage, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const ValidationError& e) {
        throw StageError(stage, e.what());
    }
}

std::string fmt(double v, int digits = 4) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
    return out;
}

}  // namespace

std::optional<ScreeningStage> run_screening(const ProjectConfig& cfg, std::vector<Warning>& warnings) {
    const auto& sc = cfg.screening;
    if (!sc.has_data()) return std::nullopt;
    return in_stage("screening", [&] {
        ScreeningStage stage;
        stage.criteria = sc.criteria;
        stage.stats = sc.survey ? delphi::round_statistics(*sc.survey, cfg.classes, sc.full_mark_threshold) : *sc.stats;
        stage.result = delphi::screen(stage.stats, sc.criteria);

        std::optional<std::vector<delphi::IndicatorStats>> previous;
        if (sc.previous_survey) previous = delphi::round_statistics(*sc.previous_survey, cfg.classes, sc.full_mark_threshold);
        else if (sc.previous_stats) previous = *sc.previous_stats;
        if (previous) {
            stage.convergence = delphi::convergence_report(*previous, stage.stats);
            if (!stage.convergence->converged) {
                warnings.push_back({"delphi_not_converged",
                                    "fewer than half of the indicators reduced their coefficient of variation (" +
                                        std::to_string(stage.convergence->improved) + " of " +
                                        std::to_string(stage.convergence->deltas.size()) + ")"});
            }
        }

        for (const auto& d : stage.result.overridden) {
            warnings.push_back({"screening_override",
                                d.indicator + " retained by override despite: " + join(d.reasons)});
        }
        for (const auto& id : stage.result.unmatched_overrides) {
            warnings.push_back({"unmatched_override", "override '" + id + "' matches no screened indicator"});
        }
        std::set<std::string> kept;
        std::set<std::string> surveyed;
        for (const auto& d : stage.result.selected) kept.insert(d.indicator);
        for (const auto& d : stage.result.overridden) kept.insert(d.indicator);
        for (const auto& s : stage.stats) surveyed.insert(s.indicator);
        for (const auto& id : cfg.hierarchy.ordered_indicator_ids()) {
            if (!surveyed.contains(id)) {
                warnings.push_back({"indicator_not_surveyed", id + " has no screening statistics"});
            } else if (!kept.contains(id)) {
                warnings.push_back({"indicator_rejected_by_screening", id + " is in the hierarchy but failed screening"});
            }
        }
        for (const auto& d : stage.result.selected) {
            if (!cfg.hierarchy.find_indicator(d.indicator)) {
                warnings.push_back({"selected_indicator_not_in_hierarchy",
                                    d.indicator + " passed screening but is not in the hierarchy"});
            }
        }
        return stage;
    });
}

SubjectiveStage run_subjective(const ProjectConfig& cfg, std::vector<Warning>& warnings) {
    return in_stage("ahp", [&] {
        const ahp::RiTable ri = cfg.ri_table.value_or(ahp::RiTable{});
        SubjectiveStage stage;

        auto derive = [&](const std::string& node) {
            const auto* m = cfg.matrix_for(node);
            if (!m) throw ValidationError("no judgment matrix for node '" + node + "'");
            auto result = ahp::derive_weights(*m, ri);
            if (!result.consistency.consistent) {
                const std::string detail = "judgment matrix '" + node + "' is inconsistent (CR = " +
                                           fmt(result.consistency.cr) + " ≥ 0.10)";
                if (!cfg.allow_inconsistent) {
                    throw ValidationError(detail + "; revise the judgments or pass --allow-inconsistent");
                }
                warnings.push_back({"inconsistent_judgment_matrix", detail + "; the judgments should be revised"});
            }
            stage.nodes.push_back({node, result});
            return result.weights;
        };

        stage.criterion_weights = derive(cfg.goal_id).select(cfg.hierarchy.criterion_ids());
        for (const auto& c : cfg.hierarchy.criteria) {
            stage.relative.emplace(c.id, derive(c.id).select(c.children));
        }
        stage.global = ahp::synthesize_global(cfg.hierarchy, stage.criterion_weights, stage.relative);
        return stage;
    });
}

ObjectiveStage run_objective(const ProjectConfig& cfg) {
    return in_stage("entropy", [&] {
        ObjectiveStage stage;
        const auto ids = cfg.hierarchy.ordered_indicator_ids();
        if (cfg.decision_matrix) {
            stage.source = "decision_matrix";
            const auto w = entropy::entropy_weights(*cfg.decision_matrix);
            stage.indicator_weights = w.select(ids);
            const auto e = entropy::column_entropies(*cfg.decision_matrix);
            const WeightVector by_id(cfg.decision_matrix->indicators(), e);
            stage.entropies = by_id.select(ids).values();
        } else if (cfg.objective_weights) {
            stage.source = "given";
            stage.indicator_weights = cfg.objective_weights->select(ids);
            if (std::abs(stage.indicator_weights.sum() - 1.0) > kSumWarningTolerance) {
                throw ValidationError("objective weights sum to " + fmt(stage.indicator_weights.sum(), 6) +
                                      ", expected 1");
            }
        } else {
            throw ValidationError("no objective weights or decision matrix configured");
        }
        stage.criterion_weights = fusion::aggregate_by_criterion(cfg.hierarchy, stage.indicator_weights);
        return stage;
    });
}

ComprehensiveStage run_comprehensive(const SubjectiveStage& subjective, const ObjectiveStage& objective, double alpha) {
    return in_stage("fusion", [&] {
        const fusion::FusionConfig fc{alpha};
        ComprehensiveStage stage;
        stage.alpha = alpha;
        stage.indicator_weights = fusion::fuse(subjective.global, objective.indicator_weights, fc);
        stage.criterion_weights = fusion::fuse(subjective.criterion_weights, objective.criterion_weights, fc);
        return stage;
    });
}

FuzzyStage run_fuzzy(const ProjectConfig& cfg, const SubjectiveStage& subjective,
                     const ComprehensiveStage& comprehensive, std::vector<Warning>& warnings) {
    return in_stage("fuzzy", [&] {
        for (const auto& issue : cfg.membership.row_sum_issues(kSumWarningTolerance)) {
            const std::string msg = "membership row " + issue.indicator + " sums to " + fmt(issue.sum, 6);
            if (std::abs(issue.sum - 1.0) > kMembershipRowErrorTolerance) throw ValidationError(msg);
            warnings.push_back({"membership_row_sum", msg});
        }

        FuzzyStage stage;
        stage.op = cfg.op;
        stage.policy = cfg.weights_policy;
        for (const auto& c : cfg.hierarchy.criteria) {
            stage.first_level_weights.emplace(
                c.id, cfg.weights_policy == WeightsPolicy::Paper
                          ? subjective.relative.at(c.id)
                          : fusion::within_criterion(c, comprehensive.indicator_weights));
        }
        stage.second_level_weights = comprehensive.criterion_weights;
        stage.first_level = fuzzy::first_level(cfg.hierarchy, stage.first_level_weights, cfg.membership, cfg.op);
        stage.second_level = fuzzy::second_level(stage.second_level_weights, stage.first_level, cfg.op);
        stage.verdict = fuzzy::verdict(stage.second_level, cfg.grades);

        if (cfg.op == fuzzy::Operator::WeightedAverage) {
            for (const auto& c : cfg.hierarchy.criteria) {
                const double s = stage.first_level.at(c.id).sum();
                if (std::abs(s - 1.0) > kSumWarningTolerance) {
                    warnings.push_back({"fuzzy_vector_sum", "first-level vector " + c.id + " sums to " + fmt(s, 6)});
                }
            }
            const double s = stage.second_level.sum();
            if (std::abs(s - 1.0) > kSumWarningTolerance) {
                warnings.push_back({"fuzzy_vector_sum", "second-level vector sums to " + fmt(s, 6)});
            }
        }
        if (stage.verdict.tied) {
            warnings.push_back({"verdict_tie", "several grades share the maximum membership; reporting the better grade " +
                                                   stage.verdict.grade});
        }
        return stage;
    });
}

EvaluationReport empty_report(const ProjectConfig& cfg) {
    EvaluationReport r;
    r.goal_id = cfg.goal_id;
    r.hierarchy = cfg.hierarchy;
    r.grades = cfg.grades;
    r.provenance.config_hash = config_hash(cfg);
    r.provenance.generated_at = utc_now();
    return r;
}

EvaluationReport run_pipeline(const ProjectConfig& cfg) {
    in_stage("config", [&] { validate_config(cfg); });
    EvaluationReport r = empty_report(cfg);
    r.provenance.alpha = cfg.alpha;
    r.screening = run_screening(cfg, r.warnings);
    r.subjective = run_subjective(cfg, r.warnings);
    r.objective = run_objective(cfg);
    r.comprehensive = run_comprehensive(*r.subjective, *r.objective, cfg.alpha);
    r.fuzzy = run_fuzzy(cfg, *r.subjective, *r.comprehensive, r.warnings);
    return r;
}

std::vector<double> alpha_grid(double step) {
    if (!(step > 0.0 && step <= 1.0)) throw UsageError("alpha step must lie in (0, 1]");
    std::vector<double> grid;
    const auto n = static_cast<int>(std::floor(1.0 / step + 1e-9));
    for (int i = 0; i <= n; ++i) grid.push_back(std::min(1.0, i * step));
    if (grid.back() < 1.0 - 1e-12) grid.push_back(1.0);
    // Snap values like 0.30000000000000004 onto the nearest representable decimal.
    for (double& a : grid) a = std::round(a * 1e12) / 1e12;
    return grid;
}

SweepResult sweep_alpha(const ProjectConfig& cfg, std::vector<double> grid) {
    for (double a : grid) {
        if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("sweep: alpha " + std::to_string(a) + " outside [0, 1]");
    }
    std::stable_sort(grid.begin(), grid.end());
    in_stage("config", [&] { validate_config(cfg); });

    SweepResult out;
    out.grades = cfg.grades;
    out.provenance.config_hash = config_hash(cfg);
    out.provenance.generated_at = utc_now();

    std::vector<Warning> warnings;
    run_screening(cfg, warnings);
    const auto subjective = run_subjective(cfg, warnings);
    const auto objective = run_objective(cfg);
    for (double a : grid) {
        const auto comp = run_comprehensive(subjective, objective, a);
        const auto fz = run_fuzzy(cfg, subjective, comp, warnings);
        out.rows.push_back({a, comp.criterion_weights, fz.second_level, fz.verdict});
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (auto& w : warnings) {
        if (seen.emplace(w.code, w.message).second) out.warnings.push_back(std::move(w));
    }
    return out;
}

}  // namespace siteeval
