#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siteeval/ahp.hpp"
#include "siteeval/config.hpp"
#include "siteeval/delphi.hpp"
#include "siteeval/fuzzy.hpp"

namespace siteeval {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// Membership rows off by more than this are errors; smaller deviations warn.
inline constexpr double kMembershipRowErrorTolerance = 0.05;
inline constexpr double kSumWarningTolerance = 1e-6;

struct Warning {
    std::string code;
    std::string message;
};

struct ScreeningStage {
    delphi::ScreeningCriteria criteria;
    std::vector<delphi::IndicatorStats> stats;
    delphi::ScreeningResult result;
    std::optional<delphi::ConvergenceReport> convergence;
};

struct NodeWeights {
    std::string node;
    ahp::AhpResult result;
};

struct SubjectiveStage {
    std::vector<NodeWeights> nodes;  // goal node first, then criteria in hierarchy order
    WeightVector criterion_weights;
    std::map<std::string, WeightVector> relative;  // per criterion, keyed by its indicators
    WeightVector global;
};

struct ObjectiveStage {
    std::string source;  // "given" or "decision_matrix"
    WeightVector indicator_weights;
    WeightVector criterion_weights;  // per-criterion sums
    std::vector<double> entropies;   // per indicator when computed from a decision matrix
};

struct ComprehensiveStage {
    double alpha = 0.5;
    WeightVector indicator_weights;
    WeightVector criterion_weights;
};

struct FuzzyStage {
    fuzzy::Operator op = fuzzy::Operator::WeightedAverage;
    WeightsPolicy policy = WeightsPolicy::Paper;
    std::map<std::string, WeightVector> first_level_weights;
    WeightVector second_level_weights;
    std::map<std::string, fuzzy::FuzzyVector> first_level;
    fuzzy::FuzzyVector second_level;
    fuzzy::Verdict verdict;
};

struct Provenance {
    std::string tool_version = kToolVersion;
    std::string config_hash;
    std::optional<double> alpha;
    std::string generated_at;  // ISO-8601 UTC; the only non-deterministic field
};

struct EvaluationReport {
    std::string goal_id;
    IndicatorHierarchy hierarchy;
    GradeScale grades;
    std::optional<ScreeningStage> screening;
    std::optional<SubjectiveStage> subjective;
    std::optional<ObjectiveStage> objective;
    std::optional<ComprehensiveStage> comprehensive;
    std::optional<FuzzyStage> fuzzy;
    std::vector<Warning> warnings;
    Provenance provenance;
};

// Individual stages. Each wraps failures in StageError naming the stage.
std::optional<ScreeningStage> run_screening(const ProjectConfig& cfg, std::vector<Warning>& warnings);
SubjectiveStage run_subjective(const ProjectConfig& cfg, std::vector<Warning>& warnings);
ObjectiveStage run_objective(const ProjectConfig& cfg);
ComprehensiveStage run_comprehensive(const SubjectiveStage& subjective, const ObjectiveStage& objective, double alpha);
FuzzyStage run_fuzzy(const ProjectConfig& cfg, const SubjectiveStage& subjective,
                     const ComprehensiveStage& comprehensive, std::vector<Warning>& warnings);

// Report with only the hierarchy, grades and provenance filled in.
EvaluationReport empty_report(const ProjectConfig& cfg);

// Full run: screening (when survey data is configured), AHP, objective weights,
// fusion, two fuzzy levels and the verdict.
EvaluationReport run_pipeline(const ProjectConfig& cfg);

struct SweepRow {
    double alpha = 0.0;
    WeightVector criterion_weights;
    fuzzy::FuzzyVector second_level;
    fuzzy::Verdict verdict;
};

struct SweepResult {
    GradeScale grades;
    std::vector<SweepRow> rows;  // sorted by alpha
    std::vector<Warning> warnings;
    Provenance provenance;
};

// One fusion + evaluation per alpha; screening and AHP run once.
SweepResult sweep_alpha(const ProjectConfig& cfg, std::vector<double> grid);

// 0, step, 2*step, ... up to 1 inclusive.
std::vector<double> alpha_grid(double step);

}  // namespace siteeval
