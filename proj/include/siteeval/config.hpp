#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "siteeval/ahp.hpp"
#include "siteeval/core_model.hpp"
#include "siteeval/delphi.hpp"
#include "siteeval/entropy.hpp"
#include "siteeval/fuzzy.hpp"

namespace siteeval {

inline constexpr int kConfigSchemaVersion = 1;

enum class WeightsPolicy {
    Paper,      // first level: AHP relative weights; second level: fused criterion weights
    FusedBoth,  // fused weights at both levels
};

const char* to_string(WeightsPolicy p);
WeightsPolicy parse_weights_policy(const std::string& text);

// A data file referenced by the config. `path` is kept as written; `resolved`
// is relative to the config file's directory.
struct FileRef {
    std::string path;
    std::filesystem::path resolved;
};

struct ScreeningConfig {
    delphi::ScreeningCriteria criteria;
    int full_mark_threshold = delphi::kDefaultFullMarkThreshold;
    // At most one of survey / stats per round.
    std::optional<FileRef> survey_csv;
    std::optional<FileRef> stats_csv;
    std::optional<FileRef> previous_survey_csv;
    std::optional<FileRef> previous_stats_csv;

    // Loaded contents.
    std::optional<delphi::SurveyRound> survey;
    std::optional<std::vector<delphi::IndicatorStats>> stats;
    std::optional<delphi::SurveyRound> previous_survey;
    std::optional<std::vector<delphi::IndicatorStats>> previous_stats;

    bool has_data() const { return survey.has_value() || stats.has_value(); }
};

// One membership row: either given directly or evaluated from a measurement
// through one trapezoid per grade.
struct MembershipSpec {
    std::string indicator;
    std::optional<std::vector<double>> values;
    std::optional<double> measurement;
    std::vector<fuzzy::Trapezoid> functions;
};

struct ProjectConfig {
    std::string goal_id = "A";
    IndicatorHierarchy hierarchy;
    GradeScale grades;
    std::vector<delphi::RespondentClass> classes = delphi::default_classes();
    ScreeningConfig screening;

    // Goal-node matrix first, then one per criterion (any order in the file).
    std::vector<ahp::JudgmentMatrix> judgment_matrices;
    std::optional<ahp::RiTable> ri_table;

    std::vector<MembershipSpec> membership_specs;
    MembershipMatrix membership;  // resolved from membership_specs

    // Exactly one of these is set.
    std::optional<WeightVector> objective_weights;
    std::optional<FileRef> decision_matrix_csv;
    std::optional<entropy::DecisionMatrix> decision_matrix;

    double alpha = 0.5;
    fuzzy::Operator op = fuzzy::Operator::WeightedAverage;
    WeightsPolicy weights_policy = WeightsPolicy::Paper;
    bool allow_inconsistent = false;

    const ahp::JudgmentMatrix* matrix_for(const std::string& node) const;
};

// Parses and validates a config document. Relative data paths resolve against `base_dir`.
ProjectConfig parse_config(const nlohmann::ordered_json& doc, const std::filesystem::path& base_dir);
ProjectConfig load_config(const std::filesystem::path& path);

// Cross-checks ids between hierarchy, matrices, membership rows and objective weights.
void validate_config(const ProjectConfig& cfg);

// Serializes back to the config document form (data files stay as references).
nlohmann::ordered_json config_to_json(const ProjectConfig& cfg);

// Re-resolves membership specs into cfg.membership.
void resolve_membership(ProjectConfig& cfg);

// 64-bit FNV-1a over the canonical config text, as 16 hex digits.
std::string config_hash(const ProjectConfig& cfg);

}  // namespace siteeval
