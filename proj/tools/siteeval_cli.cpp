#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "siteeval/config.hpp"
#include "siteeval/error.hpp"
#include "siteeval/io.hpp"
#include "siteeval/pipeline.hpp"
#include "siteeval/report.hpp"

namespace {

using namespace siteeval;

struct Options {
    std::string config_path;
    std::string format = "json";
    std::string output;
    std::optional<double> alpha;
    std::optional<std::string> op;
    std::optional<std::string> policy;
    bool allow_inconsistent = false;
    std::vector<std::string> overrides;
    std::string survey;
    std::string stats;
    std::string matrix;
    std::vector<double> grid;
    double step = 0.1;
};

void write_output(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw ValidationError("cannot write output file '" + o.output + "'");
    out << text;
}

// Loads the config and applies command-line overrides on top of it.
ProjectConfig prepare(const Options& o) {
    ProjectConfig cfg = load_config(o.config_path);
    if (o.alpha) cfg.alpha = *o.alpha;
    if (o.op) cfg.op = fuzzy::parse_operator(*o.op);
    if (o.policy) cfg.weights_policy = parse_weights_policy(*o.policy);
    if (o.allow_inconsistent) cfg.allow_inconsistent = true;
    if (!o.overrides.empty()) {
        cfg.screening.criteria.overrides = {o.overrides.begin(), o.overrides.end()};
    }
    if (!o.survey.empty() && !o.stats.empty()) throw UsageError("give --survey or --stats, not both");
    if (!o.survey.empty() || !o.stats.empty()) {
        // The configured previous round describes the configured data, not the replacement.
        cfg.screening.previous_survey.reset();
        cfg.screening.previous_survey_csv.reset();
        cfg.screening.previous_stats.reset();
        cfg.screening.previous_stats_csv.reset();
    }
    if (!o.survey.empty()) {
        cfg.screening.survey = io::ingest_survey(o.survey, cfg.classes, 2);
        cfg.screening.survey_csv = FileRef{o.survey, o.survey};
        cfg.screening.stats.reset();
        cfg.screening.stats_csv.reset();
    }
    if (!o.stats.empty()) {
        cfg.screening.stats = io::ingest_stats(o.stats);
        cfg.screening.stats_csv = FileRef{o.stats, o.stats};
        cfg.screening.survey.reset();
        cfg.screening.survey_csv.reset();
    }
    if (!o.matrix.empty()) {
        cfg.decision_matrix = io::ingest_decision_matrix(o.matrix);
        cfg.decision_matrix_csv = FileRef{o.matrix, o.matrix};
        cfg.objective_weights.reset();
    }
    return cfg;
}

int run_command(const std::string& command, const Options& o) {
    const ReportFormat format = parse_format(o.format);
    ProjectConfig cfg = prepare(o);

    if (command == "sweep-alpha") {
        const auto grid = o.grid.empty() ? alpha_grid(o.step) : o.grid;
        write_output(o, emit_sweep(sweep_alpha(cfg, grid), format));
        return 0;
    }
    if (command == "evaluate") {
        write_output(o, emit_report(run_pipeline(cfg), format));
        return 0;
    }

    validate_config(cfg);
    EvaluationReport r = empty_report(cfg);
    if (command == "screen") {
        if (!cfg.screening.has_data()) {
            throw ValidationError("screening: no survey or statistics data (set screening.survey_csv or pass --survey)");
        }
        r.screening = run_screening(cfg, r.warnings);
    } else if (command == "ahp") {
        r.subjective = run_subjective(cfg, r.warnings);
    } else if (command == "entropy") {
        r.objective = run_objective(cfg);
    } else if (command == "fuse") {
        r.provenance.alpha = cfg.alpha;
        r.subjective = run_subjective(cfg, r.warnings);
        r.objective = run_objective(cfg);
        r.comprehensive = run_comprehensive(*r.subjective, *r.objective, cfg.alpha);
    }
    write_output(o, emit_report(r, format));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sustainable site evaluation: indicator screening, AHP and entropy weights, fusion, fuzzy evaluation"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("config", o.config_path, "project config (JSON)")->required();
        sub->add_option("--format", o.format, "output format: json or md")->capture_default_str();
        sub->add_option("-o,--output", o.output, "write the report to a file instead of stdout");
        sub->add_flag("--allow-inconsistent", o.allow_inconsistent,
                      "downgrade judgment matrices with CR >= 0.10 to a warning");
    };
    auto alpha = [&](CLI::App* sub) {
        sub->add_option("--alpha", o.alpha, "subjective share in the fused weights")->check(CLI::Range(0.0, 1.0));
    };
    auto evaluation = [&](CLI::App* sub) {
        sub->add_option("--operator", o.op, "fuzzy operator: weighted-average or min-max");
        sub->add_option("--weights-policy", o.policy, "first-level weights: paper or fused-both");
    };
    auto screening = [&](CLI::App* sub) {
        sub->add_option("--override", o.overrides, "indicator ids retained despite failing screening")->delimiter(',');
        sub->add_option("--survey", o.survey, "round survey CSV (replaces the configured screening data)");
        sub->add_option("--stats", o.stats, "round statistics CSV (replaces the configured screening data)");
    };

    auto* screen = app.add_subcommand("screen", "screen candidate indicators from survey data");
    common(screen);
    screening(screen);

    auto* ahp_cmd = app.add_subcommand("ahp", "subjective weights and consistency from judgment matrices");
    common(ahp_cmd);

    auto* entropy_cmd = app.add_subcommand("entropy", "objective weights");
    common(entropy_cmd);
    entropy_cmd->add_option("--matrix", o.matrix, "decision matrix CSV (replaces the configured objective weights)");

    auto* fuse = app.add_subcommand("fuse", "comprehensive weights from subjective and objective weights");
    common(fuse);
    alpha(fuse);
    fuse->add_option("--matrix", o.matrix, "decision matrix CSV (replaces the configured objective weights)");

    auto* evaluate = app.add_subcommand("evaluate", "run the full pipeline and report the verdict");
    common(evaluate);
    alpha(evaluate);
    evaluation(evaluate);
    screening(evaluate);
    evaluate->add_option("--matrix", o.matrix, "decision matrix CSV (replaces the configured objective weights)");

    auto* sweep = app.add_subcommand("sweep-alpha", "evaluate over a grid of alpha values");
    common(sweep);
    evaluation(sweep);
    screening(sweep);
    sweep->add_option("--grid", o.grid, "comma-separated alpha values")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--step", o.step, "grid step from 0 to 1 when --grid is not given")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run_command(app.get_subcommands().front()->get_name(), o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
