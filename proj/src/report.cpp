#include "siteeval/report.hpp"

#include <sstream>

#include "siteeval/error.hpp"

namespace siteeval {

using ojson = nlohmann::ordered_json;

namespace {

ojson weights_json(const WeightVector& w) {
    ojson o = ojson::object();
    for (std::size_t i = 0; i < w.size(); ++i) o[w.ids()[i]] = w.values()[i];
    return o;
}

ojson fuzzy_json(const fuzzy::FuzzyVector& v) {
    ojson o = ojson::object();
    for (std::size_t k = 0; k < v.values().size(); ++k) o[v.grades().label(k)] = v.values()[k];
    return o;
}

ojson verdict_json(const fuzzy::Verdict& v) {
    return {{"grade", v.grade}, {"membership", v.membership}, {"tied", v.tied}};
}

ojson stats_json(const delphi::IndicatorStats& s) {
    return {{"indicator", s.indicator},
            {"mean", s.mean},
            {"std_dev", s.std_dev},
            {"cv", s.cv},
            {"full_mark_rate", s.full_mark_rate},
            {"gcr", s.gcr ? ojson(*s.gcr) : ojson(nullptr)},
            {"respondent_count", s.respondent_count}};
}

ojson decisions_json(const std::vector<delphi::ScreenDecision>& ds) {
    ojson arr = ojson::array();
    for (const auto& d : ds) {
        ojson reasons = ojson::array();
        for (std::size_t i = 0; i < d.failed.size(); ++i) {
            reasons.push_back({{"code", delphi::reason_code(d.failed[i])}, {"message", d.reasons[i]}});
        }
        arr.push_back({{"indicator", d.indicator}, {"reasons", std::move(reasons)}});
    }
    return arr;
}

ojson provenance_json(const Provenance& p) {
    return {{"tool_version", p.tool_version},
            {"config_hash", p.config_hash},
            {"alpha", p.alpha ? ojson(*p.alpha) : ojson(nullptr)},
            {"generated_at", p.generated_at}};
}

ojson warnings_json(const std::vector<Warning>& ws) {
    ojson arr = ojson::array();
    for (const auto& w : ws) arr.push_back({{"code", w.code}, {"message", w.message}});
    return arr;
}

std::string f4(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << v;
    return os.str();
}

// Header and rule rows for a table whose first column is `first` and remaining columns are the grades.
std::string grade_header(const std::string& first, const GradeScale& g, const std::string& extra = "") {
    std::string h = "| " + first + " |";
    std::string rule = "|---|";
    for (const auto& l : g.labels()) {
        h += " " + l + " |";
        rule += "---|";
    }
    if (!extra.empty()) {
        h += " " + extra + " |";
        rule += "---|";
    }
    return h + "\n" + rule + "\n";
}

std::string fuzzy_cells(const fuzzy::FuzzyVector& v) {
    std::string s;
    for (double x : v.values()) s += " " + f4(x) + " |";
    return s;
}

// Criterion-grouped weight table: the criterion cells appear on the first row of each group.
void grouped_table(std::ostringstream& md, const IndicatorHierarchy& h, const std::vector<std::string>& headers,
                   const WeightVector& criterion_weights, const std::vector<const WeightVector*>& columns) {
    md << "| Criterion | Weight | Indicator |";
    for (const auto& hd : headers) md << " " << hd << " |";
    md << "\n|---|---|---|";
    for (std::size_t i = 0; i < headers.size(); ++i) md << "---|";
    md << "\n";
    for (const auto& c : h.criteria) {
        bool first = true;
        for (const auto& child : c.children) {
            if (first) md << "| " << c.id << " | " << f4(criterion_weights.at(c.id)) << " | ";
            else md << "| | | ";
            md << child << " |";
            for (const auto* col : columns) md << " " << f4(col->at(child)) << " |";
            md << "\n";
            first = false;
        }
    }
}

}  // namespace

ReportFormat parse_format(const std::string& text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "md" || text == "markdown") return ReportFormat::Markdown;
    throw UsageError("unknown format '" + text + "' (expected json or md)");
}

ojson report_to_json(const EvaluationReport& r) {
    ojson doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["provenance"] = provenance_json(r.provenance);

    ojson criteria = ojson::array();
    for (const auto& c : r.hierarchy.criteria) {
        criteria.push_back({{"id", c.id}, {"name", c.name}, {"indicators", c.children}});
    }
    doc["hierarchy"] = {{"goal_id", r.goal_id}, {"goal", r.hierarchy.goal_name}, {"criteria", std::move(criteria)}};
    doc["grades"] = r.grades.labels();

    if (r.screening) {
        const auto& s = *r.screening;
        ojson stats = ojson::array();
        for (const auto& st : s.stats) stats.push_back(stats_json(st));
        ojson screening = {
            {"criteria",
             {{"min_mean", s.criteria.min_mean},
              {"min_full_mark_rate", s.criteria.min_full_mark_rate},
              {"max_cv", s.criteria.max_cv},
              {"min_gcr", s.criteria.min_gcr ? ojson(*s.criteria.min_gcr) : ojson(nullptr)},
              {"overrides", std::vector<std::string>(s.criteria.overrides.begin(), s.criteria.overrides.end())}}},
            {"statistics", std::move(stats)},
            {"selected", decisions_json(s.result.selected)},
            {"rejected", decisions_json(s.result.rejected)},
            {"overridden", decisions_json(s.result.overridden)},
            {"unmatched_overrides", s.result.unmatched_overrides}};
        if (s.convergence) {
            ojson deltas = ojson::array();
            for (const auto& d : s.convergence->deltas) {
                deltas.push_back({{"indicator", d.indicator}, {"std_dev_delta", d.std_dev_delta}, {"cv_delta", d.cv_delta}});
            }
            screening["convergence"] = {{"deltas", std::move(deltas)},
                                        {"improved", s.convergence->improved},
                                        {"worsened", s.convergence->worsened},
                                        {"converged", s.convergence->converged}};
        } else {
            screening["convergence"] = nullptr;
        }
        doc["screening"] = std::move(screening);
    } else {
        doc["screening"] = nullptr;
    }

    if (r.subjective) {
        const auto& s = *r.subjective;
        ojson nodes = ojson::array();
        for (const auto& n : s.nodes) {
            const auto& c = n.result.consistency;
            nodes.push_back({{"node", n.node},
                             {"order", n.result.weights.size()},
                             {"weights", weights_json(n.result.weights)},
                             {"lambda_max", c.lambda_max},
                             {"ci", c.ci},
                             {"ri", c.ri},
                             {"cr", c.cr},
                             {"consistent", c.consistent},
                             {"iterations", n.result.iterations}});
        }
        ojson relative = ojson::object();
        for (const auto& c : r.hierarchy.criteria) relative[c.id] = weights_json(s.relative.at(c.id));
        doc["subjective"] = {{"nodes", std::move(nodes)},
                             {"criterion_weights", weights_json(s.criterion_weights)},
                             {"relative_weights", std::move(relative)},
                             {"global_weights", weights_json(s.global)}};
    } else {
        doc["subjective"] = nullptr;
    }

    if (r.objective) {
        const auto& o = *r.objective;
        ojson obj = {{"source", o.source},
                     {"indicator_weights", weights_json(o.indicator_weights)},
                     {"criterion_weights", weights_json(o.criterion_weights)}};
        if (!o.entropies.empty()) obj["entropies"] = weights_json(WeightVector(o.indicator_weights.ids(), o.entropies));
        else obj["entropies"] = nullptr;
        doc["objective"] = std::move(obj);
    } else {
        doc["objective"] = nullptr;
    }

    if (r.comprehensive) {
        const auto& c = *r.comprehensive;
        doc["comprehensive"] = {{"alpha", c.alpha},
                                {"indicator_weights", weights_json(c.indicator_weights)},
                                {"criterion_weights", weights_json(c.criterion_weights)}};
    } else {
        doc["comprehensive"] = nullptr;
    }

    if (r.fuzzy) {
        const auto& f = *r.fuzzy;
        ojson first = ojson::array();
        for (const auto& c : r.hierarchy.criteria) {
            first.push_back({{"criterion", c.id},
                             {"weights", weights_json(f.first_level_weights.at(c.id))},
                             {"vector", fuzzy_json(f.first_level.at(c.id))}});
        }
        doc["fuzzy"] = {{"operator", fuzzy::to_string(f.op)},
                        {"weights_policy", to_string(f.policy)},
                        {"first_level", std::move(first)},
                        {"second_level_weights", weights_json(f.second_level_weights)},
                        {"second_level", fuzzy_json(f.second_level)}};
        doc["verdict"] = verdict_json(f.verdict);
    } else {
        doc["fuzzy"] = nullptr;
        doc["verdict"] = nullptr;
    }

    doc["warnings"] = warnings_json(r.warnings);
    return doc;
}

std::string report_to_markdown(const EvaluationReport& r) {
    std::ostringstream md;
    md << "# Site evaluation report\n\n";
    md << "Goal: " << r.hierarchy.goal_name << " (" << r.goal_id << ")\n\n";

    if (r.screening) {
        const auto& s = *r.screening;
        md << "## Indicator screening\n\n";
        md << "| Indicator | Mean | Std dev | CV | Full-mark rate | GCR | Outcome | Reasons |\n";
        md << "|---|---|---|---|---|---|---|---|\n";
        auto outcome_of = [&](const std::string& id) -> std::pair<std::string, const delphi::ScreenDecision*> {
            for (const auto& d : s.result.selected) if (d.indicator == id) return {"selected", &d};
            for (const auto& d : s.result.overridden) if (d.indicator == id) return {"overridden", &d};
            for (const auto& d : s.result.rejected) if (d.indicator == id) return {"rejected", &d};
            return {"", nullptr};
        };
        for (const auto& st : s.stats) {
            const auto [outcome, decision] = outcome_of(st.indicator);
            std::string reasons;
            if (decision) {
                for (const auto& x : decision->reasons) reasons += (reasons.empty() ? "" : "; ") + x;
            }
            md << "| " << st.indicator << " | " << f4(st.mean) << " | " << f4(st.std_dev) << " | " << f4(st.cv)
               << " | " << f4(st.full_mark_rate) << " | " << (st.gcr ? f4(*st.gcr) : std::string("–")) << " | "
               << outcome << " | " << reasons << " |\n";
        }
        md << "\nSelected " << s.result.selected.size() << ", overridden " << s.result.overridden.size()
           << ", rejected " << s.result.rejected.size() << ".\n";
        if (s.convergence) {
            md << "Round-over-round: " << s.convergence->improved << " indicators reduced CV, "
               << s.convergence->worsened << " increased it ("
               << (s.convergence->converged ? "converged" : "not converged") << ").\n";
        }
        md << "\n";
    }

    if (r.subjective) {
        const auto& s = *r.subjective;
        md << "## Subjective weights (AHP)\n\n";
        md << "| Node | Order | λmax | CI | RI | CR | Consistent |\n|---|---|---|---|---|---|---|\n";
        for (const auto& n : s.nodes) {
            const auto& c = n.result.consistency;
            md << "| " << n.node << " | " << n.result.weights.size() << " | " << f4(c.lambda_max) << " | " << f4(c.ci)
               << " | " << f4(c.ri) << " | " << f4(c.cr) << " | " << (c.consistent ? "yes" : "no") << " |\n";
        }
        md << "\n";
        std::vector<WeightVector> rel_cols;
        std::vector<std::string> ids;
        std::vector<double> vals;
        for (const auto& c : r.hierarchy.criteria) {
            const auto& rel = s.relative.at(c.id);
            for (const auto& child : c.children) {
                ids.push_back(child);
                vals.push_back(rel.at(child));
            }
        }
        const WeightVector relative_flat(ids, vals);
        grouped_table(md, r.hierarchy, {"Relative weight", "Weight"}, s.criterion_weights, {&relative_flat, &s.global});
        md << "\n";
    }

    if (r.objective) {
        const auto& o = *r.objective;
        md << "## Objective weights (" << (o.source == "given" ? "given" : "entropy") << ")\n\n";
        grouped_table(md, r.hierarchy, {"Objective weight"}, o.criterion_weights, {&o.indicator_weights});
        md << "\n";
    }

    if (r.comprehensive && r.subjective && r.objective) {
        const auto& c = *r.comprehensive;
        md << "## Comprehensive weights (α = " << f4(c.alpha) << ")\n\n";
        grouped_table(md, r.hierarchy, {"Subjective weight", "Objective weight", "Comprehensive weight"},
                      c.criterion_weights,
                      {&r.subjective->global, &r.objective->indicator_weights, &c.indicator_weights});
        md << "\n";
    }

    if (r.fuzzy) {
        const auto& f = *r.fuzzy;
        md << "## First-level evaluation\n\n";
        md << grade_header("Criterion", r.grades);
        for (const auto& c : r.hierarchy.criteria) md << "| " << c.id << " |" << fuzzy_cells(f.first_level.at(c.id)) << "\n";
        md << "\n## Second-level evaluation\n\n";
        md << "| Criterion | Weight |\n|---|---|\n";
        for (std::size_t i = 0; i < f.second_level_weights.size(); ++i) {
            md << "| " << f.second_level_weights.ids()[i] << " | " << f4(f.second_level_weights.values()[i]) << " |\n";
        }
        md << "\n" << grade_header("Goal", r.grades);
        md << "| " << r.goal_id << " |" << fuzzy_cells(f.second_level) << "\n\n";
        md << "## Verdict\n\n**" << f.verdict.grade << "** (membership " << f4(f.verdict.membership) << ")"
           << (f.verdict.tied ? ", tied with another grade" : "") << "\n\n";
    }

    md << "## Warnings\n\n";
    if (r.warnings.empty()) md << "None.\n";
    for (const auto& w : r.warnings) md << "- `" << w.code << "`: " << w.message << "\n";

    md << "\n---\nsiteeval " << r.provenance.tool_version << ", config " << r.provenance.config_hash << "\n";
    return md.str();
}

std::string emit_report(const EvaluationReport& r, ReportFormat format) {
    if (format == ReportFormat::Json) return report_to_json(r).dump(2) + "\n";
    return report_to_markdown(r);
}

ojson sweep_to_json(const SweepResult& s) {
    ojson rows = ojson::array();
    for (const auto& row : s.rows) {
        rows.push_back({{"alpha", row.alpha},
                        {"criterion_weights", weights_json(row.criterion_weights)},
                        {"second_level", fuzzy_json(row.second_level)},
                        {"verdict", verdict_json(row.verdict)}});
    }
    ojson doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["provenance"] = provenance_json(s.provenance);
    doc["grades"] = s.grades.labels();
    doc["rows"] = std::move(rows);
    doc["warnings"] = warnings_json(s.warnings);
    return doc;
}

std::string sweep_to_markdown(const SweepResult& s) {
    std::ostringstream md;
    md << "# Alpha sensitivity sweep\n\n" << grade_header("α", s.grades, "Verdict");
    for (const auto& row : s.rows) {
        md << "| " << f4(row.alpha) << " |" << fuzzy_cells(row.second_level) << " " << row.verdict.grade
           << (row.verdict.tied ? " (tied)" : "") << " |\n";
    }
    md << "\n## Warnings\n\n";
    if (s.warnings.empty()) md << "None.\n";
    for (const auto& w : s.warnings) md << "- `" << w.code << "`: " << w.message << "\n";
    return md.str();
}

std::string emit_sweep(const SweepResult& s, ReportFormat format) {
    if (format == ReportFormat::Json) return sweep_to_json(s).dump(2) + "\n";
    return sweep_to_markdown(s);
}

}  // namespace siteeval
