#include "siteeval/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>

#include "siteeval/error.hpp"
#include "siteeval/io.hpp"

namespace siteeval {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError("config: " + path + ": " + what);
}

const ojson& field(const ojson& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string get_string(const ojson& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

double get_number(const ojson& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

const ojson& get_array(const ojson& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
}

std::vector<std::string> get_string_list(const ojson& v, const std::string& path) {
    std::vector<std::string> out;
    const auto& arr = get_array(v, path);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(get_string(arr[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<double> get_number_list(const ojson& v, const std::string& path) {
    std::vector<double> out;
    const auto& arr = get_array(v, path);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(get_number(arr[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::optional<FileRef> file_ref(const ojson& obj, const char* key, const std::filesystem::path& base,
                                const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    FileRef ref;
    ref.path = get_string(*it, path + "." + key);
    std::filesystem::path p(ref.path);
    ref.resolved = p.is_absolute() ? p : base / p;
    return ref;
}

void parse_hierarchy(const ojson& doc, ProjectConfig& cfg) {
    const auto& goal = field(doc, "goal", "$");
    if (goal.is_string()) {
        cfg.hierarchy.goal_name = goal.get<std::string>();
    } else {
        cfg.goal_id = get_string(field(goal, "id", "goal"), "goal.id");
        cfg.hierarchy.goal_name = get_string(field(goal, "name", "goal"), "goal.name");
    }
    const auto& criteria = get_array(field(doc, "criteria", "$"), "criteria");
    for (std::size_t ci = 0; ci < criteria.size(); ++ci) {
        const std::string cpath = "criteria[" + std::to_string(ci) + "]";
        const auto& c = criteria[ci];
        Criterion crit;
        crit.id = get_string(field(c, "id", cpath), cpath + ".id");
        if (auto it = c.find("name"); it != c.end()) crit.name = get_string(*it, cpath + ".name");
        const auto& inds = get_array(field(c, "indicators", cpath), cpath + ".indicators");
        for (std::size_t k = 0; k < inds.size(); ++k) {
            const std::string ipath = cpath + ".indicators[" + std::to_string(k) + "]";
            const auto& i = inds[k];
            Indicator ind;
            if (i.is_string()) {
                ind.id = i.get<std::string>();
            } else {
                ind.id = get_string(field(i, "id", ipath), ipath + ".id");
                if (auto it = i.find("name"); it != i.end()) ind.name = get_string(*it, ipath + ".name");
                if (auto it = i.find("kind"); it != i.end()) {
                    try {
                        ind.kind = parse_indicator_kind(get_string(*it, ipath + ".kind"));
                    } catch (const ValidationError& e) {
                        fail(ipath + ".kind", e.what());
                    }
                }
            }
            crit.children.push_back(ind.id);
            // Duplicate listings are reported by validate_hierarchy, so keep one Indicator per id.
            if (!cfg.hierarchy.find_indicator(ind.id)) cfg.hierarchy.indicators.push_back(ind);
        }
        cfg.hierarchy.criteria.push_back(std::move(crit));
    }
}

void parse_screening(const ojson& doc, const std::filesystem::path& base, ProjectConfig& cfg) {
    if (auto it = doc.find("respondent_classes"); it != doc.end()) {
        cfg.classes.clear();
        const auto& arr = get_array(*it, "respondent_classes");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string p = "respondent_classes[" + std::to_string(i) + "]";
            cfg.classes.push_back({get_string(field(arr[i], "label", p), p + ".label"),
                                   get_number(field(arr[i], "weight", p), p + ".weight")});
        }
    }
    auto it = doc.find("screening");
    if (it == doc.end() || it->is_null()) return;
    const auto& s = *it;
    auto& sc = cfg.screening;
    if (!s.is_object()) fail("screening", "expected an object");
    if (auto f = s.find("min_mean"); f != s.end()) sc.criteria.min_mean = get_number(*f, "screening.min_mean");
    if (auto f = s.find("min_full_mark_rate"); f != s.end()) {
        sc.criteria.min_full_mark_rate = get_number(*f, "screening.min_full_mark_rate");
    }
    if (auto f = s.find("max_cv"); f != s.end()) sc.criteria.max_cv = get_number(*f, "screening.max_cv");
    if (auto f = s.find("min_gcr"); f != s.end()) {
        if (f->is_null()) sc.criteria.min_gcr.reset();
        else sc.criteria.min_gcr = get_number(*f, "screening.min_gcr");
    }
    if (auto f = s.find("full_mark_threshold"); f != s.end()) {
        sc.full_mark_threshold = static_cast<int>(get_number(*f, "screening.full_mark_threshold"));
        if (sc.full_mark_threshold < delphi::kMinScore || sc.full_mark_threshold > delphi::kMaxScore) {
            fail("screening.full_mark_threshold", "must lie in 1..5");
        }
    }
    if (auto f = s.find("overrides"); f != s.end()) {
        for (auto& id : get_string_list(*f, "screening.overrides")) sc.criteria.overrides.insert(id);
    }
    sc.survey_csv = file_ref(s, "survey_csv", base, "screening");
    sc.stats_csv = file_ref(s, "stats_csv", base, "screening");
    sc.previous_survey_csv = file_ref(s, "previous_survey_csv", base, "screening");
    sc.previous_stats_csv = file_ref(s, "previous_stats_csv", base, "screening");
    if (sc.survey_csv && sc.stats_csv) fail("screening", "give survey_csv or stats_csv, not both");
    if (sc.previous_survey_csv && sc.previous_stats_csv) {
        fail("screening", "give previous_survey_csv or previous_stats_csv, not both");
    }
    if (sc.survey_csv) sc.survey = io::ingest_survey(sc.survey_csv->resolved, cfg.classes, 2);
    if (sc.stats_csv) sc.stats = io::ingest_stats(sc.stats_csv->resolved);
    if (sc.previous_survey_csv) sc.previous_survey = io::ingest_survey(sc.previous_survey_csv->resolved, cfg.classes, 1);
    if (sc.previous_stats_csv) sc.previous_stats = io::ingest_stats(sc.previous_stats_csv->resolved);
}

void parse_matrices(const ojson& doc, ProjectConfig& cfg) {
    const auto& arr = get_array(field(doc, "judgment_matrices", "$"), "judgment_matrices");
    for (std::size_t m = 0; m < arr.size(); ++m) {
        const std::string p = "judgment_matrices[" + std::to_string(m) + "]";
        const auto node = get_string(field(arr[m], "node", p), p + ".node");
        const auto items = get_string_list(field(arr[m], "items", p), p + ".items");
        const auto& rows = get_array(field(arr[m], "entries", p), p + ".entries");
        std::vector<std::vector<std::string>> cells;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = get_array(rows[i], p + ".entries[" + std::to_string(i) + "]");
            std::vector<std::string> text;
            for (std::size_t j = 0; j < row.size(); ++j) {
                const auto& cell = row[j];
                if (cell.is_string()) text.push_back(cell.get<std::string>());
                else if (cell.is_number()) text.push_back(cell.dump());
                else fail(p + ".entries[" + std::to_string(i) + "][" + std::to_string(j) + "]", "expected a number or fraction string");
            }
            cells.push_back(std::move(text));
        }
        cfg.judgment_matrices.push_back(ahp::JudgmentMatrix::from_text(node, items, cells));
    }
    if (auto it = doc.find("ri_table"); it != doc.end() && !it->is_null()) {
        cfg.ri_table = ahp::RiTable{get_number_list(*it, "ri_table")};
    }
}

void parse_membership(const ojson& doc, ProjectConfig& cfg) {
    const auto& arr = get_array(field(doc, "membership", "$"), "membership");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = "membership[" + std::to_string(i) + "]";
        MembershipSpec spec;
        spec.indicator = get_string(field(arr[i], "indicator", p), p + ".indicator");
        if (auto it = arr[i].find("values"); it != arr[i].end()) {
            spec.values = get_number_list(*it, p + ".values");
        } else {
            spec.measurement = get_number(field(arr[i], "measurement", p), p + ".measurement");
            const auto& fns = get_array(field(arr[i], "functions", p), p + ".functions");
            for (std::size_t k = 0; k < fns.size(); ++k) {
                const auto c = get_number_list(fns[k], p + ".functions[" + std::to_string(k) + "]");
                if (c.size() != 4) fail(p + ".functions[" + std::to_string(k) + "]", "expected [a, b, c, d]");
                spec.functions.push_back({c[0], c[1], c[2], c[3]});
            }
        }
        cfg.membership_specs.push_back(std::move(spec));
    }
}

void parse_objective(const ojson& doc, const std::filesystem::path& base, ProjectConfig& cfg) {
    if (auto it = doc.find("objective_weights"); it != doc.end() && !it->is_null()) {
        if (!it->is_object()) fail("objective_weights", "expected an object of id -> weight");
        std::vector<std::string> ids;
        std::vector<double> values;
        for (auto kv = it->begin(); kv != it->end(); ++kv) {
            ids.push_back(kv.key());
            values.push_back(get_number(kv.value(), "objective_weights." + kv.key()));
        }
        cfg.objective_weights = WeightVector(std::move(ids), std::move(values));
    }
    cfg.decision_matrix_csv = file_ref(doc, "decision_matrix_csv", base, "$");
    if (cfg.objective_weights && cfg.decision_matrix_csv) {
        fail("$", "give objective_weights or decision_matrix_csv, not both");
    }
    if (!cfg.objective_weights && !cfg.decision_matrix_csv) {
        fail("$", "one of objective_weights or decision_matrix_csv is required");
    }
    if (cfg.decision_matrix_csv) cfg.decision_matrix = io::ingest_decision_matrix(cfg.decision_matrix_csv->resolved);
}

void parse_options(const ojson& doc, ProjectConfig& cfg) {
    if (auto it = doc.find("fusion"); it != doc.end()) {
        if (auto a = it->find("alpha"); a != it->end()) cfg.alpha = get_number(*a, "fusion.alpha");
    }
    if (auto it = doc.find("evaluation"); it != doc.end()) {
        const auto& e = *it;
        try {
            if (auto f = e.find("operator"); f != e.end()) cfg.op = fuzzy::parse_operator(get_string(*f, "evaluation.operator"));
            if (auto f = e.find("weights_policy"); f != e.end()) {
                cfg.weights_policy = parse_weights_policy(get_string(*f, "evaluation.weights_policy"));
            }
        } catch (const UsageError& err) {
            fail("evaluation", err.what());
        }
        if (auto f = e.find("allow_inconsistent"); f != e.end()) {
            if (!f->is_boolean()) fail("evaluation.allow_inconsistent", "expected a boolean");
            cfg.allow_inconsistent = f->get<bool>();
        }
    }
}

}  // namespace

const char* to_string(WeightsPolicy p) { return p == WeightsPolicy::FusedBoth ? "fused-both" : "paper"; }

WeightsPolicy parse_weights_policy(const std::string& text) {
    if (text == "paper") return WeightsPolicy::Paper;
    if (text == "fused-both") return WeightsPolicy::FusedBoth;
    throw UsageError("unknown weights policy '" + text + "' (expected paper or fused-both)");
}

const ahp::JudgmentMatrix* ProjectConfig::matrix_for(const std::string& node) const {
    for (const auto& m : judgment_matrices) {
        if (m.node() == node) return &m;
    }
    return nullptr;
}

void resolve_membership(ProjectConfig& cfg) {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    for (const auto& spec : cfg.membership_specs) {
        ids.push_back(spec.indicator);
        if (spec.values) {
            rows.push_back(*spec.values);
            continue;
        }
        if (spec.functions.size() != cfg.grades.size()) {
            fail("membership." + spec.indicator, "expected one membership function per grade");
        }
        try {
            rows.push_back(fuzzy::membership_row(*spec.measurement, spec.functions));
        } catch (const ValidationError& e) {
            fail("membership." + spec.indicator, e.what());
        }
    }
    cfg.membership = MembershipMatrix(cfg.grades, std::move(ids), std::move(rows));
}

ProjectConfig parse_config(const nlohmann::ordered_json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) fail("$", "expected a JSON object");
    if (auto it = doc.find("schema_version"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() != kConfigSchemaVersion) {
            fail("schema_version", "unsupported version (expected " + std::to_string(kConfigSchemaVersion) + ")");
        }
    }
    ProjectConfig cfg;
    parse_hierarchy(doc, cfg);
    try {
        cfg.grades = GradeScale(get_string_list(field(doc, "grades", "$"), "grades"));
    } catch (const ValidationError& e) {
        if (std::string(e.what()).starts_with("config:")) throw;
        fail("grades", e.what());
    }
    parse_screening(doc, base_dir, cfg);
    parse_matrices(doc, cfg);
    parse_membership(doc, cfg);
    parse_objective(doc, base_dir, cfg);
    parse_options(doc, cfg);
    resolve_membership(cfg);
    validate_config(cfg);
    return cfg;
}

ProjectConfig load_config(const std::filesystem::path& path) {
    const std::string text = io::read_text_file(path);
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config: " + path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

void validate_config(const ProjectConfig& cfg) {
    require_valid(cfg.hierarchy);
    if (cfg.goal_id.empty()) fail("goal.id", "empty goal id");
    if (cfg.hierarchy.find_criterion(cfg.goal_id) || cfg.hierarchy.find_indicator(cfg.goal_id)) {
        fail("goal.id", "goal id '" + cfg.goal_id + "' collides with a criterion or indicator id");
    }
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) fail("fusion.alpha", "must lie in [0, 1]");

    auto join = [](const std::vector<std::string>& diff) {
        std::string s;
        for (const auto& d : diff) s += (s.empty() ? "" : ", ") + d;
        return s;
    };

    std::set<std::string> nodes;
    for (const auto& m : cfg.judgment_matrices) {
        if (!nodes.insert(m.node()).second) fail("judgment_matrices", "duplicate matrix for node '" + m.node() + "'");
        std::vector<std::string> expected;
        if (m.node() == cfg.goal_id) {
            expected = cfg.hierarchy.criterion_ids();
        } else if (const auto* c = cfg.hierarchy.find_criterion(m.node())) {
            expected = c->children;
        } else {
            fail("judgment_matrices", "matrix for unknown node '" + m.node() + "'");
        }
        if (auto diff = symmetric_difference(expected, m.items()); !diff.empty()) {
            fail("judgment_matrices." + m.node(), "items do not match the hierarchy: " + join(diff));
        }
    }
    if (!nodes.contains(cfg.goal_id)) fail("judgment_matrices", "no matrix for goal node '" + cfg.goal_id + "'");
    for (const auto& c : cfg.hierarchy.criteria) {
        if (!nodes.contains(c.id)) fail("judgment_matrices", "no matrix for criterion '" + c.id + "'");
    }

    const auto indicators = cfg.hierarchy.ordered_indicator_ids();
    if (!(cfg.membership.grades() == cfg.grades)) fail("membership", "grade scale mismatch");
    if (auto diff = symmetric_difference(indicators, cfg.membership.indicators()); !diff.empty()) {
        fail("membership", "rows do not match the indicators: " + join(diff));
    }
    if (cfg.objective_weights.has_value() == cfg.decision_matrix.has_value()) {
        fail("$", "exactly one of objective_weights or decision_matrix_csv is required");
    }
    if (cfg.objective_weights) {
        if (auto diff = symmetric_difference(indicators, cfg.objective_weights->ids()); !diff.empty()) {
            fail("objective_weights", "ids do not match the indicators: " + join(diff));
        }
    }
    if (cfg.decision_matrix) {
        if (auto diff = symmetric_difference(indicators, cfg.decision_matrix->indicators()); !diff.empty()) {
            fail("decision_matrix_csv", "columns do not match the indicators: " + join(diff));
        }
    }
    for (const auto& c : cfg.classes) {
        if (!(c.score_weight > 0.0 && c.score_weight <= 1.0)) {
            fail("respondent_classes", "weight for '" + c.label + "' must lie in (0, 1]");
        }
    }
}

nlohmann::ordered_json config_to_json(const ProjectConfig& cfg) {
    ojson doc;
    doc["schema_version"] = kConfigSchemaVersion;
    doc["goal"] = {{"id", cfg.goal_id}, {"name", cfg.hierarchy.goal_name}};
    doc["grades"] = cfg.grades.labels();

    ojson criteria = ojson::array();
    for (const auto& c : cfg.hierarchy.criteria) {
        ojson inds = ojson::array();
        for (const auto& id : c.children) {
            const auto* ind = cfg.hierarchy.find_indicator(id);
            inds.push_back({{"id", id}, {"name", ind->name}, {"kind", to_string(ind->kind)}});
        }
        criteria.push_back({{"id", c.id}, {"name", c.name}, {"indicators", std::move(inds)}});
    }
    doc["criteria"] = std::move(criteria);

    ojson classes = ojson::array();
    for (const auto& c : cfg.classes) classes.push_back({{"label", c.label}, {"weight", c.score_weight}});
    doc["respondent_classes"] = std::move(classes);

    const auto& sc = cfg.screening;
    ojson screening;
    screening["min_mean"] = sc.criteria.min_mean;
    screening["min_full_mark_rate"] = sc.criteria.min_full_mark_rate;
    screening["max_cv"] = sc.criteria.max_cv;
    screening["min_gcr"] = sc.criteria.min_gcr ? ojson(*sc.criteria.min_gcr) : ojson(nullptr);
    screening["full_mark_threshold"] = sc.full_mark_threshold;
    screening["overrides"] = std::vector<std::string>(sc.criteria.overrides.begin(), sc.criteria.overrides.end());
    if (sc.survey_csv) screening["survey_csv"] = sc.survey_csv->path;
    if (sc.stats_csv) screening["stats_csv"] = sc.stats_csv->path;
    if (sc.previous_survey_csv) screening["previous_survey_csv"] = sc.previous_survey_csv->path;
    if (sc.previous_stats_csv) screening["previous_stats_csv"] = sc.previous_stats_csv->path;
    doc["screening"] = std::move(screening);

    ojson matrices = ojson::array();
    for (const auto& m : cfg.judgment_matrices) {
        ojson rows = ojson::array();
        for (std::size_t i = 0; i < m.order(); ++i) {
            ojson row = ojson::array();
            for (std::size_t j = 0; j < m.order(); ++j) {
                const auto text = m.text(i, j);
                if (text && text->find('/') != std::string::npos) row.push_back(*text);
                else if (text) row.push_back(ojson::parse(*text));
                else row.push_back(m.at(i, j));
            }
            rows.push_back(std::move(row));
        }
        matrices.push_back({{"node", m.node()}, {"items", m.items()}, {"entries", std::move(rows)}});
    }
    doc["judgment_matrices"] = std::move(matrices);
    if (cfg.ri_table) doc["ri_table"] = cfg.ri_table->values;

    ojson membership = ojson::array();
    for (const auto& spec : cfg.membership_specs) {
        ojson row = {{"indicator", spec.indicator}};
        if (spec.values) {
            row["values"] = *spec.values;
        } else {
            row["measurement"] = *spec.measurement;
            ojson fns = ojson::array();
            for (const auto& t : spec.functions) fns.push_back({t.a, t.b, t.c, t.d});
            row["functions"] = std::move(fns);
        }
        membership.push_back(std::move(row));
    }
    doc["membership"] = std::move(membership);

    if (cfg.objective_weights) {
        ojson w = ojson::object();
        for (std::size_t i = 0; i < cfg.objective_weights->size(); ++i) {
            w[cfg.objective_weights->ids()[i]] = cfg.objective_weights->values()[i];
        }
        doc["objective_weights"] = std::move(w);
    }
    if (cfg.decision_matrix_csv) doc["decision_matrix_csv"] = cfg.decision_matrix_csv->path;

    doc["fusion"] = {{"alpha", cfg.alpha}};
    doc["evaluation"] = {{"operator", fuzzy::to_string(cfg.op)},
                         {"weights_policy", to_string(cfg.weights_policy)},
                         {"allow_inconsistent", cfg.allow_inconsistent}};
    return doc;
}

std::string config_hash(const ProjectConfig& cfg) {
    const std::string text = config_to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace siteeval
