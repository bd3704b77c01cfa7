#include "siteeval/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "siteeval/error.hpp"

namespace siteeval::io {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line);
}

std::string where(const std::string& source, std::size_t line, const std::string& column) {
    return source + ":" + std::to_string(line) + ", column '" + column + "'";
}

int parse_int(const std::string& text, const std::string& context) {
    const std::string s = trim(text);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ValidationError(context + ": expected an integer, got '" + text + "'");
    }
    return v;
}

double parse_double(const std::string& text, const std::string& context) {
    const std::string s = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ValidationError(context + ": expected a number, got '" + text + "'");
    }
    return v;
}

// Maps header names to column positions; every `required` name must be present.
std::map<std::string, std::size_t> header_index(const CsvRow& header, const std::string& source,
                                                const std::vector<std::string>& required,
                                                const std::vector<std::string>& optional) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
        const std::string name = trim(header.fields[i]);
        if (!idx.emplace(name, i).second) {
            throw ValidationError(where(source, header.line) + ": duplicate column '" + name + "'");
        }
    }
    for (const auto& r : required) {
        if (!idx.contains(r)) throw ValidationError(where(source, header.line) + ": missing column '" + r + "'");
    }
    for (const auto& [name, _] : idx) {
        bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                     std::find(optional.begin(), optional.end(), name) != optional.end();
        if (!known) throw ValidationError(where(source, header.line) + ": unexpected column '" + name + "'");
    }
    return idx;
}

void require_width(const CsvRow& row, std::size_t width, const std::string& source) {
    if (row.fields.size() != width) {
        throw ValidationError(where(source, row.line) + ": expected " + std::to_string(width) + " fields, got " +
                              std::to_string(row.fields.size()));
    }
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

std::vector<CsvRow> read_csv(std::istream& in, const std::string& source) {
    std::vector<CsvRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || trim(line).front() == '#') continue;

        CsvRow row{line_no, {}};
        std::string field;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char ch = line[i];
            if (quoted) {
                if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else if (ch == '"') {
                    quoted = false;
                } else {
                    field += ch;
                }
            } else if (ch == '"') {
                quoted = true;
            } else if (ch == ',') {
                row.fields.push_back(trim(field));
                field.clear();
            } else {
                field += ch;
            }
        }
        if (quoted) throw ValidationError(where(source, line_no) + ": unterminated quoted field");
        row.fields.push_back(trim(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

delphi::SurveyRound parse_survey(std::istream& in, const std::string& source,
                                 const std::vector<delphi::RespondentClass>& classes, int round_index) {
    const auto rows = read_csv(in, source);
    if (rows.empty()) throw ValidationError(source + ": empty survey file");
    const auto idx = header_index(rows.front(), source, {"indicator", "respondent", "class", "score"}, {"confidence"});
    const bool has_conf = idx.contains("confidence");

    std::set<std::string> labels;
    for (const auto& c : classes) labels.insert(c.label);

    delphi::SurveyRound round;
    round.round_index = round_index;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        require_width(row, rows.front().fields.size(), source);
        delphi::Response resp;
        resp.indicator = row.fields[idx.at("indicator")];
        resp.respondent = row.fields[idx.at("respondent")];
        resp.respondent_class = row.fields[idx.at("class")];
        if (resp.indicator.empty()) throw ValidationError(where(source, row.line, "indicator") + ": empty indicator");
        if (resp.respondent.empty()) throw ValidationError(where(source, row.line, "respondent") + ": empty respondent");
        if (!labels.contains(resp.respondent_class)) {
            throw ValidationError(where(source, row.line, "class") + ": unknown class label '" +
                                  resp.respondent_class + "'");
        }
        resp.score = parse_int(row.fields[idx.at("score")], where(source, row.line, "score"));
        if (resp.score < delphi::kMinScore || resp.score > delphi::kMaxScore) {
            throw ValidationError(where(source, row.line, "score") + ": score out of range 1–5");
        }
        if (has_conf && !row.fields[idx.at("confidence")].empty()) {
            const int c = parse_int(row.fields[idx.at("confidence")], where(source, row.line, "confidence"));
            if (c < delphi::kMinScore || c > delphi::kMaxScore) {
                throw ValidationError(where(source, row.line, "confidence") + ": confidence out of range 1–5");
            }
            resp.confidence = c;
        }
        if (!seen.emplace(resp.respondent, resp.indicator).second) {
            throw ValidationError(where(source, row.line) + ": duplicate response (" + resp.respondent + ", " +
                                  resp.indicator + ")");
        }
        round.responses.push_back(std::move(resp));
    }
    delphi::validate_round(round, classes);
    return round;
}

delphi::SurveyRound ingest_survey(const std::filesystem::path& path,
                                  const std::vector<delphi::RespondentClass>& classes, int round_index) {
    auto in = open(path);
    return parse_survey(in, path.string(), classes, round_index);
}

std::vector<delphi::IndicatorStats> parse_stats(std::istream& in, const std::string& source) {
    const auto rows = read_csv(in, source);
    if (rows.empty()) throw ValidationError(source + ": empty statistics file");
    const auto idx =
        header_index(rows.front(), source, {"indicator", "mean", "std_dev", "cv"}, {"full_mark_rate", "gcr", "count"});

    std::vector<delphi::IndicatorStats> out;
    std::set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        require_width(row, rows.front().fields.size(), source);
        auto num = [&](const char* col) { return parse_double(row.fields[idx.at(col)], where(source, row.line, col)); };
        auto opt = [&](const char* col) -> std::optional<double> {
            if (!idx.contains(col) || row.fields[idx.at(col)].empty()) return std::nullopt;
            return num(col);
        };
        delphi::IndicatorStats s;
        s.indicator = row.fields[idx.at("indicator")];
        if (s.indicator.empty()) throw ValidationError(where(source, row.line, "indicator") + ": empty indicator");
        if (!seen.insert(s.indicator).second) {
            throw ValidationError(where(source, row.line) + ": duplicate indicator '" + s.indicator + "'");
        }
        s.mean = num("mean");
        s.std_dev = num("std_dev");
        s.cv = num("cv");
        s.full_mark_rate = opt("full_mark_rate").value_or(0.0);
        s.gcr = opt("gcr");
        if (auto c = opt("count")) s.respondent_count = static_cast<int>(*c);
        if (s.mean < delphi::kMinScore || s.mean > delphi::kMaxScore) {
            throw ValidationError(where(source, row.line, "mean") + ": mean out of range 1–5");
        }
        if (s.std_dev < 0.0 || s.cv < 0.0) throw ValidationError(where(source, row.line) + ": negative dispersion");
        if (s.full_mark_rate < 0.0 || s.full_mark_rate > 1.0) {
            throw ValidationError(where(source, row.line, "full_mark_rate") + ": rate outside [0,1]");
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<delphi::IndicatorStats> ingest_stats(const std::filesystem::path& path) {
    auto in = open(path);
    return parse_stats(in, path.string());
}

entropy::DecisionMatrix parse_decision_matrix(std::istream& in, const std::string& source) {
    const auto rows = read_csv(in, source);
    if (rows.empty()) throw ValidationError(source + ": empty decision matrix file");
    const auto& header = rows.front();
    if (header.fields.empty() || header.fields.front() != "alternative") {
        throw ValidationError(where(source, header.line) + ": first column must be 'alternative'");
    }
    std::vector<std::string> indicators(header.fields.begin() + 1, header.fields.end());
    std::vector<std::string> alternatives;
    std::vector<std::vector<double>> values;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        require_width(row, header.fields.size(), source);
        alternatives.push_back(row.fields.front());
        std::vector<double> v;
        for (std::size_t c = 1; c < row.fields.size(); ++c) {
            const double x = parse_double(row.fields[c], where(source, row.line, indicators[c - 1]));
            if (x < 0.0) throw ValidationError(where(source, row.line, indicators[c - 1]) + ": negative value");
            v.push_back(x);
        }
        values.push_back(std::move(v));
    }
    return entropy::DecisionMatrix(std::move(alternatives), std::move(indicators), std::move(values));
}

entropy::DecisionMatrix ingest_decision_matrix(const std::filesystem::path& path) {
    auto in = open(path);
    return parse_decision_matrix(in, path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    auto in = open(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace siteeval::io
