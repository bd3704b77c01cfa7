#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "siteeval/delphi.hpp"
#include "siteeval/entropy.hpp"

namespace siteeval::io {

struct CsvRow {
    std::size_t line = 0;  // 1-based line number in the source
    std::vector<std::string> fields;
};

// RFC-4180-ish: comma separated, double-quoted fields may contain commas and "" escapes.
// Blank lines and lines starting with '#' are skipped. The header is returned as row 0.
std::vector<CsvRow> read_csv(std::istream& in, const std::string& source);

// Survey CSV with header `indicator,respondent,class,score,confidence`
// (the confidence column may be omitted or left empty per row).
delphi::SurveyRound parse_survey(std::istream& in, const std::string& source,
                                 const std::vector<delphi::RespondentClass>& classes, int round_index = 1);
delphi::SurveyRound ingest_survey(const std::filesystem::path& path,
                                  const std::vector<delphi::RespondentClass>& classes, int round_index = 1);

// Precomputed round statistics with header `indicator,mean,std_dev,cv,full_mark_rate,gcr`.
// full_mark_rate and gcr may be empty; an empty full_mark_rate reads as 0.
std::vector<delphi::IndicatorStats> parse_stats(std::istream& in, const std::string& source);
std::vector<delphi::IndicatorStats> ingest_stats(const std::filesystem::path& path);

// Decision matrix CSV: first column `alternative`, remaining columns are indicator ids.
entropy::DecisionMatrix parse_decision_matrix(std::istream& in, const std::string& source);
entropy::DecisionMatrix ingest_decision_matrix(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace siteeval::io
