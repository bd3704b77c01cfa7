#pragma once

#include <string>

#include <json.hpp>

#include "siteeval/pipeline.hpp"

namespace siteeval {

enum class ReportFormat { Json, Markdown };

// Accepts "json", "md" or "markdown"; anything else is a UsageError.
ReportFormat parse_format(const std::string& text);

// Versioned, full-precision JSON. Stages that did not run are null.
nlohmann::ordered_json report_to_json(const EvaluationReport& r);

// Markdown tables with values rounded to 4 decimals; a projection of the JSON.
std::string report_to_markdown(const EvaluationReport& r);

std::string emit_report(const EvaluationReport& r, ReportFormat format);

nlohmann::ordered_json sweep_to_json(const SweepResult& s);
std::string sweep_to_markdown(const SweepResult& s);
std::string emit_sweep(const SweepResult& s, ReportFormat format);

}  // namespace siteeval
