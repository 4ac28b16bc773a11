#pragma once

// Report serialization. CSV files open with the version line
// `# ballkit-report v1` followed by a fixed header; absent parameters are
// empty cells. JSON lines carry the same fields, omitting absent ones.
// Numbers use the shortest representation that round-trips.

#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "ballkit/inequality.hpp"

namespace ballkit {

enum class ReportFormat { Csv, JsonLines };

/// Parses "csv" or "json"; throws DomainError otherwise.
ReportFormat parse_report_format(std::string_view s);

inline constexpr std::string_view kReportVersionLine = "# ballkit-report v1";
std::string_view csv_header();

std::string csv_row(const InequalityReport& rep);
std::string json_line(const InequalityReport& rep);

/// Writes the preamble (CSV only) and one line per report.
void write_reports(std::ostream& out, std::span<const InequalityReport> reports, ReportFormat fmt);

}  // namespace ballkit
