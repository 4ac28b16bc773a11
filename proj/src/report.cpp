#include "ballkit/report.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "ballkit/errors.hpp"

namespace ballkit {

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::JsonLines;
  throw DomainError("unknown report format '" + std::string(s) + "' (expected csv or json)");
}

std::string_view csv_header() {
  return "name,trial,d,k,l,r,lambda,n,seed,lhs,rhs,stderr_lhs,stderr_rhs,slack,pass,path,vP,vQ,"
         "theorem_applicable";
}

namespace {

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, bool>) {
    return *v ? "true" : "false";
  } else {
    return fmt::format("{}", *v);
  }
}

template <class T>
void put(nlohmann::ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

}  // namespace

std::string csv_row(const InequalityReport& rep) {
  const ReportParams& p = rep.params;
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", rep.name,
                     cell(p.trial), cell(p.d), cell(p.k), cell(p.l), cell(p.r), cell(p.lambda),
                     cell(p.n), cell(p.seed), rep.lhs, rep.rhs, rep.stderr_lhs, rep.stderr_rhs,
                     rep.slack(), rep.pass ? "true" : "false", path_name(rep.path), cell(rep.vP),
                     cell(rep.vQ), cell(rep.theorem_applicable));
}

std::string json_line(const InequalityReport& rep) {
  const ReportParams& p = rep.params;
  nlohmann::ordered_json j;
  j["name"] = rep.name;
  put(j, "trial", p.trial);
  put(j, "d", p.d);
  put(j, "k", p.k);
  put(j, "l", p.l);
  put(j, "r", p.r);
  put(j, "lambda", p.lambda);
  put(j, "n", p.n);
  put(j, "seed", p.seed);
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["stderr_lhs"] = rep.stderr_lhs;
  j["stderr_rhs"] = rep.stderr_rhs;
  j["slack"] = rep.slack();
  j["pass"] = rep.pass;
  j["path"] = std::string(path_name(rep.path));
  put(j, "vP", rep.vP);
  put(j, "vQ", rep.vQ);
  put(j, "theorem_applicable", rep.theorem_applicable);
  return j.dump();
}

void write_reports(std::ostream& out, std::span<const InequalityReport> reports, ReportFormat fmt) {
  if (fmt == ReportFormat::Csv) out << kReportVersionLine << '\n' << csv_header() << '\n';
  for (const InequalityReport& rep : reports) {
    out << (fmt == ReportFormat::Csv ? csv_row(rep) : json_line(rep)) << '\n';
  }
}

}  // namespace ballkit
