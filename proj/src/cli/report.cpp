#include "qcspectra/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "qcspectra/errors.hpp"

namespace qcspectra::cli {

ReportRow metric_row(std::string experiment, int n, int n_atomistic, std::string metric, double value) {
  ReportRow r;
  r.experiment = std::move(experiment);
  r.n = n;
  r.n_atomistic = n_atomistic;
  r.metric = std::move(metric);
  r.value = value;
  return r;
}

ReportRow check_row(std::string experiment, int n, int n_atomistic, const BoundCheck& check) {
  ReportRow r = metric_row(std::move(experiment), n, n_atomistic, check.name, check.measured);
  r.limit = check.limit;
  r.passed = check.passed;
  r.margin = check.margin;
  return r;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_line(const ReportRow& row, bool with_wall_time) {
  std::string s = row.experiment + "," + std::to_string(row.n) + "," + std::to_string(row.n_atomistic) + "," +
                  row.metric + "," + format_double(row.value) + ",";
  if (row.limit) s += format_double(*row.limit);
  s += ",";
  if (row.passed) s += *row.passed ? "true" : "false";
  s += ",";
  if (row.margin) s += format_double(*row.margin);
  if (with_wall_time) s += "," + format_double(row.wall_time_s);
  return s;
}

std::string csv_document(const std::vector<ReportRow>& rows, bool with_wall_time) {
  std::string header = kCsvHeader;
  if (!with_wall_time) header = header.substr(0, header.rfind(','));
  std::string doc = header + "\n";
  for (const auto& r : rows) doc += csv_line(r, with_wall_time) + "\n";
  return doc;
}

void write_csv(const std::string& path, const std::vector<ReportRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::config, "cannot write " + path);
  out << csv_document(rows);
}

void write_summary(const std::string& path, const std::string& command, const std::vector<ReportRow>& rows,
                   int exit_code) {
  nlohmann::json checks = nlohmann::json::array();
  int failed = 0;
  for (const auto& r : rows) {
    if (!r.passed) continue;
    if (!*r.passed) ++failed;
    checks.push_back({{"experiment", r.experiment},
                      {"n", r.n},
                      {"n_atomistic", r.n_atomistic},
                      {"metric", r.metric},
                      {"passed", *r.passed},
                      {"value", r.value},
                      {"limit", r.limit.value_or(0.0)},
                      {"margin", r.margin.value_or(0.0)}});
  }
  const nlohmann::json doc = {{"command", command},
                              {"exit_code", exit_code},
                              {"rows", rows.size()},
                              {"checks_total", checks.size()},
                              {"checks_failed", failed},
                              {"all_passed", failed == 0},
                              {"checks", checks}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::config, "cannot write " + path);
  out << doc.dump(2) << "\n";
}

bool all_checks_passed(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows) {
    if (r.passed && !*r.passed) return false;
  }
  return true;
}

}  // namespace qcspectra::cli
