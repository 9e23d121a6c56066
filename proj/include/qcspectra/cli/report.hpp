#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcspectra/spectral.hpp"

namespace qcspectra::cli {

/// One CSV line. Rows without a check leave limit, passed and margin empty.
/// N-independent rows (slope fits, factorization data) use n = 0.
struct ReportRow {
  std::string experiment;
  int n = 0;
  int n_atomistic = 0;
  std::string metric;
  double value = 0.0;
  std::optional<double> limit;
  std::optional<bool> passed;
  std::optional<double> margin;
  double wall_time_s = 0.0;
};

ReportRow metric_row(std::string experiment, int n, int n_atomistic, std::string metric, double value);
ReportRow check_row(std::string experiment, int n, int n_atomistic, const BoundCheck& check);

inline constexpr const char* kCsvHeader = "experiment,n,n_atomistic,metric,value,limit,passed,margin,wall_time_s";

/// %.17g, with "inf", "-inf" and "nan" spelled out.
std::string format_double(double v);

std::string csv_line(const ReportRow& row, bool with_wall_time = true);
/// Header plus all rows; with_wall_time = false drops the last column.
std::string csv_document(const std::vector<ReportRow>& rows, bool with_wall_time = true);

void write_csv(const std::string& path, const std::vector<ReportRow>& rows);
void write_summary(const std::string& path, const std::string& command, const std::vector<ReportRow>& rows,
                   int exit_code);

bool all_checks_passed(const std::vector<ReportRow>& rows);

}  // namespace qcspectra::cli
