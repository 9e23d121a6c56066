#pragma once

#include <string>
#include <vector>

#include "qcspectra/cli/config.hpp"
#include "qcspectra/cli/report.hpp"

namespace qcspectra::cli {

struct SlopeFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of log(metric) against log(n). Needs at least three
/// points, all positive; otherwise Error(ErrorCode::degenerate_data).
SlopeFit emit_slope_fit(const std::vector<double>& n, const std::vector<double>& metric);

/// Experiments executed by a command; verify-all expands to several.
std::vector<Command> expand_command(const ExperimentConfig& config);

/// Rows for one chain size. Residual histories go to residual_dir when it is
/// nonempty (gmres-bench only).
std::vector<ReportRow> run_point(const ExperimentConfig& config, Command experiment, int n,
                                 const std::string& residual_dir);

/// N-independent rows computed from the per-point rows of one experiment.
std::vector<ReportRow> summarize(const ExperimentConfig& config, Command experiment,
                                 const std::vector<ReportRow>& point_rows);

}  // namespace qcspectra::cli
