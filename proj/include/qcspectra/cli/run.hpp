#pragma once

#include <iosfwd>
#include <vector>

#include "qcspectra/cli/config.hpp"
#include "qcspectra/cli/report.hpp"

namespace qcspectra::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Value of QCSPECTRA_TOL_SCALE, or 1 when unset.
double tol_scale_from_env();

/// Runs every sweep point on config.workers threads and returns the rows in
/// config order (experiment, then n). Throws qcspectra::Error on bad input.
std::vector<ReportRow> collect_rows(const ExperimentConfig& config, const std::string& residual_dir = "");

/// Full command: writes report.csv and summary.json under config.output and
/// returns the exit code. Errors are reported on err.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qcspectra::cli
