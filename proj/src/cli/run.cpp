#include "qcspectra/cli/run.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <ostream>
#include <thread>

#include "qcspectra/cli/experiments.hpp"
#include "qcspectra/errors.hpp"

namespace qcspectra::cli {

namespace {

struct Task {
  Command experiment;
  int n;
};

struct Outcome {
  std::vector<ReportRow> rows;
  std::exception_ptr error;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double tol_scale_from_env() {
  const char* v = std::getenv("QCSPECTRA_TOL_SCALE");
  if (v == nullptr || *v == '\0') return 1.0;
  char* end = nullptr;
  const double s = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(s > 0.0)) {
    throw Error(ErrorCode::config, "QCSPECTRA_TOL_SCALE must be a positive number");
  }
  return s;
}

std::vector<ReportRow> collect_rows(const ExperimentConfig& config, const std::string& residual_dir) {
  validate(config);
  if (config.command == Command::factorize && !config.coefficients.build().has_nonpositive_tail()) {
    throw Error(ErrorCode::precondition, "factorize needs phi''_r <= 0 for r >= 2 and phi''_R < 0");
  }
  const std::vector<Command> experiments = expand_command(config);
  std::vector<Task> tasks;
  for (Command e : experiments) {
    for (int n : config.n_list) tasks.push_back({e, n});
  }

  std::vector<Outcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        outcomes[i].rows = run_point(config, tasks[i].experiment, tasks[i].n, residual_dir);
      } catch (...) {
        outcomes[i].error = std::current_exception();
      }
      const double dt = seconds_since(t0);
      for (auto& r : outcomes[i].rows) r.wall_time_s = dt;
    }
  };
  const int nthreads = std::max(1, std::min<int>(config.workers, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < nthreads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<ReportRow> rows;
  std::size_t i = 0;
  for (Command e : experiments) {
    std::vector<ReportRow> point_rows;
    for (std::size_t k = 0; k < config.n_list.size(); ++k, ++i) {
      if (outcomes[i].error) std::rethrow_exception(outcomes[i].error);
      point_rows.insert(point_rows.end(), outcomes[i].rows.begin(), outcomes[i].rows.end());
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<ReportRow> summary = summarize(config, e, point_rows);
    const double dt = seconds_since(t0);
    for (auto& r : summary) r.wall_time_s = dt;
    rows.insert(rows.end(), point_rows.begin(), point_rows.end());
    rows.insert(rows.end(), summary.begin(), summary.end());
  }
  return rows;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<ReportRow> rows;
  try {
    std::filesystem::create_directories(config.output);
    const bool keep_residuals = config.command == Command::gmres_bench || config.command == Command::verify_all;
    const std::string residual_dir = keep_residuals ? config.output : std::string();
    rows = collect_rows(config, residual_dir);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error [config]: " << e.what() << "\n";
    return kExitUsage;
  }

  const bool ok = all_checks_passed(rows);
  const int code = ok ? kExitOk : kExitCheckFailed;
  try {
    write_csv(config.output + "/report.csv", rows);
    write_summary(config.output + "/summary.json", to_string(config.command), rows, code);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitUsage;
  }

  int checks = 0;
  int failed = 0;
  for (const auto& r : rows) {
    if (!r.passed) continue;
    ++checks;
    if (!*r.passed) {
      ++failed;
      err << "FAILED " << r.experiment << " n=" << r.n << " " << r.metric << " value=" << format_double(r.value)
          << " limit=" << format_double(r.limit.value_or(0.0)) << "\n";
    }
  }
  out << to_string(config.command) << ": " << rows.size() << " rows, " << checks - failed << "/" << checks
      << " checks passed -> " << config.output << "/report.csv\n";
  return code;
}

}  // namespace qcspectra::cli
