#include "qcspectra/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>

#include <Eigen/LU>

#include "qcspectra/errors.hpp"
#include "qcspectra/krylov.hpp"
#include "qcspectra/laurent.hpp"
#include "qcspectra/qc_operators.hpp"
#include "qcspectra/spectral.hpp"

namespace qcspectra::cli {

namespace {

struct Point {
  const ExperimentConfig& config;
  std::string id;
  ChainModel model;
  RegionMask mask;
  int n_atomistic;
  double scale;
  std::vector<ReportRow> rows;

  Point(const ExperimentConfig& c, Command e, int n)
      : config(c),
        id(to_string(e)),
        model(n, c.coefficients.build()),
        mask(c.mask.build(n)),
        n_atomistic(mask.atomistic_count()),
        scale(c.tolerances.scale) {}

  void metric(const std::string& name, double value) {
    rows.push_back(metric_row(id, model.n(), n_atomistic, name, value));
  }
  void check(const BoundCheck& c) { rows.push_back(check_row(id, model.n(), n_atomistic, c)); }
  void checks(const SpectralReport& r) {
    for (const auto& c : r.bound_checks) check(c);
  }
};

double relative_max_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

void point_spectrum(Point& p) {
  const auto lam = sorted_spectrum(assemble_qcf0(p.model, p.mask).entries);
  double rho = 0.0;
  double imag = 0.0;
  for (const auto& z : lam) {
    rho = std::max(rho, std::abs(z));
    imag = std::max(imag, std::abs(z.imag()));
  }
  p.metric("lambda_2", lam[1].real());
  p.metric("lambda_max", lam.back().real());
  p.check(check_le("imaginary_parts", imag / rho, 1e-8 * p.scale));
  p.check(check_le("lambda1_zero", std::abs(lam[0]) / rho, 1e-9 * p.scale));
}

void point_factorize(Point& p) {
  const GrfFactorization grf = factorize_model(p.model);
  const Eigen::MatrixXd y1 = assemble_Y1(p.model, grf).entries;
  const Eigen::MatrixXd l = assemble_laplacian(p.model.n()).entries;
  const Eigen::MatrixXd diff = assemble_atomistic(p.model).entries - assemble_continuum(p.model).entries;
  const Eigen::MatrixXd yyt = l * y1 * y1.transpose() * l;
  p.check(check_le("yyt_residual", relative_max_diff(yyt, grf.sigma * diff), 1e-10 * p.scale));
  p.check(check_le("y1_norm", operator_norm(y1), grf.beta1 * (1.0 + 1e-10 * p.scale)));
  p.check(check_le("y1_inverse_norm", operator_norm(y1.inverse()), (1.0 + 1e-10 * p.scale) / grf.beta0));
}

void point_similarity(Point& p) { p.checks(check_similarity_r2(p.model, p.mask, p.scale)); }

void point_cond_scan(Point& p) {
  const GrfFactorization grf = factorize_model(p.model);
  if (p.model.r_cut() == 2 && p.model.phi(2) <= 0.0) {
    const Diagonalization d = build_vqcf_r2(p.model, p.mask);
    p.check(check_le("vqcf_r2_residual", d.residual, 1e-9 * p.scale));
    p.check(check_le("cond_vqcf_r2", d.cond, vqcf_r2_bound(p.model)));
  }
  const Diagonalization d = build_vqcf_fr(p.model, p.mask, grf);
  p.check(check_le("vqcf_fr_residual", d.residual, 1e-9 * p.scale));
  if (grf.sigma * grf.beta1 * grf.beta1 / p.model.w2() > -0.25) {
    p.check(check_le("cond_vqcf_fr", d.cond, vqcf_fr_bound(p.model, grf)));
  } else {
    p.metric("cond_vqcf_fr", d.cond);
  }
  const PrecAnalysis a = prec_eigen_analysis(p.model, p.mask, grf, p.scale);
  p.metric("cond_prec_leftright", a.cond_leftright);
  p.metric("cond_prec_left", a.cond_left);
  p.metric("c0", a.c0);
  p.metric("c1", a.c1);
  p.checks(a.report);
}

void point_interlacing(Point& p) {
  p.checks(interlacing_check(p.model, p.mask, p.scale));
  if (p.model.coefficients().has_nonpositive_tail() && p.model.w2() > 0.0) {
    for (const auto& c : eigenvalue_window_check(p.model, p.mask, p.scale).bound_checks) {
      if (c.name != "imaginary_parts") p.check(c);
    }
  }
}

void point_stability(Point& p) {
  const GrfFactorization grf = factorize_model(p.model);
  const double v = u22_stability(p.model, p.mask);
  if (grf.sigma * grf.beta1 * grf.beta1 / p.model.w2() > -0.25) {
    p.check(check_le("u22_norm", v, u22_bound(p.model, grf)));
  } else {
    p.metric("u22_norm", v);
  }
}

void write_residuals(const std::string& path, const GmresTrace& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::config, "cannot write " + path);
  out << "iteration,residual\n";
  for (std::size_t m = 0; m < t.residual_norms.size(); ++m) {
    out << m << "," << format_double(t.residual_norms[m]) << "\n";
  }
}

void point_gmres(Point& p, const std::string& residual_dir) {
  const int n = p.model.n();
  const PeriodicVector rhs = random_mean_zero_rhs(n, p.config.seed ^ static_cast<std::uint64_t>(n));
  const double tol = p.config.tolerances.gmres;

  const QcfSolve plain = solve_qcf_plain(p.model, p.mask, rhs, tol);
  double worst = 0.0;
  for (std::size_t m = 0; m < plain.envelope.size(); ++m) {
    worst = std::max(worst, plain.trace.residual_norms[m] / plain.envelope[m]);
  }
  p.metric("plain_iterations", plain.trace.iterations);
  p.metric("gamma", plain.gamma);
  p.metric("cond_vqcf_mean_zero", plain.cond_vqcf);
  p.check(check_le("plain_envelope_ratio", worst, 1.0 + 1e-12));

  const QcfSolve left = solve_qcf_pgmres_left(p.model, p.mask, rhs, tol);
  const QcfSolve energy = solve_qcf_pgmres_energy(p.model, p.mask, rhs, tol);
  const double limit = p.n_atomistic + 5;
  const double inf = std::numeric_limits<double>::infinity();
  p.check(check_le("pgmres_left_iterations", left.trace.converged ? left.trace.iterations : inf, limit));
  p.check(check_le("pgmres_energy_iterations", energy.trace.converged ? energy.trace.iterations : inf, limit));

  if (!residual_dir.empty()) {
    const std::string suffix = "_n" + std::to_string(n) + ".csv";
    write_residuals(residual_dir + "/residuals_plain" + suffix, plain.trace);
    write_residuals(residual_dir + "/residuals_left" + suffix, left.trace);
    write_residuals(residual_dir + "/residuals_energy" + suffix, energy.trace);
  }
}

// Values of one metric keyed by n, in ascending n.
std::map<int, double> collect(const std::vector<ReportRow>& rows, const std::string& metric) {
  std::map<int, double> out;
  for (const auto& r : rows) {
    if (r.metric == metric) out[r.n] = r.value;
  }
  return out;
}

void add_slope(std::vector<ReportRow>& out, const std::string& id, const std::vector<ReportRow>& rows,
               const std::string& metric, std::optional<std::pair<double, double>> window) {
  const auto series = collect(rows, metric);
  if (series.size() < 3) return;
  std::vector<double> ns;
  std::vector<double> vs;
  for (const auto& [n, v] : series) {
    ns.push_back(n);
    vs.push_back(v);
  }
  const SlopeFit fit = emit_slope_fit(ns, vs);
  if (window) {
    ReportRow r = metric_row(id, 0, 0, metric + "_slope", fit.slope);
    r.limit = fit.slope < window->first ? window->first : window->second;
    r.passed = fit.slope >= window->first && fit.slope <= window->second;
    r.margin = std::min(fit.slope - window->first, window->second - fit.slope);
    out.push_back(r);
  } else {
    out.push_back(metric_row(id, 0, 0, metric + "_slope", fit.slope));
  }
  out.push_back(metric_row(id, 0, 0, metric + "_r_squared", fit.r_squared));
}

void add_variation(std::vector<ReportRow>& out, const std::string& id, const std::vector<ReportRow>& rows,
                   const std::string& metric, double limit) {
  const auto series = collect(rows, metric);
  if (series.size() < 2) return;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& [n, v] : series) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.push_back(check_row(id, 0, 0, check_le(metric + "_variation", hi / lo, limit)));
}

}  // namespace

SlopeFit emit_slope_fit(const std::vector<double>& n, const std::vector<double>& metric) {
  if (n.size() != metric.size() || n.size() < 3) {
    throw Error(ErrorCode::degenerate_data, "slope fit needs at least three (n, metric) pairs");
  }
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(metric[i] > 0.0) || !std::isfinite(metric[i])) {
      throw Error(ErrorCode::degenerate_data, "slope fit needs positive finite data");
    }
    x.push_back(std::log(n[i]));
    y.push_back(std::log(metric[i]));
  }
  const double k = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / k;
    my += y[i] / k;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::degenerate_data, "slope fit needs at least two distinct n");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

std::vector<Command> expand_command(const ExperimentConfig& config) {
  if (config.command != Command::verify_all) return {config.command};
  const Coefficients c = config.coefficients.build();
  std::vector<Command> out;
  if (c.range() == 2) out.push_back(Command::similarity);
  out.push_back(Command::cond_scan);
  if (c.has_nonpositive_tail()) out.push_back(Command::interlacing);
  out.push_back(Command::stability_scan);
  out.push_back(Command::gmres_bench);
  return out;
}

std::vector<ReportRow> run_point(const ExperimentConfig& config, Command experiment, int n,
                                 const std::string& residual_dir) {
  Point p(config, experiment, n);
  switch (experiment) {
    case Command::spectrum: point_spectrum(p); break;
    case Command::similarity: point_similarity(p); break;
    case Command::factorize: point_factorize(p); break;
    case Command::cond_scan: point_cond_scan(p); break;
    case Command::interlacing: point_interlacing(p); break;
    case Command::gmres_bench: point_gmres(p, residual_dir); break;
    case Command::stability_scan: point_stability(p); break;
    case Command::verify_all: throw Error(ErrorCode::config, "verify-all is not a single experiment");
  }
  return std::move(p.rows);
}

std::vector<ReportRow> summarize(const ExperimentConfig& config, Command experiment,
                                 const std::vector<ReportRow>& point_rows) {
  const std::string id = to_string(experiment);
  std::vector<ReportRow> out;
  switch (experiment) {
    case Command::factorize: {
      const Coefficients coeffs = config.coefficients.build();
      if (!coeffs.has_nonpositive_tail()) {
        throw Error(ErrorCode::precondition, "factorize needs phi''_r <= 0 for r >= 2 and phi''_R < 0");
      }
      const LaurentPoly b1 = build_b1(coeffs);
      const GrfFactorization grf = grf_factorize(b1);
      const BetaBounds closed = beta_bounds_closed_form(coeffs);
      out.push_back(metric_row(id, 0, 0, "sigma", grf.sigma));
      for (int k = 0; k <= grf.p1.hi(); ++k) {
        out.push_back(metric_row(id, 0, 0, "p1_coeff_" + std::to_string(k), grf.p1.coeff(k)));
      }
      out.push_back(check_row(id, 0, 0,
                              check_le("reconstruction_error", grf_reconstruction_error(grf, b1),
                                       1e-10 * config.tolerances.scale)));
      out.push_back(check_row(id, 0, 0,
                              check_le("beta0_closed_form_rel_diff",
                                       std::abs(grf.beta0 * grf.beta0 - closed.beta0 * closed.beta0) /
                                           (closed.beta0 * closed.beta0),
                                       1e-6 * config.tolerances.scale)));
      out.push_back(check_row(id, 0, 0,
                              check_le("beta1_closed_form_rel_diff",
                                       std::abs(grf.beta1 * grf.beta1 - closed.beta1 * closed.beta1) /
                                           (closed.beta1 * closed.beta1),
                                       1e-6 * config.tolerances.scale)));
      out.push_back(metric_row(id, 0, 0, "beta0", grf.beta0));
      out.push_back(metric_row(id, 0, 0, "beta1", grf.beta1));
      break;
    }
    case Command::cond_scan:
      add_variation(out, id, point_rows, "cond_vqcf_r2", 1.5);
      add_variation(out, id, point_rows, "cond_vqcf_fr", 1.5);
      add_slope(out, id, point_rows, "cond_prec_leftright", std::make_pair(1.8, 2.2));
      add_slope(out, id, point_rows, "cond_prec_left", std::nullopt);
      break;
    case Command::stability_scan:
      add_variation(out, id, point_rows, "u22_norm", 1.5);
      break;
    case Command::gmres_bench:
      add_slope(out, id, point_rows, "gamma", std::make_pair(-2.3, -1.7));
      break;
    default:
      break;
  }
  return out;
}

}  // namespace qcspectra::cli
