#include "qcspectra/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qcspectra/errors.hpp"
#include "qcspectra/qc_operators.hpp"
#include "qcspectra/spectral.hpp"

namespace qcspectra {

const char* to_string(InnerProductKind kind) {
  return kind == InnerProductKind::euclidean ? "euclidean" : "l1";
}

InnerProduct InnerProduct::euclidean() { return InnerProduct(); }

InnerProduct InnerProduct::l1_weighted(int n) {
  InnerProduct ip;
  ip.kind_ = InnerProductKind::l1_weighted;
  ip.factor_ = modified_laplacian_power(n, 0.5);
  return ip;
}

Eigen::VectorXd InnerProduct::factor_apply(const Eigen::VectorXd& u) const {
  if (kind_ == InnerProductKind::euclidean) return u;
  return factor_ * u;
}

GmresResult gmres(const LinearMap& apply, const PeriodicVector& rhs, const InnerProduct& inner, double tol,
                  int maxit, bool require_mean_zero) {
  const int n = rhs.size();
  if (maxit < 1 || maxit > n) throw Error(ErrorCode::precondition, "GMRES needs 1 <= maxit <= N");
  if (require_mean_zero && !rhs.is_mean_zero()) {
    throw Error(ErrorCode::projection_violation, "right-hand side is not in the mean-zero subspace");
  }

  GmresResult out;
  out.trace.tol = tol;
  out.trace.inner_product = inner.kind();
  out.solution = Eigen::VectorXd::Zero(n);

  const Eigen::VectorXd& b = rhs.values();
  Eigen::VectorXd zb = inner.factor_apply(b);
  const double beta = zb.norm();
  out.trace.residual_norms.push_back(beta);
  if (beta == 0.0) {
    out.trace.converged = true;
    return out;
  }

  // Krylov basis V and its image Z = F V, so that inner products are plain dots on Z.
  Eigen::MatrixXd v(n, maxit + 1);
  Eigen::MatrixXd z(n, maxit + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(maxit + 1, maxit);
  Eigen::VectorXd cs = Eigen::VectorXd::Zero(maxit);
  Eigen::VectorXd sn = Eigen::VectorXd::Zero(maxit);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(maxit + 1);
  v.col(0) = b / beta;
  z.col(0) = zb / beta;
  g[0] = beta;

  int k = 0;
  for (int j = 0; j < maxit; ++j) {
    Eigen::VectorXd w = apply(v.col(j));
    Eigen::VectorXd zw = inner.factor_apply(w);
    const double wnorm0 = zw.norm();
    // Modified Gram-Schmidt, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= j; ++i) {
        const double hij = z.col(i).dot(zw);
        h(i, j) += hij;
        w -= hij * v.col(i);
        zw -= hij * z.col(i);
      }
    }
    const double hnext = zw.norm();
    h(j + 1, j) = hnext;

    for (int i = 0; i < j; ++i) {
      const double t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
      h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
      h(i, j) = t;
    }
    const double rr = std::hypot(h(j, j), h(j + 1, j));
    if (rr == 0.0) throw Error(ErrorCode::solver_failure, "GMRES breakdown with a singular Hessenberg column");
    cs[j] = h(j, j) / rr;
    sn[j] = h(j + 1, j) / rr;
    h(j, j) = rr;
    h(j + 1, j) = 0.0;
    g[j + 1] = -sn[j] * g[j];
    g[j] = cs[j] * g[j];

    k = j + 1;
    const double res = std::abs(g[j + 1]);
    out.trace.residual_norms.push_back(res);
    if (res <= tol * beta) {
      out.trace.converged = true;
      break;
    }
    if (hnext <= 1e-14 * std::max(wnorm0, 1e-300)) {
      // Invariant subspace reached: the least-squares solution is exact.
      out.trace.converged = true;
      break;
    }
    v.col(j + 1) = w / hnext;
    z.col(j + 1) = zw / hnext;
  }
  out.trace.iterations = k;

  const Eigen::VectorXd y =
      h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
  out.solution = v.leftCols(k) * y;
  return out;
}

namespace {

int default_maxit(int maxit, int n) { return maxit > 0 ? maxit : n - 1; }

QcfSolve from_result(GmresResult&& r) {
  QcfSolve s;
  s.solution = std::move(r.solution);
  s.trace = std::move(r.trace);
  return s;
}

}  // namespace

QcfSolve solve_qcf_plain(const ChainModel& model, const RegionMask& mask, const PeriodicVector& rhs, double tol,
                         int maxit) {
  const Eigen::MatrixXd q0 = assemble_qcf0(model, mask).entries;
  QcfSolve s = from_result(gmres([&](const Eigen::VectorXd& u) -> Eigen::VectorXd { return q0 * u; }, rhs,
                                 InnerProduct::euclidean(), tol, default_maxit(maxit, model.n()), true));

  const Diagonalization d = model.r_cut() == 2 ? build_vqcf_r2(model, mask) : build_vqcf_fr(model, mask);
  // Eigenvectors spanning the mean-zero subspace: drop the kernel column.
  Eigen::Index kernel = 0;
  d.eigenvalues.cwiseAbs().minCoeff(&kernel);
  Eigen::MatrixXd vu(d.vectors.rows(), d.vectors.cols() - 1);
  for (Eigen::Index c = 0, o = 0; c < d.vectors.cols(); ++c) {
    if (c != kernel) vu.col(o++) = d.vectors.col(c);
  }
  s.cond_vqcf = cond(vu);

  const std::vector<std::complex<double>> lam = sorted_spectrum(q0);
  s.gamma = lam[1].real() / lam.back().real();
  const double sg = std::sqrt(s.gamma);
  const double q = (1.0 - sg) / (1.0 + sg);
  const double r0 = s.trace.residual_norms.front();
  for (std::size_t m = 0; m < s.trace.residual_norms.size(); ++m) {
    const double env = 2.0 * s.cond_vqcf * std::pow(q, static_cast<double>(m)) * r0;
    s.envelope.push_back(env);
    if (s.trace.residual_norms[m] > env * (1.0 + 1e-12)) s.within_envelope = false;
  }
  return s;
}

QcfSolve solve_qcf_pgmres_left(const ChainModel& model, const RegionMask& mask, const PeriodicVector& rhs,
                               double tol, int maxit) {
  if (!rhs.is_mean_zero()) {
    throw Error(ErrorCode::projection_violation, "right-hand side is not in the mean-zero subspace");
  }
  const Eigen::MatrixXd l1i = modified_laplacian_power(model.n(), -1.0);
  const Eigen::MatrixXd op = l1i * assemble_qcf0(model, mask).entries;
  const PeriodicVector prhs(l1i * rhs.values());
  return from_result(gmres([&](const Eigen::VectorXd& u) -> Eigen::VectorXd { return op * u; }, prhs,
                           InnerProduct::euclidean(), tol, default_maxit(maxit, model.n()), false));
}

QcfSolve solve_qcf_pgmres_energy(const ChainModel& model, const RegionMask& mask, const PeriodicVector& rhs,
                                 double tol, int maxit) {
  if (!rhs.is_mean_zero()) {
    throw Error(ErrorCode::projection_violation, "right-hand side is not in the mean-zero subspace");
  }
  const Eigen::MatrixXd l1i = modified_laplacian_power(model.n(), -1.0);
  const Eigen::MatrixXd op = l1i * assemble_qcf0(model, mask).entries;
  const PeriodicVector prhs(l1i * rhs.values());
  return from_result(gmres([&](const Eigen::VectorXd& u) -> Eigen::VectorXd { return op * u; }, prhs,
                           InnerProduct::l1_weighted(model.n()), tol, default_maxit(maxit, model.n()), false));
}

double fit_rate(const GmresTrace& trace) {
  const auto& r = trace.residual_norms;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t m = 0; m < r.size(); ++m) {
    if (r[m] > 0.0) {
      xs.push_back(static_cast<double>(m));
      ys.push_back(std::log(r[m]));
    }
  }
  if (xs.size() < 2) throw Error(ErrorCode::degenerate_data, "rate fit needs at least two positive residuals");
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return std::exp(sxy / sxx);
}

PeriodicVector random_mean_zero_rhs(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) {
    // 53 random bits mapped to [-1, 1).
    f[i] = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
  }
  f.array() -= f.mean();
  return PeriodicVector(std::move(f));
}

PeriodicVector dipole_rhs(const RegionMask& mask) {
  const int n = mask.size();
  int first = -1;
  int last = -1;
  for (int l = 0; l < n; ++l) {
    if (mask[l]) {
      if (first < 0) first = l;
      last = l;
    }
  }
  if (first < 0 || first == last) {
    first = 0;
    last = n / 2;
  }
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  f[first] = 1.0;
  f[last] = -1.0;
  return PeriodicVector(std::move(f));
}

}  // namespace qcspectra
