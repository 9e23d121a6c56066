#include "qcspectra/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "qcspectra/errors.hpp"
#include "qcspectra/periodic_core.hpp"

namespace qcspectra {

namespace {

// Unbiased draw from [0, bound); spelled out because the standard
// distributions are not reproducible across library implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return x % bound;
}

}  // namespace

Coefficients::Coefficients(std::vector<double> phi2) : phi2_(std::move(phi2)) {
  if (phi2_.empty()) throw Error(ErrorCode::precondition, "at least one interaction coefficient is required");
  for (std::size_t i = 0; i < phi2_.size(); ++i) {
    const double r = static_cast<double>(i + 1);
    w2_ += r * r * phi2_[i];
  }
}

bool Coefficients::has_nonpositive_tail() const {
  if (range() < 2) return false;
  for (int r = 2; r <= range(); ++r) {
    if (phi(r) > 0.0) return false;
  }
  return phi(range()) < 0.0;
}

ChainModel::ChainModel(int n, Coefficients coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  require_chain_size(n_);
  if (coeffs_.range() < 2) {
    throw Error(ErrorCode::precondition, "interaction range R must be at least 2");
  }
  if (n_ <= 2 * coeffs_.range()) {
    throw Error(ErrorCode::invalid_size, "chain size " + std::to_string(n_) +
                                             " must exceed twice the range " +
                                             std::to_string(coeffs_.range()));
  }
}

RegionMask RegionMask::block(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw Error(ErrorCode::size_mismatch, "block of " + std::to_string(k) +
                                              " sites does not fit a chain of " + std::to_string(n));
  }
  std::vector<bool> chi(static_cast<std::size_t>(n), false);
  const int start = (n - k) / 2;
  for (int l = start; l < start + k; ++l) chi[static_cast<std::size_t>(l)] = true;
  return RegionMask(std::move(chi));
}

RegionMask RegionMask::fraction(int n, double rho, std::uint64_t seed) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw Error(ErrorCode::domain, "mask fraction must lie in [0, 1]");
  const int count = static_cast<int>(std::lround(rho * n));
  std::vector<int> sites(static_cast<std::size_t>(n));
  std::iota(sites.begin(), sites.end(), 0);
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first `count` entries become the sample.
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(sites[static_cast<std::size_t>(i)], sites[static_cast<std::size_t>(j)]);
  }
  std::vector<bool> chi(static_cast<std::size_t>(n), false);
  for (int i = 0; i < count; ++i) chi[static_cast<std::size_t>(sites[static_cast<std::size_t>(i)])] = true;
  return RegionMask(std::move(chi));
}

int RegionMask::atomistic_count() const {
  return static_cast<int>(std::count(atomistic_.begin(), atomistic_.end(), true));
}

RegionMask RegionMask::rotated(int shift) const {
  const int n = size();
  std::vector<bool> out(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    const int src = ((l - shift) % n + n) % n;
    out[static_cast<std::size_t>(l)] = atomistic_[static_cast<std::size_t>(src)];
  }
  return RegionMask(std::move(out));
}

double potential_value(const Potential& pot, double r) {
  if (const auto* lj = std::get_if<LennardJones>(&pot)) {
    return lj->a * std::pow(r, -12.0) + lj->b * std::pow(r, -6.0);
  }
  const auto& m = std::get<Morse>(pot);
  const double s = std::exp(-m.alpha * (r - m.r0));
  return s * s - 2.0 * s;
}

double potential_second_derivative(const Potential& pot, double r) {
  if (const auto* lj = std::get_if<LennardJones>(&pot)) {
    return 156.0 * lj->a * std::pow(r, -14.0) + 42.0 * lj->b * std::pow(r, -8.0);
  }
  const auto& m = std::get<Morse>(pot);
  const double s = std::exp(-m.alpha * (r - m.r0));
  return m.alpha * m.alpha * (4.0 * s * s - 2.0 * s);
}

Coefficients coefficients_from_potential(const Potential& pot, double strain, int r_cut) {
  if (!(strain > 0.0)) throw Error(ErrorCode::domain, "macroscopic strain must be positive");
  if (r_cut < 2) throw Error(ErrorCode::precondition, "interaction range R must be at least 2");
  std::vector<double> phi2;
  for (int r = 1; r <= r_cut; ++r) phi2.push_back(potential_second_derivative(pot, r * strain));
  return Coefficients(std::move(phi2));
}

}  // namespace qcspectra
