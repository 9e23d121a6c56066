#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qcspectra {

/// Second derivatives phi''_{rF} of the pair potential at the neighbour
/// distances rF, r = 1..R.
class Coefficients {
 public:
  Coefficients() = default;
  explicit Coefficients(std::vector<double> phi2);

  int range() const { return static_cast<int>(phi2_.size()); }
  /// phi''_{rF}, 1-based.
  double phi(int r) const { return phi2_.at(static_cast<std::size_t>(r - 1)); }
  const std::vector<double>& values() const { return phi2_; }
  /// W''_F = sum_r r^2 phi''_{rF}.
  double w2() const { return w2_; }

  /// phi''_{rF} <= 0 for r >= 2 and phi''_{RF} < 0.
  bool has_nonpositive_tail() const;

 private:
  std::vector<double> phi2_;
  double w2_ = 0.0;
};

/// Periodic chain of N atoms with interaction range R, linearized about the
/// homogeneous strain that produced the coefficients.
class ChainModel {
 public:
  ChainModel(int n, Coefficients coeffs);
  ChainModel(int n, std::vector<double> phi2) : ChainModel(n, Coefficients(std::move(phi2))) {}

  int n() const { return n_; }
  int r_cut() const { return coeffs_.range(); }
  double phi(int r) const { return coeffs_.phi(r); }
  double w2() const { return coeffs_.w2(); }
  const Coefficients& coefficients() const { return coeffs_; }

  ChainModel with_size(int n) const { return ChainModel(n, coeffs_); }

 private:
  int n_;
  Coefficients coeffs_;
};

/// Atomistic indicator chi_l; sites with chi_l = false form the continuum region.
class RegionMask {
 public:
  RegionMask() = default;
  explicit RegionMask(std::vector<bool> atomistic) : atomistic_(std::move(atomistic)) {}

  static RegionMask all_atomistic(int n) { return RegionMask(std::vector<bool>(static_cast<std::size_t>(n), true)); }
  static RegionMask empty(int n) { return RegionMask(std::vector<bool>(static_cast<std::size_t>(n), false)); }
  /// Contiguous block of k atomistic sites centred in the chain.
  static RegionMask block(int n, int k);
  /// round(rho * n) atomistic sites drawn uniformly without replacement.
  static RegionMask fraction(int n, double rho, std::uint64_t seed);

  int size() const { return static_cast<int>(atomistic_.size()); }
  bool operator[](int l) const { return atomistic_[static_cast<std::size_t>(l)]; }
  int atomistic_count() const;
  const std::vector<bool>& values() const { return atomistic_; }

  /// Mask shifted cyclically: result[l] = (*this)[l - shift].
  RegionMask rotated(int shift) const;

  friend bool operator==(const RegionMask&, const RegionMask&) = default;

 private:
  std::vector<bool> atomistic_;
};

struct LennardJones {
  double a = 1.0;
  double b = -2.0;
};

struct Morse {
  double alpha = 4.0;
  double r0 = 1.0;
};

using Potential = std::variant<LennardJones, Morse>;

double potential_value(const Potential& pot, double r);
double potential_second_derivative(const Potential& pot, double r);

/// phi''(r F) for r = 1..R from the closed-form second derivative.
Coefficients coefficients_from_potential(const Potential& pot, double strain, int r_cut);

}  // namespace qcspectra
