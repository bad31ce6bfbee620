#pragma once

#include <span>
#include <vector>

#include "pgreen/polynomial.hpp"

namespace pgreen {

/// A point of the open unit disc. Construction rejects |value| >= 1 - 1e-12.
class DiscPoint {
 public:
  static constexpr double kBoundaryGuard = 1e-12;

  explicit DiscPoint(Complex value);
  Complex value() const noexcept { return value_; }
  operator Complex() const noexcept { return value_; }

 private:
  Complex value_;
};

/// Holomorphic self-map of the unit disc whose zeros can be enumerated
/// inside any smaller concentric disc. Implemented by finite Blaschke
/// products and by the covering maps of the (punctured) disc.
class DiscMap {
 public:
  virtual ~DiscMap() = default;
  virtual Complex value(Complex lambda) const = 0;
  virtual Complex derivative(Complex lambda) const = 0;
  /// Roots of lambda -> f(r * lambda), all of them (not only those in E),
  /// for which |r * lambda| stays below `r * cutoff`.
  virtual std::vector<Root> scaled_zeros(double r, double cutoff) const = 0;
};

/// lambda -> phase * (center - lambda) / (1 - conj(center) * lambda).
class MobiusAut {
 public:
  MobiusAut(DiscPoint center, Complex phase = 1.0);
  /// The automorphism lambda -> (lambda + p) / (1 + conj(p) lambda), which
  /// sends 0 to p and is the identity for p = 0.
  static MobiusAut translation(Complex p);

  Complex center() const noexcept { return center_; }
  Complex phase() const noexcept { return phase_; }
  Complex operator()(Complex lambda) const;
  Complex derivative(Complex lambda) const;
  MobiusAut inverse() const;

 private:
  Complex center_;
  Complex phase_;
};

Complex mobius_eval(const MobiusAut& m, Complex lambda);

struct BlaschkeZero {
  DiscPoint point;
  int multiplicity = 1;
};

class BlaschkeProduct final : public DiscMap {
 public:
  BlaschkeProduct() = default;
  BlaschkeProduct(std::vector<BlaschkeZero> zeros, Complex phase = 1.0);
  /// Equal points are merged into one zero with the summed multiplicity.
  static BlaschkeProduct from_points(std::span<const Complex> points,
                                     Complex phase = 1.0);

  const std::vector<BlaschkeZero>& zeros() const noexcept { return zeros_; }
  Complex phase() const noexcept { return phase_; }
  int degree() const noexcept;
  /// Zeros expanded by multiplicity.
  std::vector<Complex> zero_list() const;

  Complex operator()(Complex lambda) const;
  Complex value(Complex lambda) const override { return (*this)(lambda); }
  Complex derivative(Complex lambda) const override;
  std::vector<Root> scaled_zeros(double r, double cutoff) const override;

  /// phase * prod (z_j - lambda)^{m_j}
  Polynomial numerator() const;
  /// prod (1 - conj(z_j) lambda)^{m_j}
  Polynomial denominator() const;

 private:
  std::vector<BlaschkeZero> zeros_;
  Complex phase_{1.0, 0.0};
};

/// Checked evaluation; requires |lambda| <= 1.
Complex blaschke_eval(const BlaschkeProduct& b, Complex lambda);
Complex blaschke_derivative(const BlaschkeProduct& b, Complex lambda);

struct CriticalData {
  std::vector<Complex> points;
  std::vector<Complex> values;
  std::vector<int> orders;
};

/// Interior critical points of b (roots of the numerator of b').
CriticalData critical_data(const BlaschkeProduct& b,
                           double boundary_tol = 1e-9);

/// (B - B(0)) / (1 - conj(B(0)) B): vanishes at 0, same critical points.
BlaschkeProduct recenter(const BlaschkeProduct& b);

/// Inverse of recenter for a prescribed value c = B(0):
/// (c + B~) / (1 + conj(c) B~).
BlaschkeProduct uncenter(const BlaschkeProduct& centered, Complex c);

struct PerturbedPoints {
  std::vector<Complex> points;  // one entry per unit of multiplicity
  double delta_used = 0.0;
};

/// Splits every multiple point into simple ones: the original location is
/// kept once and the remaining copies move to distance delta around it.
/// Delta shrinks when a moved point would leave the disc.
PerturbedPoints split_multiple_points(std::span<const Complex> points,
                                      std::span<const int> multiplicities,
                                      double delta);

struct PerturbResult {
  BlaschkeProduct product;
  double delta_used = 0.0;
};

PerturbResult perturb_to_simple(const BlaschkeProduct& centered, double delta);

struct DecritalizeResult {
  BlaschkeProduct product;
  bool changed = false;
  double delta_used = 0.0;
  double max_zero_shift = 0.0;
  /// min |B^'| over the solutions of B^(lambda) = B^(0).
  double separation = 0.0;
};

/// B^ with B^(0) = B(0) and B^(0) not a critical value of B^.
DecritalizeResult decritalize(const BlaschkeProduct& b, double delta = 1e-6);

/// Largest distance in an optimal-by-greedy matching of two multisets.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

}  // namespace pgreen
