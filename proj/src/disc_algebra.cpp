#include "pgreen/disc_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

constexpr double kDenominatorFloor = 1e-300;
constexpr double kClosedDiscSlack = 1e-12;

Complex unit(Complex z) {
  const double a = std::abs(z);
  if (a == 0.0) fail(ErrorCode::DegenerateInput, "phase has zero modulus");
  return z / a;
}

void require_closed_disc(Complex lambda) {
  if (std::abs(lambda) > 1.0 + kClosedDiscSlack) {
    std::ostringstream os;
    os << "point " << lambda << " lies outside the closed unit disc";
    fail(ErrorCode::InvalidInput, os.str());
  }
}

Complex factor(Complex z, Complex lambda) {
  const Complex den = 1.0 - std::conj(z) * lambda;
  if (std::abs(den) < kDenominatorFloor)
    fail(ErrorCode::DegenerateInput, "Blaschke factor denominator vanished");
  return (z - lambda) / den;
}

Complex factor_derivative(Complex z, Complex lambda) {
  const Complex den = 1.0 - std::conj(z) * lambda;
  return (std::norm(z) - 1.0) / (den * den);
}

}  // namespace

DiscPoint::DiscPoint(Complex value) : value_(value) {
  if (!(std::abs(value) < 1.0 - kBoundaryGuard)) {
    std::ostringstream os;
    os << "disc point " << value << " is not strictly inside the unit disc";
    fail(ErrorCode::InvalidInput, os.str());
  }
}

MobiusAut::MobiusAut(DiscPoint center, Complex phase)
    : center_(center.value()), phase_(phase) {
  if (std::abs(std::abs(phase) - 1.0) > 1e-12)
    fail(ErrorCode::InvalidInput, "Mobius phase must be unimodular");
}

MobiusAut MobiusAut::translation(Complex p) {
  return MobiusAut(DiscPoint(-p), Complex(-1.0, 0.0));
}

Complex MobiusAut::operator()(Complex lambda) const {
  const Complex den = 1.0 - std::conj(center_) * lambda;
  if (std::abs(den) < kDenominatorFloor)
    fail(ErrorCode::DegenerateInput, "Mobius denominator vanished");
  return phase_ * (center_ - lambda) / den;
}

Complex MobiusAut::derivative(Complex lambda) const {
  const Complex den = 1.0 - std::conj(center_) * lambda;
  return phase_ * (std::norm(center_) - 1.0) / (den * den);
}

MobiusAut MobiusAut::inverse() const {
  return MobiusAut(DiscPoint(center_ * phase_), std::conj(phase_));
}

Complex mobius_eval(const MobiusAut& m, Complex lambda) {
  require_closed_disc(lambda);
  return m(lambda);
}

BlaschkeProduct::BlaschkeProduct(std::vector<BlaschkeZero> zeros, Complex phase)
    : zeros_(std::move(zeros)), phase_(phase) {
  if (std::abs(std::abs(phase) - 1.0) > 1e-12)
    fail(ErrorCode::InvalidInput, "Blaschke phase must be unimodular");
  for (const auto& z : zeros_)
    if (z.multiplicity < 1)
      fail(ErrorCode::InvalidInput, "Blaschke multiplicities must be >= 1");
}

BlaschkeProduct BlaschkeProduct::from_points(std::span<const Complex> points,
                                             Complex phase) {
  std::vector<BlaschkeZero> zeros;
  for (const auto& p : points) {
    auto it = std::find_if(zeros.begin(), zeros.end(), [&](const auto& z) {
      return z.point.value() == p;
    });
    if (it != zeros.end()) {
      ++it->multiplicity;
    } else {
      zeros.push_back({DiscPoint(p), 1});
    }
  }
  return BlaschkeProduct(std::move(zeros), phase);
}

int BlaschkeProduct::degree() const noexcept {
  int d = 0;
  for (const auto& z : zeros_) d += z.multiplicity;
  return d;
}

std::vector<Complex> BlaschkeProduct::zero_list() const {
  std::vector<Complex> out;
  for (const auto& z : zeros_)
    for (int k = 0; k < z.multiplicity; ++k) out.push_back(z.point.value());
  return out;
}

Complex BlaschkeProduct::operator()(Complex lambda) const {
  Complex acc = phase_;
  for (const auto& z : zeros_) {
    const Complex f = factor(z.point.value(), lambda);
    for (int k = 0; k < z.multiplicity; ++k) acc *= f;
  }
  return acc;
}

Complex BlaschkeProduct::derivative(Complex lambda) const {
  if (zeros_.empty()) return {};
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& z : zeros_)
    nearest = std::min(nearest, std::abs(z.point.value() - lambda));

  if (nearest > 1e-8) {
    Complex log_derivative{};
    for (const auto& z : zeros_) {
      const Complex zz = z.point.value();
      log_derivative += static_cast<double>(z.multiplicity) *
                        (std::norm(zz) - 1.0) /
                        ((zz - lambda) * (1.0 - std::conj(zz) * lambda));
    }
    return (*this)(lambda)*log_derivative;
  }

  // Near a zero the logarithmic form divides by ~0; use the product rule.
  Complex total{};
  for (size_t j = 0; j < zeros_.size(); ++j) {
    const Complex zj = zeros_[j].point.value();
    const int mj = zeros_[j].multiplicity;
    Complex term = static_cast<double>(mj) * factor_derivative(zj, lambda) *
                   std::pow(factor(zj, lambda), mj - 1);
    for (size_t k = 0; k < zeros_.size(); ++k) {
      if (k == j) continue;
      term *= std::pow(factor(zeros_[k].point.value(), lambda),
                       zeros_[k].multiplicity);
    }
    total += term;
  }
  return phase_ * total;
}

Polynomial BlaschkeProduct::numerator() const {
  Polynomial p = Polynomial::constant(phase_);
  for (const auto& z : zeros_)
    for (int k = 0; k < z.multiplicity; ++k)
      p = p * Polynomial::linear_factor(z.point.value(), /*negate=*/true);
  return p;
}

Polynomial BlaschkeProduct::denominator() const {
  Polynomial q = Polynomial::constant(1.0);
  for (const auto& z : zeros_)
    for (int k = 0; k < z.multiplicity; ++k)
      q = q * Polynomial({Complex(1.0, 0.0), -std::conj(z.point.value())});
  return q;
}

std::vector<Root> BlaschkeProduct::scaled_zeros(double r, double cutoff) const {
  std::vector<Root> out;
  for (const auto& root : find_roots(numerator().compose_scale(r)))
    if (std::abs(root.value) < cutoff) out.push_back(root);
  return out;
}

Complex blaschke_eval(const BlaschkeProduct& b, Complex lambda) {
  require_closed_disc(lambda);
  return b(lambda);
}

Complex blaschke_derivative(const BlaschkeProduct& b, Complex lambda) {
  require_closed_disc(lambda);
  return b.derivative(lambda);
}

CriticalData critical_data(const BlaschkeProduct& b, double boundary_tol) {
  CriticalData out;
  const int n = b.degree();
  if (n <= 1) return out;
  const Polynomial p = b.numerator();
  const Polynomial q = b.denominator();
  Polynomial w = p.derivative() * q - p * q.derivative();
  // The degree 2n-1 terms cancel identically; drop the rounding residue.
  auto coeffs = w.coefficients();
  std::vector<Complex> kept(coeffs.begin(),
                            coeffs.begin() + std::min<long>(2L * n - 1,
                                                            static_cast<long>(coeffs.size())));
  for (const auto& root : find_roots(Polynomial(std::move(kept)))) {
    if (std::abs(root.value) < 1.0 - boundary_tol) {
      out.points.push_back(root.value);
      out.values.push_back(b(root.value));
      out.orders.push_back(root.multiplicity);
    }
  }
  return out;
}

namespace {

// Zeros of `numerator` with the phase chosen so that the product matches
// `reference` at lambda = 1, a boundary point where every factor has
// modulus one.
BlaschkeProduct product_from_numerator(const Polynomial& numerator,
                                       Complex reference_at_one,
                                       bool snap_origin) {
  std::vector<BlaschkeZero> zeros;
  auto roots = find_roots(numerator);
  if (snap_origin && !roots.empty()) {
    auto nearest = std::min_element(roots.begin(), roots.end(),
                                    [](const Root& a, const Root& b) {
                                      return std::abs(a.value) < std::abs(b.value);
                                    });
    if (std::abs(nearest->value) <= 1e-12) nearest->value = 0.0;
  }
  for (const auto& r : roots) zeros.push_back({DiscPoint(r.value), r.multiplicity});
  BlaschkeProduct unit_phase(zeros, 1.0);
  const Complex phase = unit(reference_at_one / unit_phase(1.0));
  return BlaschkeProduct(std::move(zeros), phase);
}

}  // namespace

BlaschkeProduct recenter(const BlaschkeProduct& b) {
  const Complex c = b(0.0);
  if (!(std::abs(c) < 1.0))
    fail(ErrorCode::InvalidInput, "recenter requires |B(0)| < 1");
  if (b.degree() == 0) fail(ErrorCode::InvalidInput, "recenter of a constant");
  const Polynomial numer = b.numerator() - b.denominator() * c;
  const Complex b1 = b(1.0);
  const Complex at_one = (b1 - c) / (1.0 - std::conj(c) * b1);
  return product_from_numerator(numer, at_one, /*snap_origin=*/true);
}

BlaschkeProduct uncenter(const BlaschkeProduct& centered, Complex c) {
  if (!(std::abs(c) < 1.0))
    fail(ErrorCode::InvalidInput, "uncenter requires |c| < 1");
  const Polynomial numer = centered.numerator() + centered.denominator() * c;
  const Complex t1 = centered(1.0);
  const Complex at_one = (c + t1) / (1.0 + std::conj(c) * t1);
  return product_from_numerator(numer, at_one, /*snap_origin=*/false);
}

PerturbedPoints split_multiple_points(std::span<const Complex> points,
                                      std::span<const int> multiplicities,
                                      double delta) {
  if (!(delta > 0.0)) fail(ErrorCode::InvalidInput, "delta must be positive");
  if (points.size() != multiplicities.size())
    fail(ErrorCode::InvalidInput, "points/multiplicities size mismatch");

  double used = delta;
  for (size_t i = 0; i < points.size(); ++i) {
    if (multiplicities[i] > 1) {
      const double room = 1.0 - DiscPoint::kBoundaryGuard - std::abs(points[i]);
      used = std::min(used, 0.5 * room);
    }
  }

  PerturbedPoints out;
  out.delta_used = used;
  for (size_t i = 0; i < points.size(); ++i) out.points.push_back(points[i]);

  for (size_t i = 0; i < points.size(); ++i) {
    const int m = multiplicities[i];
    if (m <= 1) continue;
    std::vector<Complex> moved;
    for (int attempt = 0; attempt < 16; ++attempt) {
      moved.clear();
      const double offset = 0.7 * attempt;
      for (int k = 1; k < m; ++k) {
        const double angle = offset + 2.0 * std::numbers::pi * (k - 1) / (m - 1);
        moved.push_back(points[i] + used * std::polar(1.0, angle));
      }
      bool clear = true;
      for (const auto& z : moved)
        for (const auto& other : out.points)
          if (std::abs(z - other) < 0.5 * used) clear = false;
      if (clear) break;
    }
    out.points.insert(out.points.end(), moved.begin(), moved.end());
  }
  return out;
}

PerturbResult perturb_to_simple(const BlaschkeProduct& centered, double delta) {
  if (std::abs(centered(0.0)) > 1e-12)
    fail(ErrorCode::InvalidInput, "perturb_to_simple expects B(0) = 0");
  bool simple = true;
  for (const auto& z : centered.zeros())
    if (z.multiplicity > 1) simple = false;
  if (simple) return {centered, 0.0};

  std::vector<Complex> pts;
  std::vector<int> mults;
  for (const auto& z : centered.zeros()) {
    pts.push_back(z.point.value());
    mults.push_back(z.multiplicity);
  }
  auto split = split_multiple_points(pts, mults, delta);
  return {BlaschkeProduct::from_points(split.points, centered.phase()),
          split.delta_used};
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  while (!a.empty()) {
    size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        if (std::abs(a[i] - b[j]) < best) {
          best = std::abs(a[i] - b[j]);
          bi = i;
          bj = j;
        }
    worst = std::max(worst, best);
    a.erase(a.begin() + static_cast<long>(bi));
    b.erase(b.begin() + static_cast<long>(bj));
  }
  return worst;
}

namespace {

double level_set_separation(const BlaschkeProduct& b, bool& all_simple) {
  const BlaschkeProduct centered = recenter(b);
  all_simple = true;
  double sep = std::numeric_limits<double>::infinity();
  for (const auto& z : centered.zeros()) {
    if (z.multiplicity > 1) all_simple = false;
    sep = std::min(sep, std::abs(b.derivative(z.point.value())));
  }
  return sep;
}

}  // namespace

DecritalizeResult decritalize(const BlaschkeProduct& b, double delta) {
  DecritalizeResult out{b, false, 0.0, 0.0, 0.0};
  if (b.degree() <= 1) {
    out.separation = b.degree() == 1 ? std::abs(b.derivative(0.0)) : 0.0;
    return out;
  }
  const Complex c = b(0.0);
  const BlaschkeProduct centered = recenter(b);
  bool simple = true;
  for (const auto& z : centered.zeros())
    if (z.multiplicity > 1) simple = false;
  if (simple) {
    bool dummy = true;
    out.separation = level_set_separation(b, dummy);
    if (out.separation >= 1e-8) return out;
  }

  double trial = delta;
  for (int attempt = 0; attempt <= 8; ++attempt, trial *= 0.5) {
    PerturbResult perturbed = perturb_to_simple(centered, trial);
    BlaschkeProduct candidate = uncenter(perturbed.product, c);
    if (std::abs(candidate(0.0) - c) > 1e-10) continue;
    bool all_simple = true;
    const double sep = level_set_separation(candidate, all_simple);
    const double shift = multiset_distance(b.zero_list(), candidate.zero_list());
    if (all_simple && sep >= 1e-8 && shift <= delta) {
      out.product = std::move(candidate);
      out.changed = true;
      out.delta_used = perturbed.delta_used;
      out.max_zero_shift = shift;
      out.separation = sep;
      return out;
    }
  }
  fail(ErrorCode::PerturbationFailure,
       "decritalize could not separate B(0) from the critical values");
}

}  // namespace pgreen
