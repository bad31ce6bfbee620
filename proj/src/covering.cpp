#include "pgreen/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex translate(Complex q, Complex u) {
  return (u + q) / (1.0 + std::conj(q) * u);
}

Complex translate_derivative(Complex q, Complex u) {
  const Complex den = 1.0 + std::conj(q) * u;
  return (1.0 - std::norm(q)) / (den * den);
}

Complex untranslate(Complex q, Complex w) {
  return (w - q) / (1.0 - std::conj(q) * w);
}

// Cayley map E -> right half-plane and back.
Complex to_half_plane(Complex u) { return (1.0 + u) / (1.0 - u); }
Complex from_half_plane(Complex s) { return (s - 1.0) / (s + 1.0); }

}  // namespace

Complex punctured_cover(Complex u) { return std::exp(-to_half_plane(u)); }

CoveringMap covering_map(std::span<const Complex> punctures, Complex basepoint,
                         int branch) {
  if (!(std::abs(basepoint) < 1.0))
    fail(ErrorCode::InvalidBasepoint, "covering basepoint must lie in E");
  if (punctures.size() >= 2)
    fail(ErrorCode::UnsupportedCovering,
         "coverings of the disc minus two or more points are not supported; "
         "use the optimizer fallback");
  if (branch < 0) fail(ErrorCode::InvalidInput, "branch index must be >= 0");

  CoveringMap pi;
  pi.basepoint_ = basepoint;
  pi.branch_ = branch;
  if (punctures.empty()) {
    pi.kind_ = CoveringMap::Kind::FullDisc;
    return pi;
  }

  const Complex p = DiscPoint(punctures[0]).value();
  const Complex target = untranslate(p, basepoint);
  if (std::abs(target) < 1e-300)
    fail(ErrorCode::InvalidBasepoint, "basepoint coincides with the puncture");

  // pi0(mu) = target  <=>  Cayley(mu) = -log|target| - i (arg target + 2 pi k).
  // Along that vertical line |mu| grows with |arg target + 2 pi k|.
  const double arg = std::arg(target);
  std::vector<int> ks;
  for (int k = -branch - 2; k <= branch + 2; ++k) ks.push_back(k);
  std::stable_sort(ks.begin(), ks.end(), [&](int a, int b) {
    return std::abs(arg + kTwoPi * a) < std::abs(arg + kTwoPi * b);
  });
  const int k = ks[static_cast<size_t>(branch)];
  const Complex s(-std::log(std::abs(target)), -(arg + kTwoPi * k));

  pi.kind_ = CoveringMap::Kind::PuncturedDisc;
  pi.puncture_ = p;
  pi.mu_ = from_half_plane(s);
  return pi;
}

std::optional<Complex> CoveringMap::singular_point() const {
  if (kind_ == Kind::FullDisc) return std::nullopt;
  return untranslate(mu_, 1.0);
}

Complex CoveringMap::value(Complex lambda) const {
  if (kind_ == Kind::FullDisc) return translate(basepoint_, lambda);
  return translate(*puncture_, punctured_cover(translate(mu_, lambda)));
}

Complex CoveringMap::derivative(Complex lambda) const {
  if (kind_ == Kind::FullDisc) return translate_derivative(basepoint_, lambda);
  const Complex u = translate(mu_, lambda);
  const Complex w = punctured_cover(u);
  const Complex dw = w * (-2.0 / ((1.0 - u) * (1.0 - u)));
  return translate_derivative(*puncture_, w) * dw * translate_derivative(mu_, lambda);
}

double CoveringMap::log_puncture_distance(Complex lambda) const {
  if (kind_ == Kind::FullDisc)
    fail(ErrorCode::InvalidInput, "the full-disc covering has no puncture");
  // T_p(w) - p = w (1 - |p|^2) / (1 + conj(p) w) with w = pi0(u).
  const Complex u = translate(mu_, lambda);
  const double log_w = -((1.0 + u) / (1.0 - u)).real();
  const Complex w = punctured_cover(u);
  const Complex p = *puncture_;
  return log_w + std::log1p(-std::norm(p)) - std::log(std::abs(1.0 + std::conj(p) * w));
}

std::vector<Root> CoveringMap::scaled_zeros(double r, double cutoff) const {
  std::vector<Root> out;
  const double limit = r * cutoff;
  if (kind_ == Kind::FullDisc) {
    const Complex z = -basepoint_;
    if (std::abs(z) < limit) out.push_back({z / r, 1});
    return out;
  }
  if (limit >= 1.0)
    fail(ErrorCode::InvalidInput, "punctured covering has infinitely many zeros in E");

  // Zeros: pi0(u) = -p, i.e. Cayley(u) = x - i (arg(-p) + 2 pi k), pulled
  // back by T_mu. In the half-plane model the pseudo-hyperbolic distance to
  // Cayley(mu) = a + i b is sqrt((alpha + t^2) / (beta + t^2)) with
  // t = y_k + b, so |lambda_k| < limit is an explicit range of k.
  const Complex minus_p = -*puncture_;
  const double x = -std::log(std::abs(minus_p));
  const double arg = std::arg(minus_p);
  const Complex s_mu = to_half_plane(mu_);
  const double alpha = (x - s_mu.real()) * (x - s_mu.real());
  const double beta = (x + s_mu.real()) * (x + s_mu.real());
  const double l2 = limit * limit;
  const double t2 = (l2 * beta - alpha) / (1.0 - l2);
  if (t2 < 0.0) return out;
  const double t_max = std::sqrt(t2) + 1e-9;
  const double shift = arg + s_mu.imag();
  const long k_lo = static_cast<long>(std::ceil((-t_max - shift) / kTwoPi));
  const long k_hi = static_cast<long>(std::floor((t_max - shift) / kTwoPi));
  for (long k = k_lo; k <= k_hi; ++k) {
    const Complex s(x, -(arg + kTwoPi * static_cast<double>(k)));
    const Complex z = untranslate(mu_, from_half_plane(s));
    if (std::abs(z) < limit) out.push_back({z / r, 1});
  }
  return out;
}

}  // namespace pgreen
