#include "pgreen/lift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pgreen/error.hpp"

namespace pgreen {

LiftedMap::LiftedMap(BlaschkeProduct base, CoveringMap covering,
                     LiftSettings settings)
    : base_(std::move(base)),
      covering_(std::move(covering)),
      settings_(settings),
      cache_(std::make_unique<Cache>()) {
  if (base_.degree() < 1)
    fail(ErrorCode::InvalidInput, "lift needs a nonconstant Blaschke product");
  if (std::abs(base_(0.0) - covering_.value(0.0)) > 1e-8)
    fail(ErrorCode::InvalidBasepoint, "lift requires B(0) = pi(0)");
}

LiftedMap lift(const BlaschkeProduct& b, const CoveringMap& pi,
               LiftSettings settings) {
  return LiftedMap(b, pi, settings);
}

Complex LiftedMap::correct(Complex psi, Complex target) const {
  for (int it = 0; it < settings_.newton_iterations; ++it) {
    const Complex d = base_.derivative(psi);
    if (std::abs(d) < settings_.obstruction) break;
    const Complex step = (base_(psi) - target) / d;
    psi -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return psi;
}

Complex LiftedMap::integrate(Complex direction, double from, Complex start,
                             double to) const {
  auto rhs = [&](double t, Complex psi) {
    const Complex d = base_.derivative(psi);
    if (std::abs(d) < settings_.obstruction) {
      std::ostringstream os;
      os << "lifting obstruction: |B'(psi)| = " << std::abs(d)
         << " at radius " << t << "; rerun decritalize with a larger delta";
      fail(ErrorCode::LiftingObstruction, os.str());
    }
    return direction * covering_.derivative(t * direction) / d;
  };
  auto rk4 = [&](double t, Complex psi, double h) {
    const Complex k1 = rhs(t, psi);
    const Complex k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
    const Complex k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
    const Complex k4 = rhs(t + h, psi + h * k3);
    return psi + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  double t = from;
  Complex psi = start;
  double h = std::min(settings_.initial_step, to - from);
  while (t < to) {
    h = std::min(h, to - t);
    const Complex full = rk4(t, psi, h);
    const Complex half = rk4(t + 0.5 * h, rk4(t, psi, 0.5 * h), 0.5 * h);
    const double err = std::abs(full - half) / 15.0;
    if (err <= settings_.tolerance || h <= settings_.min_step) {
      if (err > settings_.tolerance)
        fail(ErrorCode::LiftingObstruction, "lift step size underflow");
      t = (to - t - h) <= 0.0 ? to : t + h;
      psi = correct(half + (half - full) / 15.0, covering_.value(t * direction));
      if (!(std::abs(psi) < 1.0))
        fail(ErrorCode::LiftingObstruction, "lift left the unit disc");
      const double grow = err > 0.0 ? 0.9 * std::pow(settings_.tolerance / err, 0.2) : 4.0;
      h *= std::clamp(grow, 0.2, 4.0);
    } else {
      h *= std::clamp(0.9 * std::pow(settings_.tolerance / err, 0.2), 0.1, 0.5);
    }
  }
  return psi;
}

Complex LiftedMap::operator()(Complex lambda) const {
  if (base_.degree() == 1) {
    // B = phase * (z - psi) / (1 - conj(z) psi) is an involution up to phase.
    const Complex z = base_.zeros().front().point.value();
    const Complex w = covering_.value(lambda) / base_.phase();
    return (z - w) / (1.0 - std::conj(z) * w);
  }
  const double radius = std::abs(lambda);
  if (radius == 0.0) return 0.0;
  const Complex direction = lambda / radius;
  const std::pair<double, double> key{direction.real(), direction.imag()};

  double from = 0.0;
  Complex start = 0.0;
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& ray = cache_->rays[key];
    auto it = ray.upper_bound(radius);
    if (it != ray.begin()) {
      --it;
      from = it->first;
      start = it->second;
    }
  }
  if (from == radius) return start;
  const Complex psi = integrate(direction, from, start, radius);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->rays[key][radius] = psi;
  return psi;
}

double LiftedMap::residual(Complex lambda) const {
  return std::abs(base_((*this)(lambda)) - covering_.value(lambda));
}

double LiftedMap::grid_residual(double radius, int rays, int samples) const {
  double worst = 0.0;
  for (int k = 0; k < rays; ++k) {
    const Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * k / rays);
    for (int j = 1; j <= samples; ++j)
      worst = std::max(worst, residual(dir * (radius * j / samples)));
  }
  return worst;
}

}  // namespace pgreen
