#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "pgreen/covering.hpp"
#include "pgreen/disc_algebra.hpp"

namespace pgreen {

struct LiftSettings {
  double tolerance = 1e-11;    // local error per accepted step
  double initial_step = 1.0 / 16.0;
  double min_step = 1e-10;
  double obstruction = 1e-8;   // |B'(psi)| floor
  int newton_iterations = 4;
};

/// psi with B o psi = pi and psi(0) = 0, computed by continuation along
/// radial segments from the origin: psi' = pi' / B'(psi), integrated with
/// step-doubled RK4 and Newton-corrected onto B(psi) = pi after each step.
/// Degree-one B is inverted in closed form.
///
/// Evaluations are cached per ray. The cache is guarded by a mutex, so a
/// LiftedMap may be shared between threads.
class LiftedMap {
 public:
  LiftedMap(BlaschkeProduct base, CoveringMap covering,
            LiftSettings settings = {});

  const BlaschkeProduct& base() const noexcept { return base_; }
  const CoveringMap& covering() const noexcept { return covering_; }
  const LiftSettings& settings() const noexcept { return settings_; }

  Complex operator()(Complex lambda) const;
  /// |B(psi(lambda)) - pi(lambda)|.
  double residual(Complex lambda) const;
  /// Sup of the residual over `rays` x `samples` points of radius <= radius.
  double grid_residual(double radius, int rays, int samples) const;

 private:
  Complex integrate(Complex direction, double from, Complex start,
                    double to) const;
  Complex correct(Complex psi, Complex target) const;

  BlaschkeProduct base_;
  CoveringMap covering_;
  LiftSettings settings_;
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<double, double>, std::map<double, Complex>> rays;
  };
  std::unique_ptr<Cache> cache_;
};

LiftedMap lift(const BlaschkeProduct& b, const CoveringMap& pi,
               LiftSettings settings = {});

}  // namespace pgreen
