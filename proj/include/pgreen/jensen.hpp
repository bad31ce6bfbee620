#pragma once

#include <vector>

#include "pgreen/disc_algebra.hpp"

namespace pgreen {

struct QuadratureSettings {
  int initial_nodes = 256;
  int max_nodes = 1 << 16;
  double tolerance = 1e-9;
};

struct JensenMean {
  double mean = 0.0;
  int nodes = 0;
  double last_change = 0.0;
  bool converged = false;
};

/// Trapezoid mean of log|f| on the circle of radius r; the node count
/// doubles until successive values agree to `settings.tolerance`.
JensenMean jensen_mean(const DiscMap& f, double r,
                       const QuadratureSettings& settings = {});

struct JensenCertificate {
  double radius = 0.0;
  double log_abs_center = 0.0;  // log|f(0)|
  double boundary_mean = 0.0;
  std::vector<Root> interior_zeros;  // roots of f(r lambda) in E
  double log_bound = 0.0;
  double identity_residual = 0.0;
  int nodes = 0;
  bool quadrature_converged = false;

  /// log|f(0)| - boundary mean.
  double lhs() const noexcept { return log_abs_center - boundary_mean; }
  double zero_log_sum() const noexcept;
  double achieved() const noexcept;
  bool valid() const noexcept { return lhs() < log_bound; }
  bool consistent(double tol = 1e-7) const noexcept {
    return quadrature_converged && identity_residual <= tol;
  }
};

JensenCertificate jensen_certificate(const DiscMap& f, double r,
                                     double log_bound,
                                     const QuadratureSettings& settings = {});

}  // namespace pgreen
