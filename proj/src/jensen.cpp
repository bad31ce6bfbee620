#include "pgreen/jensen.hpp"

#include <cmath>
#include <numbers>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

constexpr double kOnCircle = 1e-12;
constexpr double kNearCircle = 1e-8;

double circle_sum(const DiscMap& f, double r, int n, double offset, int stride,
                  int start) {
  double sum = 0.0;
  for (int j = start; j < n; j += stride) {
    const double theta = offset + 2.0 * std::numbers::pi * j / n;
    sum += std::log(std::abs(f.value(std::polar(r, theta))));
  }
  return sum;
}

}  // namespace

JensenMean jensen_mean(const DiscMap& f, double r,
                       const QuadratureSettings& settings) {
  if (!(r > 0.0 && r < 1.0))
    fail(ErrorCode::InvalidInput, "Jensen radius must lie in (0, 1)");
  if (settings.initial_nodes < 4 || settings.max_nodes < settings.initial_nodes)
    fail(ErrorCode::InvalidInput, "bad quadrature node settings");

  double offset = 0.0;
  for (const auto& z : f.scaled_zeros(r, 1.0 + 1e-6 / r)) {
    const double gap = r * std::abs(std::abs(z.value) - 1.0);
    if (gap <= kOnCircle)
      fail(ErrorCode::RadiusNudge,
           "a zero lies on the quadrature circle; perturb the radius");
    if (gap <= kNearCircle)
      offset = std::numbers::pi / settings.initial_nodes * 0.618033988749895;
  }

  JensenMean out;
  int n = settings.initial_nodes;
  double sum = circle_sum(f, r, n, offset, 1, 0);
  double mean = sum / n;
  while (n < settings.max_nodes) {
    // Doubling reuses the existing nodes: only the midpoints are new.
    const int doubled = 2 * n;
    sum += circle_sum(f, r, doubled, offset, 2, 1);
    const double next = sum / doubled;
    out.last_change = std::abs(next - mean);
    mean = next;
    n = doubled;
    if (out.last_change < settings.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.mean = mean;
  out.nodes = n;
  return out;
}

double JensenCertificate::zero_log_sum() const noexcept {
  double s = 0.0;
  for (const auto& z : interior_zeros) s += z.multiplicity * std::log(std::abs(z.value));
  return s;
}

double JensenCertificate::achieved() const noexcept {
  double p = 1.0;
  for (const auto& z : interior_zeros) p *= std::pow(std::abs(z.value), z.multiplicity);
  return p;
}

JensenCertificate jensen_certificate(const DiscMap& f, double r,
                                     double log_bound,
                                     const QuadratureSettings& settings) {
  const Complex center = f.value(0.0);
  if (std::abs(center) < 1e-300)
    fail(ErrorCode::InvalidBasepoint, "Jensen certificate needs f(0) != 0");

  JensenCertificate cert;
  cert.radius = r;
  cert.log_bound = log_bound;
  cert.log_abs_center = std::log(std::abs(center));

  const JensenMean m = jensen_mean(f, r, settings);
  cert.boundary_mean = m.mean;
  cert.nodes = m.nodes;
  cert.quadrature_converged = m.converged;
  cert.interior_zeros = f.scaled_zeros(r, 1.0);
  cert.identity_residual = std::abs(cert.lhs() - cert.zero_log_sum());
  return cert;
}

}  // namespace pgreen
