#include "pgreen/analytic_disc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pgreen/error.hpp"

namespace pgreen {

AnalyticDisc::AnalyticDisc(std::vector<Polynomial> coordinates,
                           Frame frame)
    : coords_(std::move(coordinates)), frame_(std::move(frame)) {
  if (coords_.empty()) fail(ErrorCode::InvalidInput, "disc needs at least one coordinate");
  size_t covered = 0;
  for (const auto& f : frame_) {
    double bb = 0.0;
    for (const auto& b : f.base) bb += std::norm(b);
    if (!(f.radius > 0.0) || f.dimension() == 0 || f.base.size() != f.center.size() || !(bb < 1.0))
      fail(ErrorCode::InvalidInput, "invalid disc frame block");
    covered += f.center.size();
  }
  if (!frame_.empty() && covered != coords_.size())
    fail(ErrorCode::InvalidInput, "disc frame size does not match its dimension");
}

AnalyticDisc AnalyticDisc::constant(std::span<const Complex> z) {
  std::vector<Polynomial> coords;
  for (const auto& v : z) coords.push_back(Polynomial::constant(v));
  return AnalyticDisc(std::move(coords));
}

int AnalyticDisc::degree() const noexcept {
  int d = 0;
  for (const auto& c : coords_) d = std::max(d, c.degree());
  return d;
}

Point AnalyticDisc::inner(Complex lambda) const {
  Point out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c(lambda));
  return out;
}

Point AnalyticDisc::operator()(Complex lambda) const {
  Point out = inner(lambda);
  size_t offset = 0;
  for (const auto& f : frame_) {
    const Point v = f.forward(std::span<const Complex>(out).subspan(offset, f.center.size()));
    std::copy(v.begin(), v.end(), out.begin() + offset);
    offset += v.size();
  }
  return out;
}

Point AnalyticDisc::to_inner(std::span<const Complex> z) const {
  if (z.size() != coords_.size())
    fail(ErrorCode::DimensionMismatch, "point dimension does not match the disc");
  Point out(z.begin(), z.end());
  size_t offset = 0;
  for (const auto& f : frame_) {
    const Point v = f.inverse(std::span<const Complex>(out).subspan(offset, f.center.size()));
    std::copy(v.begin(), v.end(), out.begin() + offset);
    offset += v.size();
  }
  return out;
}

AnalyticDisc AnalyticDisc::precompose_scale(Complex factor) const {
  std::vector<Polynomial> coords;
  for (const auto& c : coords_) coords.push_back(c.compose_scale(factor));
  return AnalyticDisc(std::move(coords), frame_);
}

Point eval_disc(const AnalyticDisc& phi, Complex lambda) {
  if (std::abs(lambda) > 1.0 + 1e-12)
    fail(ErrorCode::InvalidInput, "disc evaluation outside the closed unit disc");
  return phi(lambda);
}

RangeCertificate boundary_margin(const AnalyticDisc& phi, const Domain& d,
                                 int grid) {
  if (phi.dimension() != d.dimension())
    fail(ErrorCode::DimensionMismatch, "disc and domain dimensions differ");
  RangeCertificate out{std::numeric_limits<double>::infinity(), {}, grid};
  for (int k = 0; k < grid; ++k) {
    const Complex lambda = std::polar(1.0, 2.0 * std::numbers::pi * k / grid);
    double m = d.margin(phi(lambda));
    if (phi.framed()) {
      const Point u = phi.inner(lambda);
      size_t offset = 0;
      for (const auto& f : phi.frame()) {
        double uu = 0.0;
        for (size_t j = 0; j < f.center.size(); ++j) uu += std::norm(u[offset + j]);
        m = std::min(m, 1.0 - std::sqrt(uu));
        offset += f.center.size();
      }
    }
    if (m < out.margin) {
      out.margin = m;
      out.worst_point = lambda;
    }
  }
  return out;
}

RangeCertificate certify_range(const AnalyticDisc& phi, const Domain& d,
                               int grid) {
  if (grid < 64) fail(ErrorCode::InvalidInput, "range certificate grid must be >= 64");
  RangeCertificate cert = boundary_margin(phi, d, grid);
  for (int n = 2 * grid; n <= (1 << 16); n *= 2) {
    const RangeCertificate finer = boundary_margin(phi, d, n);
    const double change = std::abs(finer.margin - cert.margin);
    cert = finer;
    if (change < 1e-6) break;
  }
  if (!(cert.margin > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "disc leaves the domain: boundary margin " << cert.margin
       << " at lambda = " << cert.worst_point;
    fail(ErrorCode::InfeasibleDisc, os.str());
  }
  return cert;
}

PreimageSet preimages(const AnalyticDisc& phi, std::span<const Complex> a,
                      const PreimageOptions& options) {
  if (static_cast<int>(a.size()) != phi.dimension())
    fail(ErrorCode::DimensionMismatch, "target dimension does not match the disc");
  const Point inner_target = phi.to_inner(a);

  std::vector<Polynomial> diffs;
  for (size_t i = 0; i < a.size(); ++i)
    diffs.push_back(phi.coordinates()[i] - Polynomial::constant(inner_target[i]));

  PreimageSet out;
  out.target.assign(a.begin(), a.end());

  int selected = -1;
  for (size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i].degree() < 1) continue;
    if (selected < 0 || diffs[i].degree() < diffs[static_cast<size_t>(selected)].degree())
      selected = static_cast<int>(i);
  }
  if (selected < 0) {
    bool all_equal = true;
    for (const auto& q : diffs)
      if (std::abs(q.coefficient(0)) > options.tol) all_equal = false;
    if (all_equal)
      fail(ErrorCode::DegenerateDisc, "disc is identically equal to the target");
    return out;  // constant disc missing the target
  }

  const Polynomial& q = diffs[static_cast<size_t>(selected)];
  for (const auto& root : find_roots(q)) {
    if (!(std::abs(root.value) < 1.0 - options.boundary_tol)) continue;
    const Point value = phi(root.value);
    double dev = 0.0;
    for (size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(value[i] - a[i]));
    if (dev > options.tol) continue;

    int ord = root.multiplicity;
    for (size_t i = 0; i < diffs.size(); ++i) {
      if (static_cast<int>(i) == selected || diffs[i].is_zero()) continue;
      if (diffs[i].degree() < 1) continue;
      int ord_i = ord;
      for (int j = 1; j < ord; ++j) {
        const double scale = std::max(diffs[i].taylor_scale(root.value, j), 1e-300);
        if (std::abs(diffs[i].taylor_coefficient(root.value, j)) >
            options.multiplicity_tol * scale) {
          ord_i = j;
          break;
        }
      }
      ord = std::min(ord, ord_i);
    }
    out.entries.push_back({DiscPoint(root.value), ord});
    out.residual = std::max(out.residual, dev);
  }
  return out;
}

}  // namespace pgreen
