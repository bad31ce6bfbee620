#include "pgreen/green.hpp"

#include <algorithm>
#include <cmath>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

Frame disc_blocks(const Domain& d) {
  const Point origin(static_cast<size_t>(d.dimension()), Complex{});
  auto frame = d.frame(origin);
  if (!frame) fail(ErrorCode::NoOracle, "domain is not a product of discs");
  for (const auto& f : *frame)
    if (f.dimension() != 1) fail(ErrorCode::NoOracle, "domain is not a product of discs");
  return std::move(*frame);
}

double clamp_unit(double v) { return std::clamp(v, 0.0, std::nextafter(1.0, 0.0)); }

}  // namespace

const char* to_string(GreenMethod method) noexcept {
  switch (method) {
    case GreenMethod::ClosedForm: return "closed-form";
    case GreenMethod::DiscUpperBound: return "disc-upper-bound";
    case GreenMethod::PipelineCertificate: return "pipeline-certificate";
  }
  return "unknown";
}

GreenQuery make_query(Domain domain, Point pole, Point eval) {
  if (static_cast<int>(pole.size()) != domain.dimension() ||
      static_cast<int>(eval.size()) != domain.dimension())
    fail(ErrorCode::DimensionMismatch, "query points do not match the domain dimension");
  if (!(domain.margin(pole) > 0.0))
    fail(ErrorCode::InvalidInput, "pole is not strictly inside the domain");
  if (!(domain.margin(eval) > 0.0))
    fail(ErrorCode::InvalidInput, "evaluation point is not strictly inside the domain");
  return GreenQuery{std::move(domain), std::move(pole), std::move(eval)};
}

GreenValue poletsky_value(const PreimageSet& preimages) {
  if (preimages.entries.empty())
    fail(ErrorCode::NotAttained, "disc does not attain the pole inside the disc");
  double v = 1.0;
  for (const auto& e : preimages.entries)
    v *= std::pow(std::abs(e.point.value()), e.multiplicity);
  return {v, GreenMethod::DiscUpperBound, "poletsky-disc"};
}

GreenValue poletsky_value(const AnalyticDisc& phi, std::span<const Complex> a,
                          const PreimageOptions& options) {
  return poletsky_value(preimages(phi, a, options));
}

GreenValue green_disc_oracle(Complex a, Complex z) {
  if (!(std::abs(a) < 1.0) || !(std::abs(z) < 1.0))
    fail(ErrorCode::InvalidInput, "disc oracle needs points of the unit disc");
  const double v = std::abs((z - a) / (1.0 - std::conj(a) * z));
  return {clamp_unit(v), GreenMethod::ClosedForm, "mobius"};
}

GreenValue green_ball_oracle(const BallDomain& ball, std::span<const Complex> a,
                             std::span<const Complex> z) {
  if (a.size() != ball.center.size() || z.size() != ball.center.size())
    fail(ErrorCode::DimensionMismatch, "ball oracle dimension mismatch");
  double na = 0.0, nz = 0.0;
  Complex inner{};
  for (size_t j = 0; j < a.size(); ++j) {
    const Complex aj = (a[j] - ball.center[j]) / ball.radius;
    const Complex zj = (z[j] - ball.center[j]) / ball.radius;
    na += std::norm(aj);
    nz += std::norm(zj);
    inner += zj * std::conj(aj);
  }
  if (!(na < 1.0) || !(nz < 1.0))
    fail(ErrorCode::InvalidInput, "ball oracle needs interior points");
  const double s = (1.0 - na) * (1.0 - nz) / std::norm(1.0 - inner);
  return {clamp_unit(std::sqrt(std::max(0.0, 1.0 - s))), GreenMethod::ClosedForm,
          "ball-automorphism"};
}

GreenValue green_polydisc_oracle(const GreenQuery& q) {
  const Frame blocks = disc_blocks(q.domain);
  double v = 0.0;
  for (size_t j = 0; j < blocks.size(); ++j) {
    const FrameBlock& f = blocks[j];
    const Complex a = (q.pole[j] - f.center[0]) / f.radius;
    const Complex z = (q.eval[j] - f.center[0]) / f.radius;
    v = std::max(v, green_disc_oracle(a, z).value);
  }
  return {v, GreenMethod::ClosedForm, "polydisc-max"};
}

bool has_oracle(const Domain& d) {
  if (std::holds_alternative<SublevelDomain>(d.kind())) return false;
  if (const auto* p = std::get_if<ProductDomain>(&d.kind())) {
    return std::all_of(p->factors.begin(), p->factors.end(),
                       [](const Domain& f) { return has_oracle(f); });
  }
  return true;
}

GreenValue green_oracle(const GreenQuery& q) {
  const Domain& d = q.domain;
  if (std::holds_alternative<PolydiscDomain>(d.kind())) return green_polydisc_oracle(q);
  if (const auto* b = std::get_if<BallDomain>(&d.kind()))
    return green_ball_oracle(*b, q.pole, q.eval);
  if (const auto* p = std::get_if<ProductDomain>(&d.kind())) {
    double v = 0.0;
    size_t offset = 0;
    for (const auto& f : p->factors) {
      const size_t n = static_cast<size_t>(f.dimension());
      Point a(q.pole.begin() + static_cast<long>(offset),
              q.pole.begin() + static_cast<long>(offset + n));
      Point z(q.eval.begin() + static_cast<long>(offset),
              q.eval.begin() + static_cast<long>(offset + n));
      v = std::max(v, green_oracle(GreenQuery{f, std::move(a), std::move(z)}).value);
      offset += n;
    }
    return {v, GreenMethod::ClosedForm, "product-max"};
  }
  fail(ErrorCode::NoOracle, "no closed form for " + d.kind_name() + " domains");
}

GreenValue contractibility_lower_bound(const GreenQuery& q) {
  const auto factors = q.domain.factors();
  std::vector<GreenValue> values;
  size_t offset = 0;
  for (const Domain* f : factors) {
    const size_t n = static_cast<size_t>(f->dimension());
    Point a(q.pole.begin() + static_cast<long>(offset),
            q.pole.begin() + static_cast<long>(offset + n));
    Point z(q.eval.begin() + static_cast<long>(offset),
            q.eval.begin() + static_cast<long>(offset + n));
    offset += n;
    if (!has_oracle(*f)) continue;
    values.push_back(green_oracle(GreenQuery{*f, std::move(a), std::move(z)}));
  }
  return contractibility_lower_bound(values);
}

GreenValue contractibility_lower_bound(std::span<const GreenValue> factor_values) {
  if (factor_values.empty())
    fail(ErrorCode::NoOracle, "no factor Green value available");
  double v = 0.0;
  for (const auto& f : factor_values) v = std::max(v, f.value);
  return {v, GreenMethod::ClosedForm, "projection-max"};
}

}  // namespace pgreen
