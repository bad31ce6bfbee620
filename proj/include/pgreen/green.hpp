#pragma once

#include <optional>
#include <span>
#include <string>

#include "pgreen/analytic_disc.hpp"
#include "pgreen/domain.hpp"

namespace pgreen {

enum class GreenMethod { ClosedForm, DiscUpperBound, PipelineCertificate };

const char* to_string(GreenMethod method) noexcept;

/// A value of the (exponential) pluricomplex Green function, in [0, 1).
struct GreenValue {
  double value = 0.0;
  GreenMethod method = GreenMethod::ClosedForm;
  std::string evidence_id;
};

/// Pole and evaluation point inside a domain; both strictly inside.
struct GreenQuery {
  Domain domain;
  Point pole;
  Point eval;
};

GreenQuery make_query(Domain domain, Point pole, Point eval);

/// Product of |lambda|^mult over the preimage set.
GreenValue poletsky_value(const PreimageSet& preimages);
GreenValue poletsky_value(const AnalyticDisc& phi, std::span<const Complex> a,
                          const PreimageOptions& options = {});

/// |(z - a) / (1 - conj(a) z)| on the unit disc.
GreenValue green_disc_oracle(Complex a, Complex z);
GreenValue green_ball_oracle(const BallDomain& ball, std::span<const Complex> a,
                             std::span<const Complex> z);
/// Max of the per-coordinate Mobius values on a product of discs.
GreenValue green_polydisc_oracle(const GreenQuery& q);
/// Closed form when the domain has one; NoOracle otherwise.
GreenValue green_oracle(const GreenQuery& q);
bool has_oracle(const Domain& d);

/// Max of the factor Green values: the projection lower bound on a product.
GreenValue contractibility_lower_bound(const GreenQuery& q);
GreenValue contractibility_lower_bound(std::span<const GreenValue> factor_values);

}  // namespace pgreen
