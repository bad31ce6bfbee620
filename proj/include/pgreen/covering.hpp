#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pgreen/disc_algebra.hpp"

namespace pgreen {

/// Holomorphic covering E -> E \ A with pi(0) = C, for |A| <= 1.
///
/// With no puncture the covering is the automorphism sending 0 to C. With a
/// single puncture p it is T_p o pi0 o T_mu, where
/// pi0(u) = exp(-(1 + u) / (1 - u)) covers E \ {0}, T_q denotes the
/// automorphism u -> (u + q) / (1 + conj(q) u), and mu is one of the
/// preimages of C selected by the branch index (ordered by modulus).
/// The punctured covering is an infinite Blaschke product whose zeros
/// accumulate at the boundary point T_mu^{-1}(1).
class CoveringMap final : public DiscMap {
 public:
  enum class Kind { FullDisc, PuncturedDisc };

  Kind kind() const noexcept { return kind_; }
  std::optional<Complex> puncture() const noexcept { return puncture_; }
  Complex basepoint_value() const noexcept { return basepoint_; }
  int branch() const noexcept { return branch_; }
  /// Preimage of the basepoint under T_p o pi0 (0 for the full disc).
  Complex mu() const noexcept { return mu_; }
  /// Boundary point where the punctured covering is singular.
  std::optional<Complex> singular_point() const;

  Complex value(Complex lambda) const override;
  Complex derivative(Complex lambda) const override;
  /// log|pi(lambda) - p|, evaluated without cancellation or underflow.
  double log_puncture_distance(Complex lambda) const;
  std::vector<Root> scaled_zeros(double r, double cutoff) const override;

  friend CoveringMap covering_map(std::span<const Complex> punctures,
                                  Complex basepoint, int branch);

 private:
  CoveringMap() = default;
  Kind kind_ = Kind::FullDisc;
  std::optional<Complex> puncture_;
  Complex basepoint_{};
  int branch_ = 0;
  Complex mu_{};
};

CoveringMap covering_map(std::span<const Complex> punctures, Complex basepoint,
                         int branch = 0);

/// exp(-(1 + u) / (1 - u)), the universal covering E -> E \ {0}.
Complex punctured_cover(Complex u);

}  // namespace pgreen
