#pragma once

#include <span>
#include <vector>

#include "pgreen/disc_algebra.hpp"
#include "pgreen/domain.hpp"
#include "pgreen/polynomial.hpp"

namespace pgreen {

/// Holomorphic map of the closed unit disc into C^n. Each coordinate is a
/// polynomial, optionally followed by a frame (ball automorphisms applied to
/// contiguous coordinate blocks); frames let the optimizer reach the
/// extremal discs of balls and polydiscs, which are not polynomial.
class AnalyticDisc {
 public:
  AnalyticDisc(std::vector<Polynomial> coordinates,
               Frame frame = {});
  static AnalyticDisc constant(std::span<const Complex> z);

  int dimension() const noexcept { return static_cast<int>(coords_.size()); }
  int degree() const noexcept;
  bool framed() const noexcept { return !frame_.empty(); }
  const std::vector<Polynomial>& coordinates() const noexcept { return coords_; }
  const Frame& frame() const noexcept { return frame_; }

  Point operator()(Complex lambda) const;
  /// Polynomial (pre-frame) coordinates at lambda.
  Point inner(Complex lambda) const;
  /// Frame preimage of a point of C^n (identity when unframed).
  Point to_inner(std::span<const Complex> z) const;
  /// lambda -> phi(factor * lambda).
  AnalyticDisc precompose_scale(Complex factor) const;

 private:
  std::vector<Polynomial> coords_;
  Frame frame_;
};

Point eval_disc(const AnalyticDisc& phi, Complex lambda);

struct RangeCertificate {
  double margin = 0.0;
  Complex worst_point{};
  int grid = 0;
};

/// Minimum of the domain margin over `grid` equispaced boundary points;
/// for framed discs also bounded by the frame-block margins.
RangeCertificate boundary_margin(const AnalyticDisc& phi, const Domain& d,
                                 int grid);

/// Boundary-grid range certificate, refined by doubling until the minimum
/// moves by less than 1e-6. Throws InfeasibleDisc on a nonpositive margin.
RangeCertificate certify_range(const AnalyticDisc& phi, const Domain& d,
                               int grid = 512);

struct PreimageEntry {
  DiscPoint point;
  int multiplicity = 1;
};

struct PreimageSet {
  std::vector<PreimageEntry> entries;
  Point target;
  double residual = 0.0;
};

struct PreimageOptions {
  double tol = 1e-8;
  double boundary_tol = 1e-9;
  double multiplicity_tol = 1e-10;
};

/// Interior solutions of phi(lambda) = a with multiplicities ord(phi - a).
PreimageSet preimages(const AnalyticDisc& phi, std::span<const Complex> a,
                      const PreimageOptions& options = {});

}  // namespace pgreen
