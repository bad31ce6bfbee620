#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pgreen/polynomial.hpp"

namespace pgreen {

using Point = std::vector<Complex>;

struct PolydiscDomain {
  Point center;
  std::vector<double> radii;
};

struct BallDomain {
  Point center;
  double radius = 1.0;
};

struct Monomial {
  Complex coefficient;
  std::vector<int> exponents;
};

/// {z : |p(z)| < level} for a polynomial p in n variables.
struct SublevelDomain {
  int dimension = 1;
  std::vector<Monomial> terms;
  double level = 1.0;

  Complex evaluate(std::span<const Complex> z) const;
};

class Domain;

struct ProductDomain {
  std::vector<Domain> factors;
};

/// Frame on a block of coordinates: u -> center + radius * Phi_base(u), with
/// Phi_b(u) = (b - P_b u - s_b Q_b u) / (1 - <u, b>), s_b = sqrt(1 - |b|^2),
/// P_b the orthogonal projection onto C b and Q_b = I - P_b. Phi_b is the
/// involutive automorphism of the unit ball swapping 0 and b; in dimension
/// one it is u -> (b - u) / (1 - conj(b) u).
struct FrameBlock {
  Point center;
  double radius = 1.0;
  Point base;

  int dimension() const noexcept { return static_cast<int>(center.size()); }
  Point forward(std::span<const Complex> u) const;
  Point inverse(std::span<const Complex> z) const;
};

/// Blocks covering the coordinates in order.
using Frame = std::vector<FrameBlock>;

/// Involutive ball automorphism Phi_b.
Point ball_automorphism(std::span<const Complex> b, std::span<const Complex> u);

/// Domains whose boundary-grid margin is a sound range certificate through
/// the maximum principle. Arbitrary membership predicates are not accepted.
class Domain {
 public:
  using Kind = std::variant<PolydiscDomain, BallDomain, ProductDomain, SublevelDomain>;

  explicit Domain(Kind kind);
  static Domain unit_polydisc(int n);
  static Domain unit_ball(int n);
  static Domain product(std::vector<Domain> factors);

  const Kind& kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dimension_; }
  std::string kind_name() const;

  /// Positive inside, negative outside, continuous.
  double margin(std::span<const Complex> z) const;

  /// Frame sending the origin to z when the domain is a product of balls
  /// (polydiscs count as products of discs).
  std::optional<Frame> frame(std::span<const Complex> z) const;

  /// Factors of a product (a non-product domain is its own single factor).
  std::vector<const Domain*> factors() const;

 private:
  Kind kind_;
  int dimension_ = 0;
};

double margin(const Domain& d, std::span<const Complex> z);

}  // namespace pgreen
