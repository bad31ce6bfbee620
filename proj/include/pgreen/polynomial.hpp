#pragma once

#include <complex>
#include <span>
#include <vector>

namespace pgreen {

using Complex = std::complex<double>;

/// Dense univariate polynomial with complex coefficients, stored in
/// ascending powers. Trailing zero coefficients are trimmed on construction.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coefficients);

  static Polynomial constant(Complex value);
  /// (root - lambda) when `negate` is set, (lambda - root) otherwise.
  static Polynomial linear_factor(Complex root, bool negate = false);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  Complex coefficient(int power) const noexcept;

  Complex operator()(Complex lambda) const noexcept;
  Polynomial derivative() const;
  /// j-th Taylor coefficient at lambda: p^{(j)}(lambda) / j!.
  Complex taylor_coefficient(Complex lambda, int j) const noexcept;
  /// Sum_k |a_k| C(k,j) |lambda|^{k-j}: rounding scale for taylor_coefficient.
  double taylor_scale(Complex lambda, int j) const noexcept;
  /// p(factor * lambda).
  Polynomial compose_scale(Complex factor) const;
  double max_abs_coefficient() const noexcept;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(Complex scalar) const;

  /// Quotient and remainder of division by a monic polynomial built from
  /// the given roots. The remainder has degree below roots.size().
  std::pair<Polynomial, Polynomial> divide_by_roots(
      std::span<const Complex> roots) const;

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

struct Root {
  Complex value;
  int multiplicity = 1;
};

/// All roots of p (degree >= 1) via companion-matrix eigenvalues followed by
/// Newton polishing. Eigenvalue clusters consistent with a multiple root are
/// merged and reported once with their multiplicity.
std::vector<Root> find_roots(const Polynomial& p);

}  // namespace pgreen
