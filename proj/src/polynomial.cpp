#include "pgreen/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Rounding slack used when deciding whether a Taylor coefficient vanishes.
constexpr double kVanishSlack = 1e3;

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::constant(Complex value) { return Polynomial({value}); }

Polynomial Polynomial::linear_factor(Complex root, bool negate) {
  return negate ? Polynomial({root, Complex(-1.0, 0.0)})
                : Polynomial({-root, Complex(1.0, 0.0)});
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0))
    coeffs_.pop_back();
}

Complex Polynomial::coefficient(int power) const noexcept {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<size_t>(power)];
}

Complex Polynomial::operator()(Complex lambda) const noexcept {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * lambda + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Complex Polynomial::taylor_coefficient(Complex lambda, int j) const noexcept {
  Complex acc{};
  for (int k = degree(); k >= j; --k)
    acc = acc * lambda + coeffs_[static_cast<size_t>(k)] * binomial(k, j);
  return acc;
}

double Polynomial::taylor_scale(Complex lambda, int j) const noexcept {
  double acc = 0.0;
  const double r = std::abs(lambda);
  for (int k = degree(); k >= j; --k)
    acc = acc * r + std::abs(coeffs_[static_cast<size_t>(k)]) * binomial(k, j);
  return acc;
}

Polynomial Polynomial::compose_scale(Complex factor) const {
  std::vector<Complex> out(coeffs_);
  Complex power(1.0, 0.0);
  for (auto& c : out) {
    c *= power;
    power *= factor;
  }
  return Polynomial(std::move(out));
}

double Polynomial::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Complex> out(std::max(coeffs_.size(), other.coeffs_.size()));
  for (size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
  for (size_t k = 0; k < other.coeffs_.size(); ++k) out[k] += other.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * Complex(-1.0, 0.0);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return {};
  std::vector<Complex> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < other.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(Complex scalar) const {
  std::vector<Complex> out(coeffs_);
  for (auto& c : out) c *= scalar;
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> Polynomial::divide_by_roots(
    std::span<const Complex> roots) const {
  // Repeated synthetic division; each step peels one linear factor and
  // leaves a scalar remainder which is folded back as a lower-order term.
  std::vector<Complex> work(coeffs_);
  std::vector<Complex> remainder(roots.size());
  Polynomial basis = Polynomial::constant(1.0);
  Polynomial rem_poly;
  for (size_t idx = 0; idx < roots.size(); ++idx) {
    const Complex root = roots[idx];
    if (work.empty()) break;
    std::vector<Complex> q(work.size() > 1 ? work.size() - 1 : 0);
    Complex carry{};
    for (size_t k = work.size(); k-- > 0;) {
      const Complex value = work[k] + carry * root;
      if (k == 0) {
        rem_poly = rem_poly + basis * value;
      } else {
        q[k - 1] = value;
      }
      carry = value;
    }
    basis = basis * Polynomial::linear_factor(root);
    work = std::move(q);
  }
  return {Polynomial(std::move(work)), rem_poly};
}

namespace {

void newton_polish(const Polynomial& p, const Polynomial& dp, Complex& z,
                   int steps) {
  Complex best = z;
  double best_res = std::abs(p(z));
  for (int s = 0; s < steps; ++s) {
    const Complex d = dp(z);
    if (std::abs(d) == 0.0) break;
    const Complex next = z - p(z) / d;
    const double res = std::abs(p(next));
    z = next;
    if (res < best_res) {
      best = next;
      best_res = res;
    }
  }
  z = best;
}

// Polishes the centroid of an m-cluster through the simple root of the
// (m-1)-th derivative and checks that Taylor coefficients 0..m-1 vanish.
bool accept_cluster(const Polynomial& p, std::span<const Complex> members,
                    Complex& center) {
  const int m = static_cast<int>(members.size());
  Complex c = std::accumulate(members.begin(), members.end(), Complex{}) /
              static_cast<double>(m);
  Polynomial dm1 = p;
  for (int j = 0; j < m - 1; ++j) dm1 = dm1.derivative();
  newton_polish(dm1, dm1.derivative(), c, 3);

  const Complex lead = p.taylor_coefficient(c, m);
  if (std::abs(lead) == 0.0) return false;
  const double spread_limit =
      10.0 * std::pow(kVanishSlack * kEps * p.taylor_scale(c, 0) /
                          std::abs(lead),
                      1.0 / m);
  for (const auto& z : members)
    if (std::abs(z - c) > spread_limit) return false;
  for (int j = 0; j < m; ++j) {
    if (std::abs(p.taylor_coefficient(c, j)) >
        kVanishSlack * kEps * p.taylor_scale(c, j))
      return false;
  }
  center = c;
  return true;
}

}  // namespace

std::vector<Root> find_roots(const Polynomial& p) {
  std::vector<Root> roots;
  if (p.degree() < 1) return roots;

  auto coeffs = p.coefficients();
  size_t zero_mult = 0;
  while (zero_mult < coeffs.size() && coeffs[zero_mult] == Complex{})
    ++zero_mult;
  if (zero_mult > 0) roots.push_back({Complex{}, static_cast<int>(zero_mult)});

  Polynomial reduced(
      std::vector<Complex>(coeffs.begin() + static_cast<long>(zero_mult),
                           coeffs.end()));
  const int n = reduced.degree();
  if (n < 1) return roots;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = reduced.coefficient(n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -reduced.coefficient(i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::DegenerateInput, "companion eigenvalue solver failed");

  std::vector<Complex> raw(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) raw[static_cast<size_t>(i)] = solver.eigenvalues()(i);

  const Polynomial dp = reduced.derivative();
  std::vector<bool> used(raw.size(), false);
  for (size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> order;
    for (size_t j = 0; j < raw.size(); ++j)
      if (!used[j]) order.push_back(j);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return std::abs(raw[a] - raw[i]) < std::abs(raw[b] - raw[i]);
    });
    bool clustered = false;
    for (size_t m = order.size(); m >= 2; --m) {
      std::vector<Complex> members;
      for (size_t t = 0; t < m; ++t) members.push_back(raw[order[t]]);
      Complex center;
      if (accept_cluster(reduced, members, center)) {
        for (size_t t = 0; t < m; ++t) used[order[t]] = true;
        roots.push_back({center, static_cast<int>(m)});
        clustered = true;
        break;
      }
    }
    if (!clustered) {
      used[i] = true;
      Complex z = raw[i];
      newton_polish(reduced, dp, z, 1);
      roots.push_back({z, 1});
    }
  }
  return roots;
}

}  // namespace pgreen
