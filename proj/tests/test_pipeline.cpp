#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pgreen/error.hpp"
#include "pgreen/green.hpp"
#include "pgreen/pipeline.hpp"

using namespace pgreen;
using std::numbers::pi;
using boost::multiprecision::cpp_rational;

namespace {

Polynomial poly(std::initializer_list<Complex> c) { return Polynomial(std::vector<Complex>(c)); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

const Domain disc1 = Domain::unit_polydisc(1);

FactorDiscData factor(std::initializer_list<Complex> coeffs, Complex pole) {
  const AnalyticDisc phi({poly(coeffs)});
  return factor_data(phi, disc1, {pole}, phi(0.0));
}

// phi(l) = c * prod (l - z_j) + pole, a disc whose pole preimages are z_j.
FactorDiscData from_zeros(std::vector<Complex> zeros, Complex pole, Complex c) {
  Polynomial p = Polynomial::constant(c);
  for (auto z : zeros) p = p * Polynomial::linear_factor(z);
  p = p + Polynomial::constant(pole);
  const AnalyticDisc phi({p});
  return factor_data(phi, disc1, {pole}, phi(0.0));
}

ProductProblem worked_example(double level) {
  ProductProblem p;
  p.pole1 = {0.5};
  p.pole2 = {0.3};
  p.base1 = {0.0};
  p.base2 = {0.0};
  p.level = level;
  // 0.999 l: the identity disc touches the boundary.
  p.disc1 = AnalyticDisc({poly({0.0, 0.999})});
  p.disc2 = AnalyticDisc({poly({0.0, 0.999})});
  return p;
}

ProductProblem engineered_example() {
  ProductProblem p;
  p.pole1 = {0.0};
  p.base1 = {0.072};
  p.pole2 = {0.05};
  p.base2 = {0.0};
  p.level = 0.45;
  // 0.4 (l - 0.3)(l - 0.6) and 0.5 l.
  p.disc1 = AnalyticDisc({poly({0.072, -0.36, 0.4})});
  p.disc2 = AnalyticDisc({poly({0.0, 0.5})});
  return p;
}

cpp_rational exact(double x) { return cpp_rational(x); }

// prod |z|^2 < N^2 and prod |z|^2 >= N^2 |z_max|^(2 nu), in exact arithmetic
// on the stored doubles.
void check_minimal_exactly(const FactorDiscData& d, double level) {
  cpp_rational prod = 1, outer = 0;
  int nu = 0;
  for (const auto& z : d.zeros) {
    const cpp_rational m = exact(z.value.real()) * exact(z.value.real()) +
                           exact(z.value.imag()) * exact(z.value.imag());
    for (int k = 0; k < z.multiplicity; ++k) prod *= m;
    if (m > outer) outer = m;
    nu += z.multiplicity;
  }
  const cpp_rational n2 = exact(level) * exact(level);
  cpp_rational bound = n2;
  for (int k = 0; k < nu; ++k) bound *= outer;
  CHECK(prod < n2);
  CHECK(prod >= bound);
}

}  // namespace

TEST_CASE("simplify keeps simple zeros") {
  const auto d = from_zeros({0.3, 0.5}, 0.1, 0.4);
  const auto s = simplify_multiplicities(d, 1e-3);
  CHECK(s.data.zeros.size() == 2);
  for (double t : {0.0, 0.4, 1.3, 2.9}) {
    const Complex l = std::polar(1.0, t);
    CHECK(std::abs(s.data.disc(l)[0] - d.disc(l)[0]) == 0.0);
  }
}

TEST_CASE("simplify splits a double zero") {
  // phi(l) = 0.35 (l - 0.5)^2 + a1, base 0.0875 + a1.
  const Complex a1 = 0.1;
  const auto d = from_zeros({0.5, 0.5}, a1, 0.35);
  REQUIRE(d.zeros.size() == 1);
  CHECK(d.zeros[0].multiplicity == 2);
  const double delta = 1e-6;
  const auto s = simplify_multiplicities(d, delta);
  REQUIRE(s.data.zeros.size() == 2);
  CHECK(std::abs(s.data.disc(0.0)[0] - d.base[0]) <= 1e-10);
  for (const auto& z : s.data.zeros) {
    CHECK(z.multiplicity == 1);
    CHECK(std::abs(z.value - 0.5) <= delta + 1e-15);
    CHECK(std::abs(s.data.disc(z.value)[0] - a1) <= 1e-9);
  }
  CHECK(std::abs(s.data.zeros[0].value - s.data.zeros[1].value) > 0.0);
  // The correction for two zeros written out: with s~ = {0.5, 0.5 + e},
  // phi~ - a1 = 0.4 (l - 0.5)(l - 0.5 - e) * 0.25 / (0.5 (0.5 + e)).
  const Complex moved = std::abs(s.data.zeros[0].value - 0.5) > 0.0 ? s.data.zeros[0].value
                                                                     : s.data.zeros[1].value;
  for (int k = 0; k < 16; ++k) {
    const Complex l = std::polar(0.9, 2 * pi * k / 16);
    const Complex expected = 0.35 * (l - 0.5) * (l - moved) * 0.25 / (0.5 * moved) + a1;
    CHECK(std::abs(s.data.disc(l)[0] - expected) < 1e-14);
  }
  CHECK(s.report.sup_deviation <= 10.0 * delta * s.report.deviation_scale);
  CHECK(s.report.range_margin > 0.0);
}

TEST_CASE("simplify with two simple zeros and a continuity bound") {
  const auto d = from_zeros({0.3, 0.5}, 0.1, 0.4);
  const double delta = 1e-6;
  const auto s = simplify_multiplicities(d, delta);
  CHECK(s.report.product_ratio_error <= 1e-5);
  CHECK(s.report.sup_deviation <= 10.0 * delta * s.report.deviation_scale);
}

TEST_CASE("simplify rejects a zero at the origin") {
  const auto d = from_zeros({0.0, 0.5}, 0.1, 0.4);
  CHECK(code_of([&] { simplify_multiplicities(d, 1e-6); }) == ErrorCode::DegenerateInput);
}

TEST_CASE("simplify shrinks delta to stay in the domain") {
  // 0.4 (l + 0.5)^2 + p has boundary margin 1e-9 at l = 1, and pushing the
  // second copy of -0.5 towards 0 enlarges the disc there.
  const auto d = from_zeros({-0.5, -0.5}, 0.1 - 1e-9, 0.4);
  const auto s = simplify_multiplicities(d, 1e-2);
  CHECK(s.report.delta_used < 1e-2);
  CHECK(s.report.range_margin > 0.0);
}

TEST_CASE("reduce to minimal") {
  const auto single = reduce_to_minimal(from_zeros({0.1}, 0.05, 0.5), 0.5);
  CHECK(single.steps.empty());
  CHECK(single.data.zeros.size() == 1);
  check_minimal_exactly(single.data, 0.5);

  const auto two = reduce_to_minimal(from_zeros({0.1, 0.9}, 0.05, 0.05), 0.2);
  REQUIRE(two.steps.size() == 1);
  CHECK(two.steps[0].t == doctest::Approx(0.9));
  REQUIRE(two.data.zeros.size() == 1);
  CHECK(two.data.value == doctest::Approx(0.1 / 0.9));
  CHECK(std::abs(two.data.disc(two.data.zeros[0].value)[0] - 0.05) < 1e-12);
  check_minimal_exactly(two.data, 0.2);

  const auto kept = reduce_to_minimal(from_zeros({0.4, 0.5}, 0.05, 0.5), 0.21);
  CHECK(kept.steps.empty());
  CHECK(kept.data.zeros.size() == 2);
  check_minimal_exactly(kept.data, 0.21);

  CHECK(code_of([&] { reduce_to_minimal(from_zeros({0.1}, 0.05, 0.5), 0.0); }) ==
        ErrorCode::InvalidLevel);
}

TEST_CASE("reduce drops equal-modulus blocks together") {
  const auto d = from_zeros({0.1, 0.8, -0.8}, 0.0, 0.5);
  const auto r = reduce_to_minimal(d, 0.3);
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].dropped == 2);
  CHECK(r.data.value == doctest::Approx(0.125));
}

TEST_CASE("equalize products") {
  const auto z = from_zeros({0.2, 0.4}, 0.0, 0.5);
  const auto x = from_zeros({0.1}, 0.0, 0.5);
  const auto e = equalize_products(z, x);
  CHECK(e.report.t == doctest::Approx(std::sqrt(0.08 / 0.1)).epsilon(1e-12));
  CHECK(e.report.t == doctest::Approx(0.894427).epsilon(1e-6));
  CHECK(e.report.adjusted == 1);
  CHECK(std::abs(std::abs(e.first.zero_product()) - 0.1) <= 1e-12);
  CHECK(std::abs(e.first.zero_product() - e.second.zero_product()) <= 1e-10);
  for (const auto& r : e.first.zeros) CHECK(std::abs(e.first.disc(r.value)[0]) < 1e-12);

  const auto same = equalize_products(from_zeros({0.3}, 0.0, 0.5), from_zeros({0.3}, 0.0, 0.5));
  CHECK(same.report.t == 1.0);
  CHECK(same.report.theta == 0.0);

  const auto flip = equalize_products(from_zeros({0.5}, 0.0, 0.5), from_zeros({-0.5}, 0.0, 0.5));
  CHECK(flip.report.t == 1.0);
  CHECK(flip.report.theta == doctest::Approx(pi));
  CHECK(std::abs(flip.first.zero_product() - flip.second.zero_product()) <= 1e-10);

  const auto swapped = equalize_products(x, z);
  CHECK(swapped.report.adjusted == 2);
  CHECK(std::abs(swapped.first.zero_product() - swapped.second.zero_product()) <= 1e-10);

  const auto empty = factor({0.0, 0.5}, 0.7);
  CHECK(code_of([&] { equalize_products(empty, x); }) == ErrorCode::NotAttained);
}

TEST_CASE("worked example, one zero on each side") {
  for (double level : {0.55, 0.51}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cert = run_pipeline(worked_example(level));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(seconds < 5.0);
    CHECK(cert.kind == CertificateKind::Covering);
    CHECK(cert.punctures.empty());
    CHECK(cert.achieved < level);
    // Truth from the polydisc oracle.
    const double truth = green_polydisc_oracle(
        make_query(Domain::unit_polydisc(2), {0.5, 0.3}, {0.0, 0.0})).value;
    CHECK(cert.achieved > truth);
    // pi is the translation to C = 0.5, so the one zero of pi(r l) is -0.5/r.
    CHECK(cert.achieved == doctest::Approx(0.5 / 0.999 / cert.radius).epsilon(1e-10));
    CHECK(cert.checks.base_residual <= 1e-8);
    CHECK(cert.checks.zero_residual <= 1e-6);
    CHECK(cert.checks.min_margin > 0.0);
    REQUIRE(cert.jensen);
    CHECK(std::abs(cert.achieved - std::exp(cert.jensen->lhs())) <= 1e-6);
  }
}

TEST_CASE("worked example at radius index 10 and radius monotonicity") {
  PipelineConfig config;
  config.min_radius_index = 10;
  const auto cert = run_pipeline(worked_example(0.55), config);
  CHECK(cert.radius_index == 10);
  CHECK(cert.achieved - 0.5 <= 0.01);
  CHECK(cert.achieved - 0.5 > 0.0);

  double last = 1.0;
  for (int k = 4; k <= 14; ++k) {
    config.min_radius_index = k;
    const auto c = run_pipeline(worked_example(0.55), config);
    CHECK(c.radius_index == k);
    CHECK(c.achieved <= last);
    last = c.achieved;
  }
}

TEST_CASE("engineered example with one critical value") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cert = run_pipeline(engineered_example());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("engineered pipeline seconds: " << seconds << ", radius index " << cert.radius_index
                                          << ", achieved " << cert.achieved);
  CHECK(cert.kind == CertificateKind::Covering);
  CHECK(cert.punctures.size() == 1);
  CHECK(cert.blaschke1.degree() == 2);
  CHECK(cert.blaschke2.degree() == 1);
  CHECK(cert.achieved < 0.45);
  CHECK(cert.checks.lift_residual1 <= 1e-6);
  CHECK(cert.checks.lift_residual2 <= 1e-6);
  CHECK(cert.checks.base_residual <= 1e-8);
  CHECK(cert.checks.zero_residual <= 1e-6);
  CHECK(cert.checks.min_margin > 0.0);
  REQUIRE(cert.jensen);
  CHECK(std::abs(cert.achieved - std::exp(cert.jensen->lhs())) <= 1e-6);
  CHECK(seconds < 60.0);
}

TEST_CASE("level at or below a factor value is rejected") {
  CHECK(code_of([&] { run_pipeline(worked_example(0.5005)); }) == ErrorCode::InvalidLevel);
  CHECK(code_of([&] { run_pipeline(worked_example(0.4)); }) == ErrorCode::InvalidLevel);
  CHECK(code_of([&] { run_pipeline(worked_example(-1.0)); }) == ErrorCode::InvalidLevel);
}

TEST_CASE("pole at the base short-circuits") {
  ProductProblem p = worked_example(0.35);
  p.pole1 = {0.0};
  const auto cert = run_pipeline(p);
  CHECK(cert.kind == CertificateKind::Direct);
  CHECK(cert.direct_factor == 2);
  CHECK(cert.achieved == doctest::Approx(0.3 / 0.999));
  CHECK(cert.checks.base_residual <= 1e-8);
  CHECK(cert.checks.zero_residual <= 1e-6);
}

TEST_CASE("two critical values are unsupported") {
  ProductProblem p;
  p.pole1 = {0.0};
  p.base1 = {0.4 * 0.3 * 0.6};
  p.pole2 = {0.0};
  p.base2 = {0.45 * 0.4 * 0.45};
  p.level = 0.5;
  p.disc1 = AnalyticDisc({poly({0.072, -0.36, 0.4})});
  p.disc2 = AnalyticDisc({poly({0.081, -0.3825, 0.45})});
  CHECK(code_of([&] { run_pipeline(p); }) == ErrorCode::UnsupportedCovering);
}
