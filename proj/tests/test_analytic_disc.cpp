#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pgreen/analytic_disc.hpp"
#include "pgreen/error.hpp"
#include "pgreen/green.hpp"

using namespace pgreen;
using std::numbers::pi;

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

Domain bidisc() { return Domain::unit_polydisc(2); }

}  // namespace

TEST_CASE("domain margins") {
  const std::vector<Complex> origin{0.0, 0.0}, p{0.5, 0.9}, e1{1.0, 0.0};
  CHECK(margin(bidisc(), origin) == doctest::Approx(1.0));
  CHECK(margin(bidisc(), p) == doctest::Approx(0.1));
  CHECK(margin(Domain::unit_ball(2), e1) == doctest::Approx(0.0));
  CHECK(margin(Domain::unit_ball(2), std::vector<Complex>{0.6, 0.8}) == doctest::Approx(0.0));
  CHECK(margin(bidisc(), std::vector<Complex>{1.2, 0.0}) < 0.0);
  CHECK(code_of([&] { margin(bidisc(), std::vector<Complex>{0.1}); }) ==
        ErrorCode::DimensionMismatch);

  const Domain prod = Domain::product({Domain::unit_polydisc(1), Domain::unit_ball(2)});
  CHECK(prod.dimension() == 3);
  CHECK(margin(prod, std::vector<Complex>{0.9, 0.3, 0.0}) == doctest::Approx(0.1));
  CHECK(margin(prod, std::vector<Complex>{0.0, 0.6, 0.6}) == doctest::Approx(1.0 - std::sqrt(0.72)));

  SublevelDomain s{2, {{1.0, {1, 1}}}, 0.25, };
  const Domain sub(s);
  CHECK(margin(sub, std::vector<Complex>{0.5, 0.4}) == doctest::Approx(0.05));
}

TEST_CASE("disc evaluation") {
  const AnalyticDisc phi({poly({0.0, 1.0}), poly({0.0, 0.0, 1.0})});
  const auto v = eval_disc(phi, 0.5);
  CHECK(std::abs(v[0] - 0.5) == 0.0);
  CHECK(std::abs(v[1] - 0.25) == 0.0);
  const std::vector<Complex> z0{Complex(0.1, 0.2), Complex(-0.3, 0.0)};
  const auto c = AnalyticDisc::constant(z0);
  for (double t : {0.0, 0.3, 1.0}) CHECK(eval_disc(c, std::polar(1.0, t) * 0.7) == z0);
  const AnalyticDisc a1({poly({0.4, 0.0})});
  CHECK(eval_disc(a1, Complex(0.2, 0.9))[0] == Complex(0.4, 0.0));
}

TEST_CASE("range certificate") {
  const AnalyticDisc half({poly({0.0, 0.5}), poly({0.0, 0.5})});
  CHECK(certify_range(half, bidisc()).margin == doctest::Approx(0.5));
  const AnalyticDisc touching({poly({0.0, 1.0}), poly({0.0})});
  CHECK(code_of([&] { certify_range(touching, bidisc()); }) == ErrorCode::InfeasibleDisc);
  try {
    certify_range(touching, bidisc());
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("lambda") != std::string::npos);
  }
  const AnalyticDisc nine({poly({0.0, 0.9})});
  CHECK(certify_range(nine, Domain::unit_polydisc(1)).margin == doctest::Approx(0.1));
  CHECK(code_of([&] { certify_range(nine, Domain::unit_polydisc(1), 32); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("range certificate is monotone under grid doubling") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g(0.0, 0.3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Polynomial> coords;
    for (int j = 0; j < 2; ++j) {
      std::vector<Complex> c;
      for (int k = 0; k < 4; ++k) c.emplace_back(g(rng), g(rng));
      coords.emplace_back(c);
    }
    const AnalyticDisc phi(coords);
    double last = boundary_margin(phi, bidisc(), 64).margin;
    for (int n = 128; n <= 4096; n *= 2) {
      const double m = boundary_margin(phi, bidisc(), n).margin;
      CHECK(m <= last + 1e-12);
      last = m;
    }
  }
}

TEST_CASE("preimages") {
  const AnalyticDisc phi({poly({0.0, 1.0}), poly({0.0, 0.0, 1.0})});
  const auto s = preimages(phi, std::vector<Complex>{0.5, 0.25});
  REQUIRE(s.entries.size() == 1);
  CHECK(std::abs(s.entries[0].point.value() - 0.5) < 1e-12);
  CHECK(s.entries[0].multiplicity == 1);

  // ((l - 0.3)^2 + 0.1, 0.2) against (0.1, 0.2).
  const AnalyticDisc dbl({poly({0.09 + 0.1, -0.6, 1.0}), poly({0.2})});
  const auto d = preimages(dbl, std::vector<Complex>{0.1, 0.2});
  REQUIRE(d.entries.size() == 1);
  CHECK(std::abs(d.entries[0].point.value() - 0.3) < 1e-7);
  CHECK(d.entries[0].multiplicity == 2);

  // (l^2, l^3) = (0.25, 0.125): roots of l^2 - 0.25 are +-0.5; only 0.5
  // satisfies the second coordinate.
  const AnalyticDisc cube({poly({0.0, 0.0, 1.0}), poly({0.0, 0.0, 0.0, 1.0})});
  const auto c = preimages(cube, std::vector<Complex>{0.25, 0.125});
  REQUIRE(c.entries.size() == 1);
  CHECK(std::abs(c.entries[0].point.value() - 0.5) < 1e-12);
  CHECK(c.entries[0].multiplicity == 1);

  // Common double root: (l^2, l^3) at the origin has order 2.
  const auto o = preimages(cube, std::vector<Complex>{0.0, 0.0});
  REQUIRE(o.entries.size() == 1);
  CHECK(o.entries[0].multiplicity == 2);

  const AnalyticDisc outside({poly({0.0, 0.5})});
  CHECK(preimages(outside, std::vector<Complex>{0.6}).entries.empty());

  const std::vector<Complex> a{0.1, 0.2};
  CHECK(code_of([&] { preimages(AnalyticDisc::constant(a), a); }) == ErrorCode::DegenerateDisc);
  // Constant first coordinate falls through to the second.
  const AnalyticDisc fall({poly({0.1}), poly({0.0, 0.5})});
  const auto f = preimages(fall, std::vector<Complex>{0.1, 0.25});
  REQUIRE(f.entries.size() == 1);
  CHECK(std::abs(f.entries[0].point.value() - 0.5) < 1e-12);
  CHECK(f.residual <= 1e-8);
}

TEST_CASE("poletsky value") {
  auto set = [](std::vector<std::pair<double, int>> e) {
    PreimageSet s;
    for (auto [p, m] : e) s.entries.push_back({DiscPoint(p), m});
    return s;
  };
  CHECK(poletsky_value(set({{0.5, 1}})).value == doctest::Approx(0.5));
  CHECK(poletsky_value(set({{0.5, 1}, {0.3, 1}})).value == doctest::Approx(0.15));
  CHECK(poletsky_value(set({{0.3, 2}})).value == doctest::Approx(0.09));
  CHECK(poletsky_value(set({{0.5, 1}})).method == GreenMethod::DiscUpperBound);
  CHECK(code_of([&] { poletsky_value(PreimageSet{}); }) == ErrorCode::NotAttained);
}

TEST_CASE("disc oracle") {
  CHECK(green_disc_oracle(0.5, 0.0).value == doctest::Approx(0.5));
  CHECK(green_disc_oracle(Complex(0.2, 0.3), Complex(0.2, 0.3)).value == 0.0);
  CHECK(green_disc_oracle(0.0, 0.7).value == doctest::Approx(0.7));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Complex a = std::polar(0.99 * std::sqrt(u(rng)), 2 * pi * u(rng));
    const Complex z = std::polar(0.99 * std::sqrt(u(rng)), 2 * pi * u(rng));
    CHECK(std::abs(green_disc_oracle(a, z).value - green_disc_oracle(z, a).value) <= 1e-12);
  }
}

TEST_CASE("polydisc oracle") {
  const auto q = make_query(bidisc(), {0.5, 0.3}, {0.0, 0.0});
  // Mobius value per coordinate written out: |0 - a| / |1 - 0| = |a|.
  CHECK(green_polydisc_oracle(q).value == doctest::Approx(std::max(0.5, 0.3)));
  CHECK(green_polydisc_oracle(make_query(bidisc(), {0.2, 0.1}, {0.2, 0.1})).value == 0.0);
  const auto q3 = make_query(Domain::unit_polydisc(3), {0.0, 0.0, 0.9}, {0.0, 0.0, 0.0});
  CHECK(green_polydisc_oracle(q3).value == doctest::Approx(0.9));
  const auto prod = Domain::product({Domain::unit_polydisc(1), Domain::unit_polydisc(1)});
  CHECK(green_polydisc_oracle(make_query(prod, {0.5, 0.3}, {0.0, 0.0})).value ==
        doctest::Approx(0.5));
  SublevelDomain s{1, {{1.0, {1}}}, 1.0};
  CHECK(code_of([&] { green_polydisc_oracle(make_query(Domain(s), {0.1}, {0.0})); }) ==
        ErrorCode::NoOracle);
  // Scaled polydisc: centre 1, radius 2 on the first coordinate.
  const Domain shifted(PolydiscDomain{{1.0, 0.0}, {2.0, 1.0}});
  CHECK(green_polydisc_oracle(make_query(shifted, {2.0, 0.0}, {1.0, 0.0})).value ==
        doctest::Approx(0.5));
}

TEST_CASE("ball oracle") {
  const auto b = Domain::unit_ball(2);
  CHECK(green_oracle(make_query(b, {0.5, 0.0}, {0.0, 0.0})).value == doctest::Approx(0.5));
  CHECK(green_oracle(make_query(b, {0.3, 0.1}, {0.3, 0.1})).value == doctest::Approx(0.0));
  // On the complex line through 0 and a the ball oracle is the disc oracle.
  CHECK(green_oracle(make_query(b, {0.3, 0.4}, {0.06, 0.08})).value ==
        doctest::Approx(green_disc_oracle(0.5, 0.1).value));
  CHECK(code_of([&] { make_query(b, {0.8, 0.8}, {0.0, 0.0}); }) == ErrorCode::InvalidInput);
}

TEST_CASE("contractibility lower bound") {
  const auto q = make_query(Domain::product({Domain::unit_polydisc(1), Domain::unit_polydisc(1)}),
                            {0.5, 0.3}, {0.0, 0.0});
  CHECK(contractibility_lower_bound(q).value == doctest::Approx(0.5));
  const auto same = make_query(bidisc(), {0.1, 0.1}, {0.1, 0.1});
  CHECK(contractibility_lower_bound(same).value == 0.0);
  const std::vector<GreenValue> values{{0.4, GreenMethod::ClosedForm, "f1"},
                                       {0.7, GreenMethod::DiscUpperBound, "f2"}};
  CHECK(contractibility_lower_bound(values).value == doctest::Approx(0.7));
  CHECK(code_of([&] { contractibility_lower_bound(std::vector<GreenValue>{}); }) ==
        ErrorCode::NoOracle);
}

TEST_CASE("upper and lower sandwich with projection contraction") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int feasible = 0;
  for (int t = 0; t < 200 && feasible < 40; ++t) {
    // phi(l) = z + l * (c0 + c1 l), through a at some lambda0.
    std::vector<Polynomial> coords;
    for (int j = 0; j < 2; ++j)
      coords.push_back(poly({Complex(0.3 * u(rng), 0.3 * u(rng)), Complex(0.5 * u(rng), 0.5 * u(rng)),
                             Complex(0.3 * u(rng), 0.3 * u(rng))}));
    const AnalyticDisc phi(coords);
    if (!(boundary_margin(phi, bidisc(), 512).margin > 0.01)) continue;
    const Complex l0(0.6 * u(rng), 0.6 * u(rng));
    const auto a = phi(l0);
    const auto z = phi(0.0);
    ++feasible;
    const double upper = poletsky_value(phi, a).value;
    const double truth = green_polydisc_oracle(make_query(bidisc(), a, z)).value;
    CHECK(upper >= truth - 1e-9);
    for (int j = 0; j < 2; ++j) {
      const AnalyticDisc proj({coords[static_cast<size_t>(j)]});
      const double projected = poletsky_value(proj, std::vector<Complex>{a[static_cast<size_t>(j)]}).value;
      CHECK(projected <= upper + 1e-9);
    }
  }
  CHECK(feasible >= 20);
}

TEST_CASE("framed discs") {
  const std::vector<Complex> z{0.2, Complex(0.1, -0.3)};
  const auto frame = *bidisc().frame(z);
  const AnalyticDisc phi({poly({0.0, 0.5}), poly({0.0, Complex(0.0, 0.4)})}, frame);
  const auto at0 = phi(0.0);
  CHECK(std::abs(at0[0] - z[0]) < 1e-15);
  CHECK(std::abs(at0[1] - z[1]) < 1e-15);
  const auto back = phi.to_inner(phi(Complex(0.3, 0.2)));
  CHECK(std::abs(back[0] - 0.15 - Complex(0, 0.1)) < 1e-14);
  CHECK(certify_range(phi, bidisc()).margin > 0.0);
  const auto target = phi(Complex(0.25, 0.0));
  const auto s = preimages(phi, target);
  REQUIRE(s.entries.size() == 1);
  CHECK(std::abs(s.entries[0].point.value() - 0.25) < 1e-12);
}

TEST_CASE("ball frame blocks are involutive automorphisms") {
  const Domain ball(BallDomain{Point{0.1, Complex(0.0, 0.2)}, 2.0});
  const Point z{Complex(0.5, 0.3), Complex(-0.4, 0.6)};
  const auto frame = *ball.frame(z);
  REQUIRE(frame.size() == 1);
  REQUIRE(frame[0].dimension() == 2);
  const Point origin{0.0, 0.0};
  const auto at0 = frame[0].forward(origin);
  CHECK(std::abs(at0[0] - z[0]) < 1e-15);
  CHECK(std::abs(at0[1] - z[1]) < 1e-15);
  const Point u{Complex(0.3, -0.2), Complex(0.1, 0.5)};
  const auto back = frame[0].inverse(frame[0].forward(u));
  CHECK(std::abs(back[0] - u[0]) < 1e-14);
  CHECK(std::abs(back[1] - u[1]) < 1e-14);
  // 1 - |Phi_b(u)|^2 = (1 - |b|^2)(1 - |u|^2) / |1 - <u, b>|^2
  const Point b = frame[0].base;
  const auto w = ball_automorphism(b, u);
  const double nb = std::norm(b[0]) + std::norm(b[1]);
  const double nu = std::norm(u[0]) + std::norm(u[1]);
  const double nw = std::norm(w[0]) + std::norm(w[1]);
  const Complex ub = u[0] * std::conj(b[0]) + u[1] * std::conj(b[1]);
  CHECK(std::abs((1.0 - nw) - (1.0 - nb) * (1.0 - nu) / std::norm(1.0 - ub)) < 1e-14);
  const AnalyticDisc phi({poly({0.0, 0.6}), poly({0.0, Complex(0.0, 0.5)})}, frame);
  CHECK(certify_range(phi, ball).margin > 0.0);
}
