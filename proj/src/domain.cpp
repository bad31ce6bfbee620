#include "pgreen/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void append_frames(const Domain& d, std::span<const Complex> z, Frame& out, size_t& offset,
                   bool& ok) {
  std::visit(Overloaded{
                 [&](const PolydiscDomain& p) {
                   for (size_t j = 0; j < p.radii.size(); ++j, ++offset)
                     out.push_back({{p.center[j]}, p.radii[j], {(z[offset] - p.center[j]) / p.radii[j]}});
                 },
                 [&](const BallDomain& b) {
                   FrameBlock block{b.center, b.radius, {}};
                   for (size_t j = 0; j < b.center.size(); ++j, ++offset)
                     block.base.push_back((z[offset] - b.center[j]) / b.radius);
                   out.push_back(std::move(block));
                 },
                 [&](const ProductDomain& p) {
                   for (const auto& f : p.factors) append_frames(f, z, out, offset, ok);
                 },
                 [&](const SublevelDomain&) { ok = false; },
             },
             d.kind());
}

}  // namespace

Complex SublevelDomain::evaluate(std::span<const Complex> z) const {
  Complex acc{};
  for (const auto& term : terms) {
    Complex t = term.coefficient;
    for (size_t j = 0; j < term.exponents.size(); ++j)
      t *= std::pow(z[j], term.exponents[j]);
    acc += t;
  }
  return acc;
}

Point ball_automorphism(std::span<const Complex> b, std::span<const Complex> u) {
  Complex ub{};
  double bb = 0.0;
  for (size_t j = 0; j < b.size(); ++j) {
    ub += u[j] * std::conj(b[j]);
    bb += std::norm(b[j]);
  }
  const double s = std::sqrt(std::max(0.0, 1.0 - bb));
  const Complex denom = 1.0 - ub;
  Point out(b.size());
  for (size_t j = 0; j < b.size(); ++j) {
    const Complex proj = bb > 0.0 ? ub / bb * b[j] : Complex{};
    out[j] = (b[j] - proj - s * (u[j] - proj)) / denom;
  }
  return out;
}

Point FrameBlock::forward(std::span<const Complex> u) const {
  Point v = ball_automorphism(base, u);
  for (size_t j = 0; j < v.size(); ++j) v[j] = center[j] + radius * v[j];
  return v;
}

Point FrameBlock::inverse(std::span<const Complex> z) const {
  Point w(z.size());
  for (size_t j = 0; j < z.size(); ++j) w[j] = (z[j] - center[j]) / radius;
  return ball_automorphism(base, w);
}

Domain::Domain(Kind kind) : kind_(std::move(kind)) {
  dimension_ = std::visit(
      Overloaded{
          [](const PolydiscDomain& p) {
            if (p.center.size() != p.radii.size() || p.radii.empty())
              fail(ErrorCode::InvalidInput, "polydisc center/radii mismatch");
            for (double r : p.radii)
              if (!(r > 0.0)) fail(ErrorCode::InvalidInput, "polydisc radii must be positive");
            return static_cast<int>(p.radii.size());
          },
          [](const BallDomain& b) {
            if (b.center.empty() || !(b.radius > 0.0))
              fail(ErrorCode::InvalidInput, "ball needs a center and a positive radius");
            return static_cast<int>(b.center.size());
          },
          [](const ProductDomain& p) {
            if (p.factors.empty()) fail(ErrorCode::InvalidInput, "empty product domain");
            int n = 0;
            for (const auto& f : p.factors) n += f.dimension();
            return n;
          },
          [](const SublevelDomain& s) {
            if (s.dimension < 1 || !(s.level > 0.0))
              fail(ErrorCode::InvalidInput, "sublevel domain needs n >= 1 and level > 0");
            for (const auto& t : s.terms)
              if (static_cast<int>(t.exponents.size()) != s.dimension)
                fail(ErrorCode::InvalidInput, "monomial exponent count mismatch");
            return s.dimension;
          },
      },
      kind_);
}

Domain Domain::unit_polydisc(int n) {
  return Domain(PolydiscDomain{Point(static_cast<size_t>(n)), std::vector<double>(static_cast<size_t>(n), 1.0)});
}

Domain Domain::unit_ball(int n) {
  return Domain(BallDomain{Point(static_cast<size_t>(n)), 1.0});
}

Domain Domain::product(std::vector<Domain> factors) {
  return Domain(ProductDomain{std::move(factors)});
}

std::string Domain::kind_name() const {
  return std::visit(Overloaded{
                        [](const PolydiscDomain&) { return std::string("polydisc"); },
                        [](const BallDomain&) { return std::string("ball"); },
                        [](const ProductDomain&) { return std::string("product"); },
                        [](const SublevelDomain&) { return std::string("sublevel"); },
                    },
                    kind_);
}

double Domain::margin(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != dimension_)
    fail(ErrorCode::DimensionMismatch, "point dimension does not match the domain");
  return std::visit(
      Overloaded{
          [&](const PolydiscDomain& p) {
            double m = std::numeric_limits<double>::infinity();
            for (size_t j = 0; j < p.radii.size(); ++j)
              m = std::min(m, p.radii[j] - std::abs(z[j] - p.center[j]));
            return m;
          },
          [&](const BallDomain& b) {
            double s = 0.0;
            for (size_t j = 0; j < b.center.size(); ++j) s += std::norm(z[j] - b.center[j]);
            return b.radius - std::sqrt(s);
          },
          [&](const ProductDomain& p) {
            double m = std::numeric_limits<double>::infinity();
            size_t offset = 0;
            for (const auto& f : p.factors) {
              const auto n = static_cast<size_t>(f.dimension());
              m = std::min(m, f.margin(z.subspan(offset, n)));
              offset += n;
            }
            return m;
          },
          [&](const SublevelDomain& s) { return s.level - std::abs(s.evaluate(z)); },
      },
      kind_);
}

std::optional<Frame> Domain::frame(std::span<const Complex> z) const {
  if (static_cast<int>(z.size()) != dimension_)
    fail(ErrorCode::DimensionMismatch, "point dimension does not match the domain");
  Frame out;
  size_t offset = 0;
  bool ok = true;
  append_frames(*this, z, out, offset, ok);
  if (!ok) return std::nullopt;
  return out;
}

std::vector<const Domain*> Domain::factors() const {
  std::vector<const Domain*> out;
  if (const auto* p = std::get_if<ProductDomain>(&kind_)) {
    for (const auto& f : p->factors) out.push_back(&f);
  } else {
    out.push_back(this);
  }
  return out;
}

double margin(const Domain& d, std::span<const Complex> z) { return d.margin(z); }

}  // namespace pgreen
