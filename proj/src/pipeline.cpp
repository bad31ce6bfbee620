#include "pgreen/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

double distance(std::span<const Complex> x, std::span<const Complex> y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += std::norm(x[i] - y[i]);
  return std::sqrt(s);
}

Point concat(const Point& x, const Point& y) {
  Point out(x);
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

std::vector<Root> sorted_roots(std::vector<Root> roots) {
  std::stable_sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    return std::abs(x.value) < std::abs(y.value);
  });
  return roots;
}

std::vector<Root> simple_roots(std::span<const Complex> points) {
  std::vector<Root> out;
  for (const auto& p : points) out.push_back({p, 1});
  return sorted_roots(std::move(out));
}

double product_modulus(const std::vector<Root>& zeros) {
  double v = 1.0;
  for (const auto& z : zeros) v *= std::pow(std::abs(z.value), z.multiplicity);
  return v;
}

void require_point(const Domain& d, const Point& p, const char* what) {
  if (static_cast<int>(p.size()) != d.dimension())
    fail(ErrorCode::DimensionMismatch, std::string(what) + " has the wrong dimension");
  if (!(d.margin(p) > 0.0))
    fail(ErrorCode::InvalidInput, std::string(what) + " is not strictly inside its domain");
}

double sup_boundary_deviation(const AnalyticDisc& x, const AnalyticDisc& y, int grid) {
  double s = 0.0;
  for (int k = 0; k < grid; ++k) {
    const Complex l = std::polar(1.0, 2.0 * std::numbers::pi * k / grid);
    s = std::max(s, distance(x(l), y(l)));
  }
  return s;
}

ZeroMoveReport move_report(const FactorDiscData& data, const AnalyticDisc& moved,
                           std::span<const Complex> from, std::span<const Complex> to,
                           double remainder) {
  ZeroMoveReport r;
  r.division_remainder = remainder;
  r.max_shift = multiset_distance({from.begin(), from.end()}, {to.begin(), to.end()});
  r.base_residual = distance(moved(0.0), data.base);
  for (const auto& s : to) r.interpolation_residual = std::max(r.interpolation_residual, distance(moved(s), data.pole));
  r.sup_deviation = sup_boundary_deviation(moved, data.disc, 256);
  double sup = 0.0;
  for (int k = 0; k < 256; ++k) {
    const Complex l = std::polar(1.0, 2.0 * std::numbers::pi * k / 256);
    sup = std::max(sup, distance(data.disc(l), data.pole));
  }
  double weights = 0.0;
  for (const auto& s : from) weights += 1.0 / (1.0 - std::abs(s)) + 1.0 / std::abs(s);
  r.deviation_scale = sup * weights;
  Complex pf = 1.0, pt = 1.0;
  for (const auto& s : from) pf *= s;
  for (const auto& s : to) pt *= s;
  r.product_ratio_error = std::abs(pt / pf - 1.0);
  return r;
}

struct MovedFactor {
  FactorDiscData data;
  ZeroMoveReport report;
};

/// Moves zeros `from` -> `to` and range-certifies; nullopt when the moved
/// disc leaves the domain.
std::optional<MovedFactor> try_move(const FactorDiscData& data, std::span<const Complex> from,
                                    std::span<const Complex> to) {
  double remainder = 0.0;
  AnalyticDisc moved = move_zeros(data, from, to, &remainder);
  double margin = 0.0;
  try {
    margin = certify_range(moved, data.domain).margin;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InfeasibleDisc) throw;
    return std::nullopt;
  }
  MovedFactor out{data, move_report(data, moved, from, to, remainder)};
  out.report.range_margin = margin;
  out.data.disc = std::move(moved);
  out.data.zeros = simple_roots(to);
  out.data.value = product_modulus(out.data.zeros);
  return out;
}

void check_moved(const ZeroMoveReport& r) {
  if (r.base_residual > 1e-10 || r.interpolation_residual > 1e-9) {
    std::ostringstream os;
    os << "zero move broke the interpolation conditions: base residual " << r.base_residual
       << ", pole residual " << r.interpolation_residual;
    fail(ErrorCode::PerturbationFailure, os.str());
  }
}

std::vector<Complex> merge_values(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  std::vector<Complex> out;
  for (const auto* list : {&x, &y})
    for (const auto& v : *list) {
      bool seen = false;
      for (const auto& w : out)
        if (std::abs(v - w) <= 1e-9) seen = true;
      if (!seen) out.push_back(v);
    }
  return out;
}

}  // namespace

Complex FactorDiscData::zero_product() const {
  Complex p = 1.0;
  for (const auto& z : zeros) p *= std::pow(z.value, z.multiplicity);
  return p;
}

int FactorDiscData::zero_count() const {
  int n = 0;
  for (const auto& z : zeros) n += z.multiplicity;
  return n;
}

std::vector<Complex> FactorDiscData::zero_list() const {
  std::vector<Complex> out;
  for (const auto& z : zeros)
    for (int k = 0; k < z.multiplicity; ++k) out.push_back(z.value);
  return out;
}

double StageRecord::get(const std::string& key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  fail(ErrorCode::InvalidInput, "stage " + name + " has no value " + key);
}

FactorDiscData factor_data(const AnalyticDisc& disc, const Domain& domain, Point pole,
                           Point base, const PreimageOptions& options) {
  if (disc.dimension() != domain.dimension())
    fail(ErrorCode::DimensionMismatch, "disc and domain dimensions differ");
  if (static_cast<int>(pole.size()) != disc.dimension() ||
      static_cast<int>(base.size()) != disc.dimension())
    fail(ErrorCode::DimensionMismatch, "pole or base has the wrong dimension");
  if (distance(disc(0.0), base) > 1e-10)
    fail(ErrorCode::InvalidInput, "disc does not map 0 to the base point");
  const PreimageSet set = preimages(disc, pole, options);
  std::vector<Root> zeros;
  for (const auto& e : set.entries) zeros.push_back({e.point.value(), e.multiplicity});
  FactorDiscData out{disc, domain, std::move(pole), std::move(base), sorted_roots(std::move(zeros)), 1.0};
  out.value = product_modulus(out.zeros);
  return out;
}

AnalyticDisc move_zeros(const FactorDiscData& data, std::span<const Complex> from,
                        std::span<const Complex> to, double* remainder) {
  if (from.size() != to.size())
    fail(ErrorCode::InvalidInput, "zero move needs as many targets as zeros");
  Complex pf = 1.0, pt = 1.0;
  for (const auto& s : from) pf *= s;
  for (const auto& s : to) pt *= s;
  if (pf == Complex(0.0, 0.0) || pt == Complex(0.0, 0.0))
    fail(ErrorCode::DegenerateInput,
         "a zero at the origin makes the normalizing product vanish");

  Polynomial target_factor = Polynomial::constant(pf / pt);
  for (const auto& s : to) target_factor = target_factor * Polynomial::linear_factor(s);

  const Point inner_pole = data.disc.to_inner(data.pole);
  std::vector<Polynomial> coords;
  double worst = 0.0;
  for (size_t i = 0; i < inner_pole.size(); ++i) {
    const Polynomial shifted = data.disc.coordinates()[i] - Polynomial::constant(inner_pole[i]);
    auto [quotient, rest] = shifted.divide_by_roots(from);
    const double scale = std::max(shifted.max_abs_coefficient(), 1e-300);
    worst = std::max(worst, rest.max_abs_coefficient() / scale);
    coords.push_back(quotient * target_factor + Polynomial::constant(inner_pole[i]));
  }
  if (remainder) *remainder = worst;
  return AnalyticDisc(std::move(coords), data.disc.frame());
}

SimplifyResult simplify_multiplicities(const FactorDiscData& data, double delta) {
  if (!(delta > 0.0)) fail(ErrorCode::InvalidInput, "delta must be positive");
  std::vector<Complex> points;
  std::vector<int> mults;
  for (const auto& z : data.zeros) {
    if (z.value == Complex(0.0, 0.0))
      fail(ErrorCode::DegenerateInput, "pole attained at the origin: the normalizing product vanishes");
    points.push_back(z.value);
    mults.push_back(z.multiplicity);
  }
  std::vector<Complex> from = points;
  for (size_t i = 0; i < points.size(); ++i)
    for (int k = 1; k < mults[i]; ++k) from.push_back(points[i]);

  const bool simple = std::all_of(mults.begin(), mults.end(), [](int m) { return m == 1; });
  if (simple) {
    SimplifyResult out{data, move_report(data, data.disc, from, from, 0.0)};
    out.report.range_margin = certify_range(data.disc, data.domain).margin;
    return out;
  }
  for (double trial = delta; trial >= 1e-14; trial *= 0.5) {
    const PerturbedPoints split = split_multiple_points(points, mults, trial);
    auto moved = try_move(data, from, split.points);
    if (!moved) continue;
    moved->report.delta_used = split.delta_used;
    check_moved(moved->report);
    return {std::move(moved->data), moved->report};
  }
  fail(ErrorCode::PerturbationFailure,
       "no perturbation down to delta = 1e-14 keeps the disc inside its domain");
}

ReductionResult reduce_to_minimal(const FactorDiscData& data, double level) {
  if (!(level > 0.0) || !std::isfinite(level))
    fail(ErrorCode::InvalidLevel, "level must be a positive number");
  ReductionResult out{data, {}};
  for (;;) {
    auto& zeros = out.data.zeros;
    const int k = out.data.zero_count();
    if (k == 0) break;
    const double rho = std::abs(zeros.back().value);
    int m = 0;
    std::vector<Root> rest;
    for (const auto& z : zeros) {
      if (std::abs(z.value) >= rho * (1.0 - 1e-12)) {
        m += z.multiplicity;
      } else {
        rest.push_back(z);
      }
    }
    if (k - m == 0) break;
    const double rescaled = product_modulus(rest) / std::pow(rho, k - m);
    if (!(rescaled < level)) break;
    for (auto& z : rest) z.value /= rho;
    out.data.disc = out.data.disc.precompose_scale(rho);
    out.data.zeros = std::move(rest);
    out.data.value = product_modulus(out.data.zeros);
    out.steps.push_back({rho, m});
  }
  return out;
}

EqualizeResult equalize_products(const FactorDiscData& d1, const FactorDiscData& d2) {
  if (d1.zeros.empty() || d2.zeros.empty())
    fail(ErrorCode::NotAttained, "a factor disc does not attain its pole");
  const Complex p1 = d1.zero_product(), p2 = d2.zero_product();
  const bool first = std::abs(p1) <= std::abs(p2);
  const FactorDiscData& small = first ? d1 : d2;
  const FactorDiscData& large = first ? d2 : d1;
  const int nu = small.zero_count();
  const double t = std::pow(small.value / large.value, 1.0 / nu);
  for (const auto& z : small.zeros)
    if (!(std::abs(z.value) / t < 1.0 - DiscPoint::kBoundaryGuard))
      fail(ErrorCode::DegenerateInput,
           "rescaling pushes a zero to the boundary: reduce to a minimal zero set first");
  const Complex scaled = small.zero_product() / std::pow(t, nu);
  double theta = -std::arg(large.zero_product() / scaled) / nu;
  theta = std::fmod(theta, 2.0 * std::numbers::pi);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
  const Complex factor = t * std::polar(1.0, theta);

  FactorDiscData adjusted = small;
  adjusted.disc = small.disc.precompose_scale(factor);
  for (auto& z : adjusted.zeros) z.value /= factor;
  adjusted.value = product_modulus(adjusted.zeros);

  NormalizationReport report{t, theta, first ? 1 : 2, {p1, p2}, large.zero_product()};
  if (first) return {std::move(adjusted), d2, report};
  return {d1, std::move(adjusted), report};
}

Domain product_domain(const ProductProblem& problem) {
  return Domain::product({problem.domain1, problem.domain2});
}

std::pair<FactorDiscData, FactorDiscData> admit(const ProductProblem& p,
                                                const PipelineConfig& config) {
  if (!(p.level > 0.0) || !std::isfinite(p.level))
    fail(ErrorCode::InvalidLevel, "level must be a positive number");
  require_point(p.domain1, p.pole1, "pole a1");
  require_point(p.domain1, p.base1, "base a2");
  require_point(p.domain2, p.pole2, "pole b1");
  require_point(p.domain2, p.base2, "base b2");
  certify_range(p.disc1, p.domain1);
  certify_range(p.disc2, p.domain2);
  auto d1 = factor_data(p.disc1, p.domain1, p.pole1, p.base1, config.preimage);
  auto d2 = factor_data(p.disc2, p.domain2, p.pole2, p.base2, config.preimage);
  if (!(std::max(d1.value, d2.value) < p.level)) {
    std::ostringstream os;
    os.precision(17);
    os << "level " << p.level << " does not exceed the factor values " << d1.value << " and "
       << d2.value;
    fail(ErrorCode::InvalidLevel, os.str());
  }
  return {std::move(d1), std::move(d2)};
}

CoveringMap ProductDiscCertificate::covering() const {
  return covering_map(punctures, basepoint, config.branch);
}

GammaMap::GammaMap(const ProductDiscCertificate& cert) : cert_(&cert) {
  if (cert.kind == CertificateKind::Covering) {
    const CoveringMap pi = cert.covering();
    lift1_.emplace(cert.blaschke1, pi, cert.config.lift);
    lift2_.emplace(cert.blaschke2, pi, cert.config.lift);
  }
}

Point GammaMap::operator()(Complex lambda) const {
  if (std::abs(lambda) > 1.0 + 1e-12)
    fail(ErrorCode::InvalidInput, "gamma is evaluated on the closed unit disc");
  const auto& c = *cert_;
  if (c.kind == CertificateKind::Direct) {
    if (c.direct_factor == 1) return concat(c.disc1(lambda), c.problem.pole2);
    return concat(c.problem.pole1, c.disc2(lambda));
  }
  const Complex s = c.radius * lambda;
  return concat(c.disc1((*lift1_)(s)), c.disc2((*lift2_)(s)));
}

CertificateChecks evaluate_checks(const ProductDiscCertificate& cert) {
  CertificateChecks out;
  const GammaMap gamma(cert);
  const Point base = concat(cert.problem.base1, cert.problem.base2);
  const Point pole = concat(cert.problem.pole1, cert.problem.pole2);
  out.base_residual = distance(gamma(0.0), base);
  for (const auto& z : cert.gamma_zeros)
    out.zero_residual = std::max(out.zero_residual, distance(gamma(z.value), pole));
  const Domain d = product_domain(cert.problem);
  out.min_margin = d.margin(gamma(0.0));
  for (int i = 1; i <= 32; ++i)
    for (int j = 0; j < 32; ++j)
      out.min_margin = std::min(
          out.min_margin, d.margin(gamma(std::polar(i / 32.0, 2.0 * std::numbers::pi * j / 32))));
  if (cert.kind == CertificateKind::Covering) {
    out.lift_residual1 = gamma.lift1()->grid_residual(cert.radius, 64, 32);
    out.lift_residual2 = gamma.lift2()->grid_residual(cert.radius, 64, 32);
  }
  return out;
}

namespace {

void require_checks(const ProductDiscCertificate& cert) {
  const auto& c = cert.checks;
  std::ostringstream os;
  os.precision(6);
  if (c.base_residual > 1e-8) os << " gamma(0) residual " << c.base_residual << ";";
  if (c.zero_residual > 1e-6) os << " gamma(lambda_j) residual " << c.zero_residual << ";";
  if (!(c.min_margin > 0.0)) os << " margin " << c.min_margin << ";";
  if (c.lift_residual1 > 1e-6 || c.lift_residual2 > 1e-6)
    os << " lift residuals " << c.lift_residual1 << ", " << c.lift_residual2 << ";";
  if (!(cert.achieved < cert.problem.level)) os << " achieved " << cert.achieved << ";";
  if (!os.str().empty()) fail(ErrorCode::VerificationFailure, "assembled gamma fails:" + os.str());
}

StageRecord inputs_stage(const ProductProblem& p, const PipelineConfig& c) {
  return {"inputs",
          {{"level", p.level},
           {"simplify_delta", c.simplify_delta},
           {"decritalize_delta", c.decritalize_delta},
           {"branch", static_cast<double>(c.branch)},
           {"min_radius_index", static_cast<double>(c.min_radius_index)},
           {"max_radius_index", static_cast<double>(c.max_radius_index)},
           {"lift_tolerance", c.lift.tolerance},
           {"lift_initial_step", c.lift.initial_step},
           {"lift_min_step", c.lift.min_step},
           {"lift_obstruction", c.lift.obstruction},
           {"lift_newton_iterations", static_cast<double>(c.lift.newton_iterations)},
           {"quadrature_initial_nodes", static_cast<double>(c.quadrature.initial_nodes)},
           {"quadrature_max_nodes", static_cast<double>(c.quadrature.max_nodes)},
           {"quadrature_tolerance", c.quadrature.tolerance},
           {"preimage_tol", c.preimage.tol},
           {"preimage_boundary_tol", c.preimage.boundary_tol},
           {"preimage_multiplicity_tol", c.preimage.multiplicity_tol}}};
}

ProductDiscCertificate direct_certificate(const ProductProblem& problem,
                                          const PipelineConfig& config,
                                          const FactorDiscData& d1, const FactorDiscData& d2,
                                          bool first_trivial, bool second_trivial) {
  ProductDiscCertificate cert;
  cert.kind = CertificateKind::Direct;
  cert.problem = problem;
  cert.config = config;
  cert.disc1 = problem.disc1;
  cert.disc2 = problem.disc2;
  // Keep the disc of the factor whose pole is not its base; with both
  // trivial the second factor's disc already gives 0.
  const bool keep_second = first_trivial && (!second_trivial || d2.value <= d1.value);
  cert.direct_factor = keep_second ? 2 : 1;
  const FactorDiscData& kept = keep_second ? d2 : d1;
  cert.gamma_zeros = kept.zeros;
  cert.achieved = kept.value;
  cert.stages.push_back(inputs_stage(problem, config));
  cert.stages.push_back({"direct",
                         {{"factor", static_cast<double>(cert.direct_factor)},
                          {"value1", d1.value},
                          {"value2", d2.value}}});
  cert.checks = evaluate_checks(cert);
  cert.stages.push_back({"assembly",
                         {{"base_residual", cert.checks.base_residual},
                          {"zero_residual", cert.checks.zero_residual},
                          {"min_margin", cert.checks.min_margin},
                          {"achieved", cert.achieved}}});
  require_checks(cert);
  return cert;
}

struct Decritalized {
  FactorDiscData data;
  BlaschkeProduct product;
  DecritalizeResult result;
  ZeroMoveReport report;
};

Decritalized decritalize_factor(const FactorDiscData& data, double delta) {
  const BlaschkeProduct b = BlaschkeProduct::from_points(data.zero_list());
  for (double trial = delta; trial >= 1e-14; trial *= 0.5) {
    DecritalizeResult r = decritalize(b, trial);
    const std::vector<Complex> from = data.zero_list();
    if (!r.changed) {
      ZeroMoveReport rep = move_report(data, data.disc, from, from, 0.0);
      rep.range_margin = certify_range(data.disc, data.domain).margin;
      return {data, r.product, r, rep};
    }
    const std::vector<Complex> to = r.product.zero_list();
    auto moved = try_move(data, from, to);
    if (!moved) continue;
    moved->report.delta_used = r.delta_used;
    check_moved(moved->report);
    return {std::move(moved->data), r.product, r, moved->report};
  }
  fail(ErrorCode::PerturbationFailure,
       "critical-value avoidance could not keep the disc inside its domain");
}

void add_move(StageRecord& s, const std::string& suffix, const ZeroMoveReport& r) {
  s.values.push_back({"delta_used" + suffix, r.delta_used});
  s.values.push_back({"max_shift" + suffix, r.max_shift});
  s.values.push_back({"base_residual" + suffix, r.base_residual});
  s.values.push_back({"interpolation_residual" + suffix, r.interpolation_residual});
  s.values.push_back({"division_remainder" + suffix, r.division_remainder});
  s.values.push_back({"sup_deviation" + suffix, r.sup_deviation});
  s.values.push_back({"deviation_scale" + suffix, r.deviation_scale});
  s.values.push_back({"range_margin" + suffix, r.range_margin});
}

}  // namespace

ProductDiscCertificate run_pipeline(const ProductProblem& problem, const PipelineConfig& config) {
  if (config.min_radius_index < 1 || config.max_radius_index > 52 ||
      config.min_radius_index > config.max_radius_index)
    fail(ErrorCode::InvalidInput, "radius index range must satisfy 1 <= min <= max <= 52");
  auto [d1, d2] = admit(problem, config);

  const bool first_trivial = distance(problem.pole1, problem.base1) == 0.0;
  const bool second_trivial = distance(problem.pole2, problem.base2) == 0.0;
  if (first_trivial || second_trivial)
    return direct_certificate(problem, config, d1, d2, first_trivial, second_trivial);

  ProductDiscCertificate cert;
  cert.kind = CertificateKind::Covering;
  cert.problem = problem;
  cert.config = config;
  const double level = problem.level;
  cert.stages.push_back(inputs_stage(problem, config));

  auto s1 = simplify_multiplicities(d1, config.simplify_delta);
  auto s2 = simplify_multiplicities(d2, config.simplify_delta);
  StageRecord simplification{"simplification", {}};
  add_move(simplification, "1", s1.report);
  add_move(simplification, "2", s2.report);
  cert.stages.push_back(simplification);

  auto r1 = reduce_to_minimal(s1.data, level);
  auto r2 = reduce_to_minimal(s2.data, level);
  StageRecord reduction{"reduction", {}};
  for (const auto* r : {&r1, &r2}) {
    const std::string i = r == &r1 ? "1" : "2";
    double t = 1.0;
    int dropped = 0;
    for (const auto& s : r->steps) {
      t *= s.t;
      dropped += s.dropped;
    }
    const double outer = std::abs(r->data.zeros.back().value);
    reduction.values.push_back({"steps" + i, static_cast<double>(r->steps.size())});
    reduction.values.push_back({"dropped" + i, static_cast<double>(dropped)});
    reduction.values.push_back({"scale" + i, t});
    reduction.values.push_back({"value" + i, r->data.value});
    reduction.values.push_back(
        {"minimality_bound" + i, level * std::pow(outer, r->data.zero_count())});
  }
  cert.stages.push_back(reduction);

  auto eq = equalize_products(r1.data, r2.data);
  const Complex c1 = eq.first.zero_product(), c2 = eq.second.zero_product();
  cert.stages.push_back({"normalization",
                         {{"t", eq.report.t},
                          {"theta", eq.report.theta},
                          {"adjusted", static_cast<double>(eq.report.adjusted)},
                          {"product_before1", std::abs(eq.report.products_before.first)},
                          {"product_before2", std::abs(eq.report.products_before.second)},
                          {"product_residual", std::abs(c1 - c2)}}});
  if (std::abs(c1 - c2) > 1e-10)
    fail(ErrorCode::PerturbationFailure, "normalized zero products differ");

  auto dc1 = decritalize_factor(eq.first, config.decritalize_delta);
  auto dc2 = decritalize_factor(eq.second, config.decritalize_delta);
  const Complex basepoint = dc1.product(0.0);
  StageRecord decrit{"decritalization", {}};
  add_move(decrit, "1", dc1.report);
  add_move(decrit, "2", dc2.report);
  decrit.values.push_back({"changed1", dc1.result.changed ? 1.0 : 0.0});
  decrit.values.push_back({"changed2", dc2.result.changed ? 1.0 : 0.0});
  decrit.values.push_back({"separation1", dc1.result.separation});
  decrit.values.push_back({"separation2", dc2.result.separation});
  decrit.values.push_back({"basepoint_residual", std::abs(dc2.product(0.0) - basepoint)});
  cert.stages.push_back(decrit);
  if (std::abs(dc2.product(0.0) - basepoint) > 1e-10)
    fail(ErrorCode::PerturbationFailure, "B1(0) and B2(0) disagree after decritalization");

  cert.disc1 = dc1.data.disc;
  cert.disc2 = dc2.data.disc;
  cert.blaschke1 = dc1.product;
  cert.blaschke2 = dc2.product;
  cert.basepoint = basepoint;

  const auto cd1 = critical_data(dc1.product), cd2 = critical_data(dc2.product);
  cert.punctures = merge_values(cd1.values, cd2.values);
  if (cert.punctures.size() >= 2) {
    std::ostringstream os;
    os << "the critical values form " << cert.punctures.size()
       << " distinct points; coverings of the disc minus two or more points are not supported";
    fail(ErrorCode::UnsupportedCovering, os.str());
  }
  const CoveringMap pi = covering_map(cert.punctures, basepoint, config.branch);
  cert.mu = pi.mu();
  double nearest = 1.0;
  for (const auto& v : cd1.values) nearest = std::min(nearest, std::abs(v - basepoint));
  for (const auto& v : cd2.values) nearest = std::min(nearest, std::abs(v - basepoint));
  cert.stages.push_back({"covering",
                         {{"punctures", static_cast<double>(cert.punctures.size())},
                          {"basepoint_residual", std::abs(pi.value(0.0) - basepoint)},
                          {"critical_value_gap", nearest}}});

  const double log_bound = std::log(level);
  int skipped = 0;
  std::optional<JensenCertificate> jensen;
  int index = 0;
  for (int k = config.min_radius_index; k <= config.max_radius_index; ++k) {
    const double r = 1.0 - std::ldexp(1.0, -k);
    try {
      JensenCertificate j = jensen_certificate(pi, r, log_bound, config.quadrature);
      if (!j.quadrature_converged || !j.consistent() || !j.valid()) {
        ++skipped;
        continue;
      }
      jensen = std::move(j);
      index = k;
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RadiusNudge) throw;
      ++skipped;
    }
  }
  if (!jensen) {
    std::ostringstream os;
    os << "no radius 1 - 2^-k with k in [" << config.min_radius_index << ", "
       << config.max_radius_index << "] certifies the level";
    fail(ErrorCode::RadiusSearchFailure, os.str());
  }
  cert.radius = jensen->radius;
  cert.radius_index = index;
  cert.gamma_zeros = jensen->interior_zeros;
  cert.achieved = 1.0;
  for (const auto& z : cert.gamma_zeros) cert.achieved *= std::pow(std::abs(z.value), z.multiplicity);
  cert.stages.push_back({"radius",
                         {{"index", static_cast<double>(index)},
                          {"radius", cert.radius},
                          {"skipped", static_cast<double>(skipped)},
                          {"lhs", jensen->lhs()},
                          {"log_bound", log_bound},
                          {"identity_residual", jensen->identity_residual}}});
  cert.jensen = std::move(jensen);

  cert.checks = evaluate_checks(cert);
  cert.stages.insert(cert.stages.end() - 1,
                     StageRecord{"lifts",
                                 {{"residual1", cert.checks.lift_residual1},
                                  {"residual2", cert.checks.lift_residual2}}});
  cert.stages.push_back({"assembly",
                         {{"base_residual", cert.checks.base_residual},
                          {"zero_residual", cert.checks.zero_residual},
                          {"min_margin", cert.checks.min_margin},
                          {"achieved", cert.achieved}}});
  if (cert.checks.lift_residual1 > 1e-6 || cert.checks.lift_residual2 > 1e-6)
    fail(ErrorCode::LiftingObstruction, "lift residual exceeds 1e-6 on the radius grid");
  require_checks(cert);
  return cert;
}

}  // namespace pgreen
