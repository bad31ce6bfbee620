#include "pgreen/serialize.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::InvalidInput, path + ": " + what);
}

class Fields {
 public:
  Fields(const Json& j, std::string path, std::initializer_list<const char*> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) bad(path_, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
      if (!ok.count(key)) bad(path_, "unknown key '" + key + "'");
  }

  const Json& at(const char* key) const {
    const auto it = j_.find(key);
    if (it == j_.end()) bad(path_, std::string("missing key '") + key + "'");
    return *it;
  }
  const Json* find(const char* key) const {
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  std::string sub(const char* key) const { return path_ + "." + key; }

 private:
  const Json& j_;
  std::string path_;
};

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(path, "expected a finite number");
  return v;
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) bad(path, "expected true or false");
  return j.get<bool>();
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  return j;
}

std::string index_path(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Runs a constructor that validates its input, reporting failures at `path`.
template <class F>
auto checked(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Json polynomial_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& c : p.coefficients()) out.push_back(complex_json(c));
  if (out.empty()) out.push_back(complex_json(0.0));
  return out;
}

Polynomial polynomial_from(const Json& j, const std::string& path) {
  std::vector<Complex> c;
  const Json& a = array(j, path);
  if (a.empty()) bad(path, "a polynomial needs at least one coefficient");
  for (size_t i = 0; i < a.size(); ++i) c.push_back(complex_from(a[i], index_path(path, i)));
  return Polynomial(std::move(c));
}

Json stage_json(const StageRecord& s) {
  Json values = Json::object();
  for (const auto& [k, v] : s.values) values[k] = v;
  return {{"name", s.name}, {"values", values}};
}

StageRecord stage_from(const Json& j, const std::string& path) {
  const Fields f(j, path, {"name", "values"});
  StageRecord s;
  s.name = text(f.at("name"), f.sub("name"));
  const Json& values = f.at("values");
  if (!values.is_object()) bad(f.sub("values"), "expected an object");
  for (const auto& [k, v] : values.items())
    s.values.push_back({k, number(v, f.sub("values") + "." + k)});
  return s;
}

Json checks_json(const CertificateChecks& c) {
  return {{"base_residual", c.base_residual},
          {"zero_residual", c.zero_residual},
          {"min_margin", c.min_margin},
          {"lift_residual1", c.lift_residual1},
          {"lift_residual2", c.lift_residual2}};
}

CertificateChecks checks_from(const Json& j, const std::string& path) {
  const Fields f(j, path,
                 {"base_residual", "zero_residual", "min_margin", "lift_residual1", "lift_residual2"});
  CertificateChecks c;
  c.base_residual = number(f.at("base_residual"), f.sub("base_residual"));
  c.zero_residual = number(f.at("zero_residual"), f.sub("zero_residual"));
  c.min_margin = number(f.at("min_margin"), f.sub("min_margin"));
  c.lift_residual1 = number(f.at("lift_residual1"), f.sub("lift_residual1"));
  c.lift_residual2 = number(f.at("lift_residual2"), f.sub("lift_residual2"));
  return c;
}

}  // namespace

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) bad(path, "expected [re, im]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

Json point_json(std::span<const Complex> p) {
  Json out = Json::array();
  for (const auto& z : p) out.push_back(complex_json(z));
  return out;
}

Point point_from(const Json& j, const std::string& path) {
  const Json& a = array(j, path);
  if (a.empty()) bad(path, "a point needs at least one coordinate");
  Point p;
  for (size_t i = 0; i < a.size(); ++i) p.push_back(complex_from(a[i], index_path(path, i)));
  return p;
}

Json roots_json(std::span<const Root> roots) {
  Json out = Json::array();
  for (const auto& r : roots) out.push_back({{"point", complex_json(r.value)}, {"mult", r.multiplicity}});
  return out;
}

std::vector<Root> roots_from(const Json& j, const std::string& path) {
  std::vector<Root> out;
  const Json& a = array(j, path);
  for (size_t i = 0; i < a.size(); ++i) {
    const std::string p = index_path(path, i);
    const Fields f(a[i], p, {"point", "mult"});
    const int m = integer(f.at("mult"), f.sub("mult"));
    if (m < 1) bad(f.sub("mult"), "multiplicity must be positive");
    out.push_back({complex_from(f.at("point"), f.sub("point")), m});
  }
  return out;
}

Json blaschke_json(const BlaschkeProduct& b) {
  Json zeros = Json::array();
  for (const auto& z : b.zeros())
    zeros.push_back({{"point", complex_json(z.point.value())}, {"mult", z.multiplicity}});
  return {{"phase", complex_json(b.phase())}, {"zeros", zeros}};
}

BlaschkeProduct blaschke_from(const Json& j, const std::string& path) {
  const Fields f(j, path, {"phase", "zeros"});
  const Complex phase = complex_from(f.at("phase"), f.sub("phase"));
  std::vector<BlaschkeZero> zeros;
  for (const auto& r : roots_from(f.at("zeros"), f.sub("zeros"))) {
    const DiscPoint p = checked(f.sub("zeros"), [&] { return DiscPoint(r.value); });
    zeros.push_back({p, r.multiplicity});
  }
  return checked(path, [&] { return BlaschkeProduct(std::move(zeros), phase); });
}

Json disc_json(const AnalyticDisc& phi) {
  Json coords = Json::array();
  for (const auto& c : phi.coordinates()) coords.push_back(polynomial_json(c));
  Json out{{"dimension", phi.dimension()}, {"degree", phi.degree()}, {"coords", coords}};
  if (phi.framed()) {
    Json frame = Json::array();
    for (const auto& b : phi.frame())
      frame.push_back({{"center", point_json(b.center)}, {"radius", b.radius}, {"base", point_json(b.base)}});
    out["frame"] = frame;
  }
  return out;
}

AnalyticDisc disc_from(const Json& j, const std::string& path) {
  const Fields f(j, path, {"dimension", "degree", "coords", "frame"});
  const int dimension = integer(f.at("dimension"), f.sub("dimension"));
  const Json& coords = array(f.at("coords"), f.sub("coords"));
  std::vector<Polynomial> polys;
  for (size_t i = 0; i < coords.size(); ++i)
    polys.push_back(polynomial_from(coords[i], index_path(f.sub("coords"), i)));
  if (static_cast<int>(polys.size()) != dimension)
    bad(f.sub("dimension"), "does not match the number of coordinates");
  Frame frame;
  if (const Json* fr = f.find("frame")) {
    const Json& blocks = array(*fr, f.sub("frame"));
    for (size_t i = 0; i < blocks.size(); ++i) {
      const std::string p = index_path(f.sub("frame"), i);
      const Fields b(blocks[i], p, {"center", "radius", "base"});
      frame.push_back({point_from(b.at("center"), b.sub("center")),
                       number(b.at("radius"), b.sub("radius")),
                       point_from(b.at("base"), b.sub("base"))});
    }
  }
  AnalyticDisc disc = checked(path, [&] { return AnalyticDisc(std::move(polys), std::move(frame)); });
  if (disc.degree() != integer(f.at("degree"), f.sub("degree")))
    bad(f.sub("degree"), "does not match the coordinates");
  return disc;
}

Json domain_json(const Domain& d) {
  Json params = std::visit(
      [](const auto& k) -> Json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, PolydiscDomain>) {
          return {{"center", point_json(k.center)}, {"radii", k.radii}};
        } else if constexpr (std::is_same_v<T, BallDomain>) {
          return {{"center", point_json(k.center)}, {"radius", k.radius}};
        } else if constexpr (std::is_same_v<T, ProductDomain>) {
          Json factors = Json::array();
          for (const auto& f : k.factors) factors.push_back(domain_json(f));
          return {{"factors", factors}};
        } else {
          Json terms = Json::array();
          for (const auto& t : k.terms)
            terms.push_back({{"coefficient", complex_json(t.coefficient)}, {"exponents", t.exponents}});
          return {{"dimension", k.dimension}, {"terms", terms}, {"level", k.level}};
        }
      },
      d.kind());
  return {{"kind", d.kind_name()}, {"params", params}};
}

Domain domain_from(const Json& j, const std::string& path) {
  const Fields f(j, path, {"kind", "params"});
  const std::string kind = text(f.at("kind"), f.sub("kind"));
  const std::string pp = f.sub("params");
  const Json& params = f.at("params");
  if (kind == "polydisc") {
    const Fields p(params, pp, {"center", "radii"});
    PolydiscDomain d{point_from(p.at("center"), p.sub("center")), {}};
    const Json& radii = array(p.at("radii"), p.sub("radii"));
    for (size_t i = 0; i < radii.size(); ++i) d.radii.push_back(number(radii[i], index_path(p.sub("radii"), i)));
    return checked(path, [&] { return Domain(std::move(d)); });
  }
  if (kind == "ball") {
    const Fields p(params, pp, {"center", "radius"});
    BallDomain d{point_from(p.at("center"), p.sub("center")), number(p.at("radius"), p.sub("radius"))};
    return checked(path, [&] { return Domain(std::move(d)); });
  }
  if (kind == "product") {
    const Fields p(params, pp, {"factors"});
    const Json& factors = array(p.at("factors"), p.sub("factors"));
    std::vector<Domain> out;
    for (size_t i = 0; i < factors.size(); ++i) out.push_back(domain_from(factors[i], index_path(p.sub("factors"), i)));
    return checked(path, [&] { return Domain::product(std::move(out)); });
  }
  if (kind == "sublevel") {
    const Fields p(params, pp, {"dimension", "terms", "level"});
    SublevelDomain d;
    d.dimension = integer(p.at("dimension"), p.sub("dimension"));
    d.level = number(p.at("level"), p.sub("level"));
    const Json& terms = array(p.at("terms"), p.sub("terms"));
    for (size_t i = 0; i < terms.size(); ++i) {
      const std::string tp = index_path(p.sub("terms"), i);
      const Fields t(terms[i], tp, {"coefficient", "exponents"});
      Monomial m{complex_from(t.at("coefficient"), t.sub("coefficient")), {}};
      const Json& e = array(t.at("exponents"), t.sub("exponents"));
      for (size_t k = 0; k < e.size(); ++k) {
        const int v = integer(e[k], index_path(t.sub("exponents"), k));
        if (v < 0) bad(index_path(t.sub("exponents"), k), "exponents must be nonnegative");
        m.exponents.push_back(v);
      }
      d.terms.push_back(std::move(m));
    }
    return checked(path, [&] { return Domain(std::move(d)); });
  }
  bad(f.sub("kind"), "unknown domain kind '" + kind + "'");
}

Json green_json(const GreenValue& v) {
  return {{"value", v.value}, {"method", to_string(v.method)}, {"evidence_id", v.evidence_id}};
}

Json query_json(const GreenQuery& q) {
  return {{"domain", domain_json(q.domain)}, {"pole", point_json(q.pole)}, {"eval", point_json(q.eval)}};
}

GreenQuery query_from(const Json& j, const std::string& path) {
  const Fields f(j, path, {"domain", "pole", "eval"});
  Domain d = domain_from(f.at("domain"), f.sub("domain"));
  Point a = point_from(f.at("pole"), f.sub("pole"));
  Point z = point_from(f.at("eval"), f.sub("eval"));
  return checked(path, [&] { return make_query(std::move(d), std::move(a), std::move(z)); });
}

Json optimizer_config_json(const OptimizerConfig& c) {
  return {{"restarts", c.restarts},
          {"max_iterations", c.max_iterations},
          {"penalty_weight", c.penalty_weight},
          {"boundary_grid", c.boundary_grid},
          {"rng_seed", c.rng_seed},
          {"simplex_radius", c.simplex_radius},
          {"degree", c.degree},
          {"tolerance", c.tolerance}};
}

OptimizerConfig optimizer_config_from(const Json& j, const std::string& path) {
  const Fields f(j, path,
                 {"restarts", "max_iterations", "penalty_weight", "boundary_grid", "rng_seed",
                  "simplex_radius", "degree", "tolerance"});
  OptimizerConfig c;
  if (const Json* v = f.find("restarts")) c.restarts = integer(*v, f.sub("restarts"));
  if (const Json* v = f.find("max_iterations")) c.max_iterations = integer(*v, f.sub("max_iterations"));
  if (const Json* v = f.find("penalty_weight")) c.penalty_weight = number(*v, f.sub("penalty_weight"));
  if (const Json* v = f.find("boundary_grid")) c.boundary_grid = integer(*v, f.sub("boundary_grid"));
  if (const Json* v = f.find("rng_seed")) {
    if (!v->is_number_unsigned()) bad(f.sub("rng_seed"), "expected a nonnegative integer");
    c.rng_seed = v->get<std::uint64_t>();
  }
  if (const Json* v = f.find("simplex_radius")) c.simplex_radius = number(*v, f.sub("simplex_radius"));
  if (const Json* v = f.find("degree")) c.degree = integer(*v, f.sub("degree"));
  if (const Json* v = f.find("tolerance")) c.tolerance = number(*v, f.sub("tolerance"));
  return c;
}

Json upper_bound_json(const UpperBoundResult& r) {
  return {{"value", r.value},
          {"method", to_string(GreenMethod::DiscUpperBound)},
          {"disc", disc_json(r.disc)},
          {"feasibility_margin", r.feasibility_margin},
          {"iterations_used", r.iterations_used},
          {"restart", r.restart}};
}

Json jensen_json(const JensenCertificate& c) {
  return {{"radius", c.radius},
          {"log_abs_center", c.log_abs_center},
          {"boundary_mean", c.boundary_mean},
          {"interior_zeros", roots_json(c.interior_zeros)},
          {"log_bound", c.log_bound},
          {"identity_residual", c.identity_residual},
          {"nodes", c.nodes},
          {"quadrature_converged", c.quadrature_converged}};
}

JensenCertificate jensen_from(const Json& j, const std::string& path) {
  const Fields f(j, path,
                 {"radius", "log_abs_center", "boundary_mean", "interior_zeros", "log_bound",
                  "identity_residual", "nodes", "quadrature_converged"});
  JensenCertificate c;
  c.radius = number(f.at("radius"), f.sub("radius"));
  c.log_abs_center = number(f.at("log_abs_center"), f.sub("log_abs_center"));
  c.boundary_mean = number(f.at("boundary_mean"), f.sub("boundary_mean"));
  c.interior_zeros = roots_from(f.at("interior_zeros"), f.sub("interior_zeros"));
  c.log_bound = number(f.at("log_bound"), f.sub("log_bound"));
  c.identity_residual = number(f.at("identity_residual"), f.sub("identity_residual"));
  c.nodes = integer(f.at("nodes"), f.sub("nodes"));
  c.quadrature_converged = boolean(f.at("quadrature_converged"), f.sub("quadrature_converged"));
  return c;
}

Json pipeline_config_json(const PipelineConfig& c) {
  return {{"simplify_delta", c.simplify_delta},
          {"decritalize_delta", c.decritalize_delta},
          {"branch", c.branch},
          {"min_radius_index", c.min_radius_index},
          {"max_radius_index", c.max_radius_index},
          {"lift",
           {{"tolerance", c.lift.tolerance},
            {"initial_step", c.lift.initial_step},
            {"min_step", c.lift.min_step},
            {"obstruction", c.lift.obstruction},
            {"newton_iterations", c.lift.newton_iterations}}},
          {"quadrature",
           {{"initial_nodes", c.quadrature.initial_nodes},
            {"max_nodes", c.quadrature.max_nodes},
            {"tolerance", c.quadrature.tolerance}}},
          {"preimage",
           {{"tol", c.preimage.tol},
            {"boundary_tol", c.preimage.boundary_tol},
            {"multiplicity_tol", c.preimage.multiplicity_tol}}}};
}

PipelineConfig pipeline_config_from(const Json& j, const std::string& path) {
  const Fields f(j, path,
                 {"simplify_delta", "decritalize_delta", "branch", "min_radius_index",
                  "max_radius_index", "lift", "quadrature", "preimage"});
  PipelineConfig c;
  if (const Json* v = f.find("simplify_delta")) c.simplify_delta = number(*v, f.sub("simplify_delta"));
  if (const Json* v = f.find("decritalize_delta")) c.decritalize_delta = number(*v, f.sub("decritalize_delta"));
  if (const Json* v = f.find("branch")) c.branch = integer(*v, f.sub("branch"));
  if (const Json* v = f.find("min_radius_index")) c.min_radius_index = integer(*v, f.sub("min_radius_index"));
  if (const Json* v = f.find("max_radius_index")) c.max_radius_index = integer(*v, f.sub("max_radius_index"));
  if (const Json* l = f.find("lift")) {
    const std::string p = f.sub("lift");
    const Fields g(*l, p, {"tolerance", "initial_step", "min_step", "obstruction", "newton_iterations"});
    if (const Json* v = g.find("tolerance")) c.lift.tolerance = number(*v, g.sub("tolerance"));
    if (const Json* v = g.find("initial_step")) c.lift.initial_step = number(*v, g.sub("initial_step"));
    if (const Json* v = g.find("min_step")) c.lift.min_step = number(*v, g.sub("min_step"));
    if (const Json* v = g.find("obstruction")) c.lift.obstruction = number(*v, g.sub("obstruction"));
    if (const Json* v = g.find("newton_iterations")) c.lift.newton_iterations = integer(*v, g.sub("newton_iterations"));
  }
  if (const Json* q = f.find("quadrature")) {
    const Fields g(*q, f.sub("quadrature"), {"initial_nodes", "max_nodes", "tolerance"});
    if (const Json* v = g.find("initial_nodes")) c.quadrature.initial_nodes = integer(*v, g.sub("initial_nodes"));
    if (const Json* v = g.find("max_nodes")) c.quadrature.max_nodes = integer(*v, g.sub("max_nodes"));
    if (const Json* v = g.find("tolerance")) c.quadrature.tolerance = number(*v, g.sub("tolerance"));
  }
  if (const Json* q = f.find("preimage")) {
    const Fields g(*q, f.sub("preimage"), {"tol", "boundary_tol", "multiplicity_tol"});
    if (const Json* v = g.find("tol")) c.preimage.tol = number(*v, g.sub("tol"));
    if (const Json* v = g.find("boundary_tol")) c.preimage.boundary_tol = number(*v, g.sub("boundary_tol"));
    if (const Json* v = g.find("multiplicity_tol")) c.preimage.multiplicity_tol = number(*v, g.sub("multiplicity_tol"));
  }
  return c;
}

Json problem_json(const ProductProblem& p) {
  return {{"domain1", domain_json(p.domain1)}, {"domain2", domain_json(p.domain2)},
          {"pole1", point_json(p.pole1)},      {"pole2", point_json(p.pole2)},
          {"base1", point_json(p.base1)},      {"base2", point_json(p.base2)},
          {"level", p.level},                  {"disc1", disc_json(p.disc1)},
          {"disc2", disc_json(p.disc2)}};
}

ProductProblem problem_from(const Json& j, const std::string& path) {
  const Fields f(j, path,
                 {"domain1", "domain2", "pole1", "pole2", "base1", "base2", "level", "disc1", "disc2"});
  ProductProblem p;
  p.domain1 = domain_from(f.at("domain1"), f.sub("domain1"));
  p.domain2 = domain_from(f.at("domain2"), f.sub("domain2"));
  p.pole1 = point_from(f.at("pole1"), f.sub("pole1"));
  p.pole2 = point_from(f.at("pole2"), f.sub("pole2"));
  p.base1 = point_from(f.at("base1"), f.sub("base1"));
  p.base2 = point_from(f.at("base2"), f.sub("base2"));
  p.level = number(f.at("level"), f.sub("level"));
  p.disc1 = disc_from(f.at("disc1"), f.sub("disc1"));
  p.disc2 = disc_from(f.at("disc2"), f.sub("disc2"));
  return p;
}

Json tolerances_json(const CertificateTolerances& t) {
  return {{"base_residual", t.base_residual},
          {"zero_residual", t.zero_residual},
          {"lift_residual", t.lift_residual},
          {"identity_residual", t.identity_residual},
          {"replay_relative", t.replay_relative}};
}

Json certificate_json(const ProductDiscCertificate& cert) {
  Json stages = Json::array();
  for (const auto& s : cert.stages) stages.push_back(stage_json(s));
  Json gamma{{"disc1", disc_json(cert.disc1)},
             {"disc2", disc_json(cert.disc2)},
             {"direct_factor", cert.direct_factor},
             {"blaschke1", blaschke_json(cert.blaschke1)},
             {"blaschke2", blaschke_json(cert.blaschke2)},
             {"punctures", point_json(cert.punctures)},
             {"basepoint", complex_json(cert.basepoint)},
             {"mu", complex_json(cert.mu)},
             {"radius", cert.radius},
             {"radius_index", cert.radius_index},
             {"lift", pipeline_config_json(cert.config)["lift"]}};
  return {{"format", kCertificateFormat},
          {"kind", cert.kind == CertificateKind::Covering ? "covering" : "direct"},
          {"problem", problem_json(cert.problem)},
          {"config", pipeline_config_json(cert.config)},
          {"tolerances", tolerances_json({})},
          {"stages", stages},
          {"gamma", gamma},
          {"gamma_zeros", roots_json(cert.gamma_zeros)},
          {"achieved", cert.achieved},
          {"jensen", cert.jensen ? jensen_json(*cert.jensen) : Json(nullptr)},
          {"checks", checks_json(cert.checks)}};
}

ProductDiscCertificate certificate_from(const Json& j) {
  const Fields f(j, "$",
                 {"format", "kind", "problem", "config", "tolerances", "stages", "gamma",
                  "gamma_zeros", "achieved", "jensen", "checks"});
  if (text(f.at("format"), f.sub("format")) != kCertificateFormat)
    bad(f.sub("format"), std::string("expected '") + kCertificateFormat + "'");
  ProductDiscCertificate c;
  const std::string kind = text(f.at("kind"), f.sub("kind"));
  if (kind == "covering") c.kind = CertificateKind::Covering;
  else if (kind == "direct") c.kind = CertificateKind::Direct;
  else bad(f.sub("kind"), "expected 'covering' or 'direct'");
  c.problem = problem_from(f.at("problem"), f.sub("problem"));
  c.config = pipeline_config_from(f.at("config"), f.sub("config"));
  const Json& stages = array(f.at("stages"), f.sub("stages"));
  for (size_t i = 0; i < stages.size(); ++i) c.stages.push_back(stage_from(stages[i], index_path(f.sub("stages"), i)));

  const std::string gp = f.sub("gamma");
  const Fields g(f.at("gamma"), gp,
                 {"disc1", "disc2", "direct_factor", "blaschke1", "blaschke2", "punctures",
                  "basepoint", "mu", "radius", "radius_index", "lift"});
  c.disc1 = disc_from(g.at("disc1"), g.sub("disc1"));
  c.disc2 = disc_from(g.at("disc2"), g.sub("disc2"));
  c.direct_factor = integer(g.at("direct_factor"), g.sub("direct_factor"));
  c.blaschke1 = blaschke_from(g.at("blaschke1"), g.sub("blaschke1"));
  c.blaschke2 = blaschke_from(g.at("blaschke2"), g.sub("blaschke2"));
  const Json& punctures = array(g.at("punctures"), g.sub("punctures"));
  for (size_t i = 0; i < punctures.size(); ++i)
    c.punctures.push_back(complex_from(punctures[i], index_path(g.sub("punctures"), i)));
  c.basepoint = complex_from(g.at("basepoint"), g.sub("basepoint"));
  c.mu = complex_from(g.at("mu"), g.sub("mu"));
  c.radius = number(g.at("radius"), g.sub("radius"));
  c.radius_index = integer(g.at("radius_index"), g.sub("radius_index"));
  const PipelineConfig lift_only = pipeline_config_from(Json{{"lift", g.at("lift")}}, gp);
  c.config.lift = lift_only.lift;

  c.gamma_zeros = roots_from(f.at("gamma_zeros"), f.sub("gamma_zeros"));
  c.achieved = number(f.at("achieved"), f.sub("achieved"));
  if (!f.at("jensen").is_null()) c.jensen = jensen_from(f.at("jensen"), f.sub("jensen"));
  c.checks = checks_from(f.at("checks"), f.sub("checks"));
  return c;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::InvalidInput, what + " is not valid JSON: " + e.what());
  }
}

}  // namespace pgreen
