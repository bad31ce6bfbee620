#include "pgreen/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

void differences(const Json& a, const Json& b, double rel, const std::string& path,
                 std::vector<std::string>& out) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    if (!(std::abs(x - y) <= rel * std::max(1.0, std::abs(x)))) out.push_back(path);
    return;
  }
  if (a.type() != b.type()) {
    out.push_back(path);
    return;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) out.push_back(path);
    for (const auto& [key, value] : a.items()) {
      const auto it = b.find(key);
      if (it == b.end()) {
        out.push_back(path + "." + key);
        continue;
      }
      differences(value, *it, rel, path + "." + key, out);
    }
    return;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      out.push_back(path);
      return;
    }
    for (size_t i = 0; i < a.size(); ++i)
      differences(a[i], b[i], rel, path + "[" + std::to_string(i) + "]", out);
    return;
  }
  if (a != b) out.push_back(path);
}

double relative(double recorded, double recomputed) {
  return std::abs(recorded - recomputed) / std::max(1.0, std::abs(recomputed));
}

class Report {
 public:
  explicit Report(VerificationReport& r) : r_(r) {}

  // Passes when value <= tolerance.
  void at_most(const std::string& name, double value, double tolerance, std::string detail = {}) {
    r_.checks.push_back({name, value, tolerance, value <= tolerance, std::move(detail)});
  }
  // Passes when value > bound.
  void above(const std::string& name, double value, double bound, std::string detail = {}) {
    r_.checks.push_back({name, value, bound, value > bound, std::move(detail)});
  }
  void flag(const std::string& name, bool ok, std::string detail = {}) {
    r_.checks.push_back({name, ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)});
  }

 private:
  VerificationReport& r_;
};

std::vector<Complex> expand(const std::vector<Root>& roots) {
  std::vector<Complex> out;
  for (const auto& r : roots)
    for (int m = 0; m < r.multiplicity; ++m) out.push_back(r.value);
  return out;
}

void check_recorded(Report& rep, const ProductDiscCertificate& c, const CertificateChecks& fresh,
                    double rel) {
  rep.at_most("recorded_base_residual", relative(c.checks.base_residual, fresh.base_residual), rel);
  rep.at_most("recorded_zero_residual", relative(c.checks.zero_residual, fresh.zero_residual), rel);
  rep.at_most("recorded_min_margin", relative(c.checks.min_margin, fresh.min_margin), rel);
  rep.at_most("recorded_lift_residual1", relative(c.checks.lift_residual1, fresh.lift_residual1), rel);
  rep.at_most("recorded_lift_residual2", relative(c.checks.lift_residual2, fresh.lift_residual2), rel);
}

void check_covering(Report& rep, const ProductDiscCertificate& c, const CertificateTolerances& tol) {
  const auto& cfg = c.config;
  const bool index_ok = c.radius_index >= cfg.min_radius_index &&
                        c.radius_index <= cfg.max_radius_index && c.radius_index >= 1 &&
                        c.radius_index <= 52;
  rep.flag("radius_index_in_schedule", index_ok);
  if (!index_ok) return;
  rep.at_most("radius_schedule", std::abs(c.radius - (1.0 - std::ldexp(1.0, -c.radius_index))), 0.0);

  rep.at_most("blaschke1_basepoint", std::abs(c.blaschke1(0.0) - c.basepoint), 1e-10);
  rep.at_most("blaschke2_basepoint", std::abs(c.blaschke2(0.0) - c.basepoint), 1e-10);
  rep.flag("puncture_count", c.punctures.size() <= 1);
  double stray = 0.0;
  for (const auto* b : {&c.blaschke1, &c.blaschke2}) {
    for (const auto& v : critical_data(*b).values) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& p : c.punctures) nearest = std::min(nearest, std::abs(v - p));
      stray = std::max(stray, nearest);
    }
  }
  rep.at_most("critical_values_punctured", stray, 1e-9);

  const CoveringMap pi = c.covering();
  rep.at_most("covering_mu", std::abs(pi.mu() - c.mu), tol.replay_relative);
  rep.at_most("covering_basepoint", std::abs(pi.value(0.0) - c.basepoint), 1e-10);

  const double log_bound = std::log(c.problem.level);
  const JensenCertificate j = jensen_certificate(pi, c.radius, log_bound, cfg.quadrature);
  rep.flag("jensen_valid", j.valid(), "log|pi(0)| - mean must stay below log N");
  rep.flag("jensen_converged", j.quadrature_converged);
  rep.at_most("jensen_identity_residual", j.identity_residual, tol.identity_residual);
  rep.at_most("gamma_zeros_match_covering",
              multiset_distance(expand(c.gamma_zeros), expand(j.interior_zeros)), 1e-9);
  if (!c.jensen) {
    rep.flag("jensen_recorded", false, "covering certificates carry their Jensen data");
    return;
  }
  const JensenCertificate& r = *c.jensen;
  rep.at_most("jensen_log_bound", std::abs(r.log_bound - log_bound), 0.0);
  rep.at_most("jensen_radius", std::abs(r.radius - c.radius), 0.0);
  rep.at_most("jensen_log_abs_center", relative(r.log_abs_center, j.log_abs_center), tol.replay_relative);
  rep.at_most("jensen_boundary_mean", relative(r.boundary_mean, j.boundary_mean), tol.replay_relative);
  rep.at_most("jensen_zeros", multiset_distance(expand(r.interior_zeros), expand(j.interior_zeros)), 1e-9);
}

void check_direct(Report& rep, const ProductDiscCertificate& c, const PreimageOptions& opts) {
  const auto& p = c.problem;
  const bool factor_ok = c.direct_factor == 1 || c.direct_factor == 2;
  rep.flag("direct_factor", factor_ok);
  if (!factor_ok) return;
  const bool other_trivial = c.direct_factor == 1 ? p.pole2 == p.base2 : p.pole1 == p.base1;
  rep.flag("direct_pole_is_base", other_trivial,
           "the constant factor's pole must equal its base exactly");
  const AnalyticDisc& kept = c.direct_factor == 1 ? c.disc1 : c.disc2;
  const Point& pole = c.direct_factor == 1 ? p.pole1 : p.pole2;
  std::vector<Root> fresh;
  for (const auto& e : preimages(kept, pole, opts).entries) fresh.push_back({e.point.value(), e.multiplicity});
  rep.at_most("gamma_zeros_match_preimages", multiset_distance(expand(c.gamma_zeros), expand(fresh)), 1e-9);
}

}  // namespace

std::vector<std::string> json_differences(const Json& a, const Json& b, double rel) {
  std::vector<std::string> out;
  differences(a, b, rel, "$", out);
  return out;
}

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

Json VerificationReport::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks) {
    Json e{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    list.push_back(std::move(e));
  }
  return {{"accepted", accepted}, {"checks", list}};
}

VerificationReport verify_certificate(const Json& document) {
  VerificationReport out;
  Report rep(out);
  const CertificateTolerances tol;

  std::optional<ProductDiscCertificate> decoded;
  try {
    decoded = certificate_from(document);
    rep.flag("decode", true);
  } catch (const Error& e) {
    rep.flag("decode", false, e.what());
    return out;
  }
  const ProductDiscCertificate& c = *decoded;

  const auto tol_diff = json_differences(tolerances_json(tol), document.at("tolerances"), 0.0);
  rep.flag("tolerances", tol_diff.empty(),
           tol_diff.empty() ? "" : "recorded tolerances differ from the verifier's at " + tol_diff[0]);

  try {
    rep.above("level_positive", c.problem.level, 0.0);
    double product = 1.0;
    bool inside = true;
    for (const auto& z : c.gamma_zeros) {
      product *= std::pow(std::abs(z.value), z.multiplicity);
      inside = inside && std::abs(z.value) < 1.0;
    }
    rep.flag("zeros_inside_disc", inside && !c.gamma_zeros.empty(),
             "gamma must hit the pole at least once inside E");
    rep.at_most("achieved_is_zero_product", relative(c.achieved, product), 1e-12);
    rep.flag("achieved_below_level", c.achieved < c.problem.level);

    rep.above("disc1_range_margin", certify_range(c.disc1, c.problem.domain1).margin, 0.0);
    rep.above("disc2_range_margin", certify_range(c.disc2, c.problem.domain2).margin, 0.0);

    if (c.kind == CertificateKind::Covering)
      check_covering(rep, c, tol);
    else
      check_direct(rep, c, c.config.preimage);

    const CertificateChecks fresh = evaluate_checks(c);
    rep.at_most("gamma_base_residual", fresh.base_residual, tol.base_residual);
    rep.at_most("gamma_zero_residual", fresh.zero_residual, tol.zero_residual);
    rep.above("gamma_min_margin", fresh.min_margin, 0.0);
    rep.at_most("lift_residual1", fresh.lift_residual1, tol.lift_residual);
    rep.at_most("lift_residual2", fresh.lift_residual2, tol.lift_residual);
    check_recorded(rep, c, fresh, tol.replay_relative);
  } catch (const Error& e) {
    rep.flag("independent_checks", false, std::string(to_string(e.code())) + ": " + e.what());
  }

  try {
    const Json replay = certificate_json(run_pipeline(c.problem, c.config));
    const auto diff = json_differences(replay, document, tol.replay_relative);
    std::string detail;
    if (!diff.empty()) {
      std::ostringstream os;
      os << diff.size() << " field(s) differ from the replay, first at " << diff[0];
      detail = os.str();
    }
    rep.at_most("replay", static_cast<double>(diff.size()), 0.0, detail);
  } catch (const Error& e) {
    rep.flag("replay", false, std::string(to_string(e.code())) + ": " + e.what());
  }

  out.accepted = out.first_failure() == nullptr;
  return out;
}

}  // namespace pgreen
