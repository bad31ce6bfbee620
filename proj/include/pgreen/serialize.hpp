#pragma once

#include <string>

#include "json.hpp"
#include "pgreen/analytic_disc.hpp"
#include "pgreen/disc_algebra.hpp"
#include "pgreen/domain.hpp"
#include "pgreen/green.hpp"
#include "pgreen/jensen.hpp"
#include "pgreen/optimizer.hpp"
#include "pgreen/pipeline.hpp"

namespace pgreen {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertificateFormat = "pgreen-certificate/1";

/// Documents are parsed strictly: missing required keys, unknown keys and
/// wrongly typed values raise InvalidInput naming the offending path.

Json complex_json(Complex z);
Complex complex_from(const Json& j, const std::string& path = "$");
Json point_json(std::span<const Complex> p);
Point point_from(const Json& j, const std::string& path = "$");

/// {point: [re, im], mult: k}
Json roots_json(std::span<const Root> roots);
std::vector<Root> roots_from(const Json& j, const std::string& path = "$");

/// {phase: [re, im], zeros: [{point: [re, im], mult: k}]}
Json blaschke_json(const BlaschkeProduct& b);
BlaschkeProduct blaschke_from(const Json& j, const std::string& path = "$");

/// {dimension, degree, coords: [[[re, im], ...], ...], frame?: [{center, radius, base}]}
Json disc_json(const AnalyticDisc& phi);
AnalyticDisc disc_from(const Json& j, const std::string& path = "$");

/// {kind, params}
Json domain_json(const Domain& d);
Domain domain_from(const Json& j, const std::string& path = "$");

/// {value, method, evidence_id}
Json green_json(const GreenValue& v);

/// {domain, pole, eval}
Json query_json(const GreenQuery& q);
GreenQuery query_from(const Json& j, const std::string& path = "$");

Json optimizer_config_json(const OptimizerConfig& c);
/// Keys absent from `j` keep their defaults.
OptimizerConfig optimizer_config_from(const Json& j, const std::string& path = "$");
Json upper_bound_json(const UpperBoundResult& r);

Json jensen_json(const JensenCertificate& c);
JensenCertificate jensen_from(const Json& j, const std::string& path = "$");

Json pipeline_config_json(const PipelineConfig& c);
PipelineConfig pipeline_config_from(const Json& j, const std::string& path = "$");

/// {domain1, domain2, pole1, pole2, base1, base2, level, disc1, disc2}
Json problem_json(const ProductProblem& p);
ProductProblem problem_from(const Json& j, const std::string& path = "$");

/// Acceptance thresholds a verifier applies; written into every certificate.
struct CertificateTolerances {
  double base_residual = 1e-8;
  double zero_residual = 1e-6;
  double lift_residual = 1e-6;
  double identity_residual = 1e-7;
  double replay_relative = 1e-9;
};

Json tolerances_json(const CertificateTolerances& t);

Json certificate_json(const ProductDiscCertificate& cert);
ProductDiscCertificate certificate_from(const Json& j);

/// Parses text, mapping syntax errors to InvalidInput.
Json parse_json(const std::string& text, const std::string& what);

}  // namespace pgreen
