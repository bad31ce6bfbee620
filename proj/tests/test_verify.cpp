#include <string>

#include "doctest.h"
#include "pgreen/verify.hpp"
#include "problems.hpp"

using namespace pgreen;
namespace t = pgreen::testing;

namespace {

std::vector<Json> canonical_certificates() {
  return {certificate_json(run_pipeline(t::worked_example(0.55))),
          certificate_json(run_pipeline(t::worked_example(0.51))),
          certificate_json(run_pipeline(t::engineered_example()))};
}

bool failed(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return !c.passed;
  return false;
}

}  // namespace

TEST_CASE("constructed certificates are accepted") {
  for (const auto& problem : {t::worked_example(0.55), t::worked_example(0.51), t::engineered_example(),
                              t::direct_example()}) {
    const auto report = verify_certificate(certificate_json(run_pipeline(problem)));
    CHECK(report.accepted);
    if (const auto* f = report.first_failure()) MESSAGE(f->name << ": " << f->detail);
  }
}

TEST_CASE("certificates at a fixed radius index are accepted") {
  PipelineConfig config;
  config.min_radius_index = 10;
  config.max_radius_index = 10;
  const auto report = verify_certificate(certificate_json(run_pipeline(t::worked_example(0.51), config)));
  CHECK(report.accepted);
}

TEST_CASE("tampered achieved value is rejected with a residual report") {
  Json c = certificate_json(run_pipeline(t::worked_example(0.55)));
  c["achieved"] = c["achieved"].get<double>() * 1.001;
  const auto report = verify_certificate(c);
  CHECK(!report.accepted);
  CHECK(failed(report, "achieved_is_zero_product"));
  CHECK(failed(report, "replay"));
  const Json j = report.to_json();
  CHECK(j["accepted"] == false);
  CHECK(j["checks"].size() > 10);
}

TEST_CASE("tampered zero list is rejected") {
  Json c = certificate_json(run_pipeline(t::engineered_example()));
  c["gamma_zeros"].erase(0);
  const auto report = verify_certificate(c);
  CHECK(!report.accepted);
  CHECK(failed(report, "gamma_zeros_match_covering"));
}

TEST_CASE("tamper suite") {
  const auto certs = canonical_certificates();
  const auto suite = t::tamper_suite();
  CHECK(suite.size() == 20);
  for (const auto& m : suite) {
    Json c = certs[static_cast<size_t>(m.certificate)];
    m.apply(c);
    CHECK_MESSAGE(json_differences(c, certs[static_cast<size_t>(m.certificate)], 0.0).size() == 1, m.what);
    const auto report = verify_certificate(c);
    CHECK_MESSAGE(!report.accepted, m.what);
  }
}

TEST_CASE("mutations inside the replay tolerance of a recorded diagnostic are accepted") {
  Json c = certificate_json(run_pipeline(t::worked_example(0.55)));
  auto& v = t::stage(c, "normalization")["values"]["t"];
  v = v.get<double>() * (1.0 + 1e-12);
  CHECK(verify_certificate(c).accepted);
}

TEST_CASE("malformed documents are rejected, not thrown") {
  CHECK(!verify_certificate(Json::parse("[]")).accepted);
  Json c = certificate_json(run_pipeline(t::worked_example(0.55)));
  c["format"] = "pgreen-certificate/0";
  const auto r = verify_certificate(c);
  CHECK(!r.accepted);
  CHECK(failed(r, "decode"));
  Json d = certificate_json(run_pipeline(t::worked_example(0.55)));
  d["gamma_zeros"][0]["point"] = Json::array({1.5, 0.0});
  CHECK(!verify_certificate(d).accepted);
  Json e = certificate_json(run_pipeline(t::worked_example(0.55)));
  e["unexpected"] = 1;
  CHECK(failed(verify_certificate(e), "decode"));
}

TEST_CASE("direct certificates are checked against their preimages") {
  Json c = certificate_json(run_pipeline(t::direct_example()));
  CHECK(c["kind"] == "direct");
  c["gamma"]["direct_factor"] = 2;
  CHECK(!verify_certificate(c).accepted);
}
