#include "pgreen/pgreen.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "pgreen/error.hpp"
#include "pgreen/serialize.hpp"
#include "pgreen/verify.hpp"

struct pg_blaschke {
  pgreen::BlaschkeProduct product;
};

struct pg_certificate {
  pgreen::Json document;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_code;

pg_status status_of(pgreen::ErrorCode code) {
  using pgreen::ErrorCode;
  switch (code) {
    case ErrorCode::UnsupportedCovering:
    case ErrorCode::NoOracle:
      return PG_UNSUPPORTED;
    case ErrorCode::PerturbationFailure:
    case ErrorCode::RadiusNudge:
    case ErrorCode::LiftingObstruction:
    case ErrorCode::RadiusSearchFailure:
    case ErrorCode::NoBound:
      return PG_NUMERICAL_FAILURE;
    case ErrorCode::VerificationFailure:
      return PG_VERIFY_FAILED;
    default:
      return PG_INPUT_ERROR;
  }
}

pg_status record(pg_status s, const char* code, const std::string& message) {
  last_code = code;
  last_error = message;
  return s;
}

template <class F>
pg_status guarded(F&& f) {
  last_error.clear();
  last_code.clear();
  try {
    return f();
  } catch (const pgreen::Error& e) {
    return record(status_of(e.code()), pgreen::to_string(e.code()), e.what());
  } catch (const pgreen::Json::exception& e) {
    return record(PG_INPUT_ERROR, "invalid-input", e.what());
  } catch (const std::bad_alloc&) {
    return record(PG_INTERNAL_ERROR, "out-of-memory", "out of memory");
  } catch (const std::exception& e) {
    return record(PG_INTERNAL_ERROR, "internal", e.what());
  } catch (...) {
    return record(PG_INTERNAL_ERROR, "internal", "unknown failure");
  }
}

pg_status null_argument() { return record(PG_INPUT_ERROR, "invalid-input", "null argument"); }

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pgreen::Json parse(const char* text, const char* what) { return pgreen::parse_json(text, what); }

}  // namespace

extern "C" {

const char* pg_version(void) { return "1.0.0"; }
const char* pg_last_error(void) { return last_error.c_str(); }
const char* pg_last_error_code(void) { return last_code.c_str(); }
void pg_string_free(char* s) { std::free(s); }

pg_status pg_blaschke_from_json(const char* json, pg_blaschke** out) {
  if (!json || !out) return null_argument();
  return guarded([&] {
    *out = new pg_blaschke{pgreen::blaschke_from(parse(json, "Blaschke product"))};
    return PG_OK;
  });
}

pg_status pg_blaschke_to_json(const pg_blaschke* b, char** out) {
  if (!b || !out) return null_argument();
  return guarded([&] {
    *out = copy_out(pgreen::blaschke_json(b->product).dump(2));
    return PG_OK;
  });
}

pg_status pg_blaschke_eval(const pg_blaschke* b, double re, double im, double* out_re,
                           double* out_im) {
  if (!b || !out_re || !out_im) return null_argument();
  return guarded([&] {
    const pgreen::Complex v = pgreen::blaschke_eval(b->product, {re, im});
    *out_re = v.real();
    *out_im = v.imag();
    return PG_OK;
  });
}

pg_status pg_blaschke_derivative(const pg_blaschke* b, double re, double im, double* out_re,
                                 double* out_im) {
  if (!b || !out_re || !out_im) return null_argument();
  return guarded([&] {
    const pgreen::Complex v = pgreen::blaschke_derivative(b->product, {re, im});
    *out_re = v.real();
    *out_im = v.imag();
    return PG_OK;
  });
}

pg_status pg_blaschke_jensen(const pg_blaschke* b, double r, double log_bound, char** out_json) {
  if (!b || !out_json) return null_argument();
  return guarded([&] {
    const auto cert = pgreen::jensen_certificate(b->product, r, log_bound);
    pgreen::Json j = pgreen::jensen_json(cert);
    j["valid"] = cert.valid();
    j["achieved"] = cert.achieved();
    *out_json = copy_out(j.dump(2));
    return PG_OK;
  });
}

void pg_blaschke_free(pg_blaschke* b) { delete b; }

pg_status pg_green_eval(const char* query_json, char** out_json) {
  if (!query_json || !out_json) return null_argument();
  return guarded([&] {
    const auto q = pgreen::query_from(parse(query_json, "query"));
    *out_json = copy_out(pgreen::green_json(pgreen::green_oracle(q)).dump(2));
    return PG_OK;
  });
}

pg_status pg_upper_bound(const char* query_json, int k, const char* config_json, char** out_json) {
  if (!query_json || !out_json) return null_argument();
  return guarded([&] {
    const auto q = pgreen::query_from(parse(query_json, "query"));
    const pgreen::OptimizerConfig config =
        config_json ? pgreen::optimizer_config_from(parse(config_json, "optimizer config"))
                    : pgreen::OptimizerConfig{};
    *out_json = copy_out(pgreen::upper_bound_json(pgreen::upper_bound_search(q, k, config)).dump(2));
    return PG_OK;
  });
}

pg_status pg_gap_report(const char* request_json, char** out_csv) {
  if (!request_json || !out_csv) return null_argument();
  return guarded([&] {
    const pgreen::Json j = parse(request_json, "gap request");
    if (!j.is_object()) pgreen::fail(pgreen::ErrorCode::InvalidInput, "$: expected an object");
    for (const auto& [key, value] : j.items())
      if (key != "domain1" && key != "domain2" && key != "pairs" && key != "k" && key != "config")
        pgreen::fail(pgreen::ErrorCode::InvalidInput, "$: unknown key '" + key + "'");
    const auto d1 = pgreen::domain_from(j.at("domain1"), "$.domain1");
    const auto d2 = pgreen::domain_from(j.at("domain2"), "$.domain2");
    std::vector<std::pair<pgreen::Point, pgreen::Point>> pairs;
    const auto& list = j.at("pairs");
    if (!list.is_array()) pgreen::fail(pgreen::ErrorCode::InvalidInput, "$.pairs: expected an array");
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string p = "$.pairs[" + std::to_string(i) + "]";
      if (!list[i].is_object() || list[i].size() != 2 || !list[i].contains("pole") ||
          !list[i].contains("eval"))
        pgreen::fail(pgreen::ErrorCode::InvalidInput, p + ": expected {pole, eval}");
      pairs.push_back({pgreen::point_from(list[i]["pole"], p + ".pole"),
                       pgreen::point_from(list[i]["eval"], p + ".eval")});
    }
    int k = 1;
    if (j.contains("k")) {
      if (!j["k"].is_number_integer()) pgreen::fail(pgreen::ErrorCode::InvalidInput, "$.k: expected an integer");
      k = j["k"].get<int>();
    }
    const pgreen::OptimizerConfig config =
        j.contains("config") ? pgreen::optimizer_config_from(j["config"], "$.config")
                             : pgreen::OptimizerConfig{};
    *out_csv = copy_out(pgreen::gap_csv(pgreen::product_gap_report(d1, d2, pairs, config, k)));
    return PG_OK;
  });
}

pg_status pg_certificate_construct(const char* problem_json, const char* config_json,
                                   pg_certificate** out) {
  if (!problem_json || !out) return null_argument();
  return guarded([&] {
    const auto problem = pgreen::problem_from(parse(problem_json, "problem"));
    const pgreen::PipelineConfig config =
        config_json ? pgreen::pipeline_config_from(parse(config_json, "pipeline config"))
                    : pgreen::PipelineConfig{};
    *out = new pg_certificate{pgreen::certificate_json(pgreen::run_pipeline(problem, config))};
    return PG_OK;
  });
}

pg_status pg_certificate_from_json(const char* json, pg_certificate** out) {
  if (!json || !out) return null_argument();
  return guarded([&] {
    pgreen::Json j = parse(json, "certificate");
    if (!j.is_object()) pgreen::fail(pgreen::ErrorCode::InvalidInput, "certificate must be a JSON object");
    *out = new pg_certificate{std::move(j)};
    return PG_OK;
  });
}

pg_status pg_certificate_to_json(const pg_certificate* c, char** out) {
  if (!c || !out) return null_argument();
  return guarded([&] {
    *out = copy_out(c->document.dump(2));
    return PG_OK;
  });
}

pg_status pg_certificate_achieved(const pg_certificate* c, double* out) {
  if (!c || !out) return null_argument();
  return guarded([&] {
    const auto it = c->document.find("achieved");
    if (it == c->document.end() || !it->is_number())
      pgreen::fail(pgreen::ErrorCode::InvalidInput, "certificate has no achieved value");
    *out = it->get<double>();
    return PG_OK;
  });
}

pg_status pg_certificate_verify(const pg_certificate* c, char** report_json) {
  if (!c) return null_argument();
  return guarded([&] {
    const auto report = pgreen::verify_certificate(c->document);
    if (report_json) *report_json = copy_out(report.to_json().dump(2));
    if (report.accepted) return PG_OK;
    const auto* f = report.first_failure();
    return record(PG_VERIFY_FAILED, "verification-failure",
                  "certificate rejected: check '" + f->name + "' failed" +
                      (f->detail.empty() ? std::string() : " (" + f->detail + ")"));
  });
}

void pg_certificate_free(pg_certificate* c) { delete c; }

}  // extern "C"
