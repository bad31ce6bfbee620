/* C interface to the pgreen library.
 *
 * All documents crossing this boundary are UTF-8 JSON text. Strings returned
 * through `char** out` parameters are owned by the caller and released with
 * pg_string_free. Handles are released with their *_free function; passing
 * NULL to a free function is a no-op. On any status other than PG_OK the
 * message of the failure is available from pg_last_error on the same thread. */
#ifndef PGREEN_H
#define PGREEN_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PG_API __declspec(dllexport)
#else
#define PG_API __attribute__((visibility("default")))
#endif

typedef enum pg_status {
  PG_OK = 0,
  PG_VERIFY_FAILED = 1,
  PG_UNSUPPORTED = 2,
  PG_INPUT_ERROR = 3,
  PG_NUMERICAL_FAILURE = 4,
  PG_INTERNAL_ERROR = 5
} pg_status;

typedef struct pg_blaschke pg_blaschke;
typedef struct pg_certificate pg_certificate;

PG_API const char* pg_version(void);

/* Message of the last failure on this thread ("" if none). */
PG_API const char* pg_last_error(void);
/* Kebab-case reason code of the last failure on this thread, e.g.
 * "no-oracle" or "unsupported-covering" ("" if none). */
PG_API const char* pg_last_error_code(void);

PG_API void pg_string_free(char* s);

/* {phase: [re, im], zeros: [{point: [re, im], mult: k}]} */
PG_API pg_status pg_blaschke_from_json(const char* json, pg_blaschke** out);
PG_API pg_status pg_blaschke_to_json(const pg_blaschke* b, char** out);
PG_API pg_status pg_blaschke_eval(const pg_blaschke* b, double re, double im,
                                  double* out_re, double* out_im);
PG_API pg_status pg_blaschke_derivative(const pg_blaschke* b, double re, double im,
                                        double* out_re, double* out_im);
/* Jensen certificate on the circle of radius r against log_bound. */
PG_API pg_status pg_blaschke_jensen(const pg_blaschke* b, double r, double log_bound,
                                    char** out_json);
PG_API void pg_blaschke_free(pg_blaschke* b);

/* query: {domain, pole, eval}. Writes {value, method, evidence_id}.
 * PG_UNSUPPORTED when the domain has no closed form. */
PG_API pg_status pg_green_eval(const char* query_json, char** out_json);

/* query as above; config: optimizer settings object or NULL for defaults.
 * Writes {value, method, disc, feasibility_margin, iterations_used, restart}. */
PG_API pg_status pg_upper_bound(const char* query_json, int k, const char* config_json,
                                char** out_json);

/* request: {domain1, domain2, pairs: [{pole, eval}], k?, config?}.
 * Writes CSV with header pair_id,upper,lower,gap,iterations,margin. */
PG_API pg_status pg_gap_report(const char* request_json, char** out_csv);

/* problem: {domain1, domain2, pole1, pole2, base1, base2, level, disc1, disc2};
 * config: pipeline settings object or NULL for defaults. */
PG_API pg_status pg_certificate_construct(const char* problem_json, const char* config_json,
                                          pg_certificate** out);
/* Loads a certificate document without checking it. Fails only on text
 * that is not a JSON object. */
PG_API pg_status pg_certificate_from_json(const char* json, pg_certificate** out);
PG_API pg_status pg_certificate_to_json(const pg_certificate* c, char** out);
/* Recorded achieved value; PG_INPUT_ERROR if the document lacks one. */
PG_API pg_status pg_certificate_achieved(const pg_certificate* c, double* out);
/* PG_OK when accepted, PG_VERIFY_FAILED otherwise. The residual report
 * {accepted, checks: [{name, value, tolerance, passed, detail?}]} is written
 * to report_json when it is not NULL, in both cases. */
PG_API pg_status pg_certificate_verify(const pg_certificate* c, char** report_json);
PG_API void pg_certificate_free(pg_certificate* c);

#ifdef __cplusplus
}
#endif

#endif
