#pragma once

#include <string>
#include <vector>

#include "pgreen/serialize.hpp"

namespace pgreen {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// Outcome of re-checking a certificate document from scratch.
struct VerificationReport {
  bool accepted = false;
  std::vector<CheckResult> checks;

  const CheckResult* first_failure() const;
  Json to_json() const;
};

/// Decodes the document, recomputes gamma at 0, at the recorded zeros and
/// on the polar sample, the lift residuals, the covering data and the
/// Jensen certificate, then replays the pipeline from the recorded problem
/// and configuration and compares every leaf of the document. Never
/// throws on a malformed or tampered certificate; the report says why.
VerificationReport verify_certificate(const Json& document);

/// Leaves of `a` and `b` differing by more than rel * max(1, |a|), or in
/// shape, kind or text. Paths are reported as $.key[i].
std::vector<std::string> json_differences(const Json& a, const Json& b, double rel);

}  // namespace pgreen
