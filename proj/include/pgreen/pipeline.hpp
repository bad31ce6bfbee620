#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgreen/analytic_disc.hpp"
#include "pgreen/covering.hpp"
#include "pgreen/disc_algebra.hpp"
#include "pgreen/domain.hpp"
#include "pgreen/jensen.hpp"
#include "pgreen/lift.hpp"

namespace pgreen {

/// A factor disc phi through the base (phi(0) = base) hitting the pole at
/// the interior points `zeros`, sorted by modulus.
struct FactorDiscData {
  AnalyticDisc disc;
  Domain domain;
  Point pole;
  Point base;
  std::vector<Root> zeros;
  double value = 1.0;

  Complex zero_product() const;
  int zero_count() const;
  std::vector<Complex> zero_list() const;
};

FactorDiscData factor_data(const AnalyticDisc& disc, const Domain& domain,
                           Point pole, Point base,
                           const PreimageOptions& options = {});

struct ZeroMoveReport {
  double delta_used = 0.0;
  double max_shift = 0.0;
  double base_residual = 0.0;          // |phi~(0) - base|
  double interpolation_residual = 0.0; // max |phi~(sigma~) - pole|
  double division_remainder = 0.0;
  double sup_deviation = 0.0;          // sup over 256 boundary points |phi~ - phi|
  double deviation_scale = 0.0;        // sup|phi - pole| * sum(1/(1-|s|) + 1/|s|)
  double range_margin = 0.0;
  double product_ratio_error = 0.0;    // |prod sigma~ / prod sigma - 1|
};

/// phi~ = (phi - a1) * prod(l - s~)/prod(l - s) * prod(s)/prod(s~) + a1,
/// applied coordinatewise to the polynomial part of the disc. `from` lists
/// the current zeros with multiplicity, `to` the replacements in order.
AnalyticDisc move_zeros(const FactorDiscData& data, std::span<const Complex> from,
                        std::span<const Complex> to, double* remainder = nullptr);

struct SimplifyResult {
  FactorDiscData data;
  ZeroMoveReport report;
};

/// Splits multiple zeros of phi - pole into simple ones, shrinking delta
/// until the moved disc is range certified.
SimplifyResult simplify_multiplicities(const FactorDiscData& data, double delta);

struct ReductionStep {
  double t = 1.0;
  int dropped = 0;
};

struct ReductionResult {
  FactorDiscData data;
  std::vector<ReductionStep> steps;
};

/// Drops outermost equal-modulus zero blocks by rescaling while the
/// rescaled disc still beats the level.
ReductionResult reduce_to_minimal(const FactorDiscData& data, double level);

struct NormalizationReport {
  double t = 1.0;
  double theta = 0.0;
  int adjusted = 1;  // which factor was rescaled and rotated
  std::pair<Complex, Complex> products_before;
  Complex products_after{};
};

struct EqualizeResult {
  FactorDiscData first;
  FactorDiscData second;
  NormalizationReport report;
};

EqualizeResult equalize_products(const FactorDiscData& d1, const FactorDiscData& d2);

struct ProductProblem {
  Domain domain1 = Domain::unit_polydisc(1);
  Domain domain2 = Domain::unit_polydisc(1);
  Point pole1;  // a1
  Point pole2;  // b1
  Point base1;  // a2
  Point base2;  // b2
  double level = 0.0;
  AnalyticDisc disc1 = AnalyticDisc::constant(Point{0.0});
  AnalyticDisc disc2 = AnalyticDisc::constant(Point{0.0});
};

struct PipelineConfig {
  double simplify_delta = 1e-6;
  double decritalize_delta = 1e-6;
  int branch = 0;
  int min_radius_index = 1;
  int max_radius_index = 20;
  LiftSettings lift;
  QuadratureSettings quadrature;
  PreimageOptions preimage;
};

struct StageRecord {
  std::string name;
  std::vector<std::pair<std::string, double>> values;

  double get(const std::string& key) const;
};

struct CertificateChecks {
  double base_residual = 0.0;   // |gamma(0) - (a2, b2)|
  double zero_residual = 0.0;   // max |gamma(l_j) - (a1, b1)|
  double min_margin = 0.0;      // over the 32 x 32 polar sample of the closed disc
  double lift_residual1 = 0.0;  // 64 x 32 grid of rE
  double lift_residual2 = 0.0;
};

enum class CertificateKind { Covering, Direct };

/// Evidence that g((a1,b1),(a2,b2)) <= achieved < level on D1 x D2.
///
/// Covering kind: gamma(l) = (phi1(psi1(r l)), phi2(psi2(r l))) where
/// psi_i lift the covering pi through B_i, and gamma's preimages of the
/// pole are the zeros of pi(r l). Direct kind (the pole coordinate of one
/// factor equals its base): gamma pairs that constant with the other disc.
struct ProductDiscCertificate {
  CertificateKind kind = CertificateKind::Covering;
  ProductProblem problem;
  PipelineConfig config;
  std::vector<StageRecord> stages;

  AnalyticDisc disc1 = AnalyticDisc::constant(Point{0.0});
  AnalyticDisc disc2 = AnalyticDisc::constant(Point{0.0});
  int direct_factor = 0;  // direct kind: the factor kept as a disc (1 or 2)

  BlaschkeProduct blaschke1;
  BlaschkeProduct blaschke2;
  std::vector<Complex> punctures;
  Complex basepoint{};
  Complex mu{};
  double radius = 1.0;
  int radius_index = 0;

  std::vector<Root> gamma_zeros;
  double achieved = 1.0;
  std::optional<JensenCertificate> jensen;
  CertificateChecks checks;

  CoveringMap covering() const;
};

/// gamma of a certificate, evaluable on the closed unit disc.
class GammaMap {
 public:
  explicit GammaMap(const ProductDiscCertificate& cert);
  Point operator()(Complex lambda) const;
  const LiftedMap* lift1() const noexcept { return lift1_ ? &*lift1_ : nullptr; }
  const LiftedMap* lift2() const noexcept { return lift2_ ? &*lift2_ : nullptr; }

 private:
  const ProductDiscCertificate* cert_;
  std::optional<LiftedMap> lift1_;
  std::optional<LiftedMap> lift2_;
};

/// Product domain D1 x D2 of a problem.
Domain product_domain(const ProductProblem& problem);

/// Validates the problem (level, points, discs) and returns the factor data.
std::pair<FactorDiscData, FactorDiscData> admit(const ProductProblem& problem,
                                                const PipelineConfig& config = {});

ProductDiscCertificate run_pipeline(const ProductProblem& problem,
                                    const PipelineConfig& config = {});

/// Recomputes gamma(0), gamma at the zeros, margins and lift residuals.
CertificateChecks evaluate_checks(const ProductDiscCertificate& cert);

}  // namespace pgreen
