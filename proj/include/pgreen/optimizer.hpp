#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pgreen/analytic_disc.hpp"
#include "pgreen/green.hpp"

namespace pgreen {

struct OptimizerConfig {
  int restarts = 8;
  int max_iterations = 2000;
  double penalty_weight = 1e6;
  int boundary_grid = 256;
  std::uint64_t rng_seed = 1;
  double simplex_radius = 0.25;
  int degree = 0;  // 0: use k
  double tolerance = 1e-13;  // simplex value spread
};

/// Discs of degree d with phi(0) = z and phi(lambda_j) = a for k designated
/// points, in the coordinates normalized by the domain's frame when it
/// has one:
///   L(l) = z^ + (a^ - z^)(1 - prod(1 - l / l_j)) + l prod(l - l_j) h(l).
/// Parameters: one complex w_j per designated point, mapped to
/// l_j = rho tanh|w_j| w_j / |w_j|, then the coefficients of h.
class DiscParametrization {
 public:
  DiscParametrization(const GreenQuery& q, int k, int degree);

  int dimension() const noexcept { return 2 * k_ + 2 * n_ * (degree_ - k_); }
  int k() const noexcept { return k_; }
  int degree() const noexcept { return degree_; }
  static constexpr double kMaxModulus = 1.0 - 1e-6;

  std::vector<Complex> designated(std::span<const double> x) const;
  AnalyticDisc disc(std::span<const double> x) const;
  /// Parameter vector placing the designated points at `points`, h = 0.
  std::vector<double> encode(std::span<const Complex> points) const;

 private:
  int k_, degree_, n_;
  Point inner_base_, inner_pole_;
  Frame frame_;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, double radius, int max_iterations,
                             double tolerance = 1e-13);

struct UpperBoundResult {
  double value = 1.0;
  AnalyticDisc disc = AnalyticDisc::constant(Point{0.0});
  double feasibility_margin = 0.0;
  int iterations_used = 0;
  int restart = -1;
};

/// Multi-start derivative-free search for a feasible disc through q.eval
/// hitting q.pole with a small Poletsky product.
UpperBoundResult upper_bound_search(const GreenQuery& q, int k, const OptimizerConfig& config = {});

struct GapRow {
  int pair_id = 0;
  double upper = 0.0;
  double lower = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double margin = 0.0;
};

/// Upper bounds on D1 x D2 against the projection lower bound for each
/// (pole, eval) pair.
std::vector<GapRow> product_gap_report(const Domain& d1, const Domain& d2,
                                       const std::vector<std::pair<Point, Point>>& pairs,
                                       const OptimizerConfig& config = {}, int k = 1);

std::string gap_csv(const std::vector<GapRow>& rows);

}  // namespace pgreen
