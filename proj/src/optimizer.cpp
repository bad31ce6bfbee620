#include "pgreen/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "pgreen/error.hpp"

namespace pgreen {

namespace {

double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

DiscParametrization::DiscParametrization(const GreenQuery& q, int k, int degree)
    : k_(k), degree_(degree), n_(q.domain.dimension()) {
  if (k < 1) fail(ErrorCode::InvalidInput, "k must be at least 1");
  if (degree < k) fail(ErrorCode::InvalidInput, "degree must be at least k");
  if (auto frame = q.domain.frame(q.eval)) {
    frame_ = std::move(*frame);
    inner_base_.assign(static_cast<size_t>(n_), Complex{});
    size_t offset = 0;
    for (const auto& f : frame_) {
      const Point u = f.inverse(std::span<const Complex>(q.pole).subspan(offset, f.center.size()));
      inner_pole_.insert(inner_pole_.end(), u.begin(), u.end());
      offset += u.size();
    }
  } else {
    inner_base_ = q.eval;
    inner_pole_ = q.pole;
  }
}

std::vector<Complex> DiscParametrization::designated(std::span<const double> x) const {
  std::vector<Complex> out;
  for (int j = 0; j < k_; ++j) {
    const Complex w(x[static_cast<size_t>(2 * j)], x[static_cast<size_t>(2 * j + 1)]);
    const double m = std::abs(w);
    out.push_back(m > 0.0 ? kMaxModulus * std::tanh(m) * (w / m) : Complex{});
  }
  return out;
}

std::vector<double> DiscParametrization::encode(std::span<const Complex> points) const {
  std::vector<double> x(static_cast<size_t>(dimension()), 0.0);
  for (int j = 0; j < k_; ++j) {
    const Complex p = points[static_cast<size_t>(j)];
    const double m = std::min(std::abs(p) / kMaxModulus, 1.0 - 1e-15);
    const Complex w = m > 0.0 ? std::atanh(m) * p / std::abs(p) : Complex{};
    x[static_cast<size_t>(2 * j)] = w.real();
    x[static_cast<size_t>(2 * j + 1)] = w.imag();
  }
  return x;
}

AnalyticDisc DiscParametrization::disc(std::span<const double> x) const {
  const auto pts = designated(x);
  Polynomial interp = Polynomial::constant(1.0);  // prod (1 - l / l_j)
  Polynomial vanish = Polynomial(std::vector<Complex>{0.0, 1.0});  // l prod (l - l_j)
  for (const auto& p : pts) {
    interp = interp * Polynomial(std::vector<Complex>{1.0, -1.0 / p});
    vanish = vanish * Polynomial::linear_factor(p);
  }
  const Polynomial hit = Polynomial::constant(1.0) - interp;
  std::vector<Polynomial> coords;
  size_t offset = static_cast<size_t>(2 * k_);
  const int free_terms = degree_ - k_;
  for (int i = 0; i < n_; ++i) {
    std::vector<Complex> h;
    for (int t = 0; t < free_terms; ++t, offset += 2) h.emplace_back(x[offset], x[offset + 1]);
    const size_t ii = static_cast<size_t>(i);
    Polynomial c = Polynomial::constant(inner_base_[ii]) + hit * (inner_pole_[ii] - inner_base_[ii]);
    if (!h.empty()) c = c + vanish * Polynomial(std::move(h));
    coords.push_back(std::move(c));
  }
  return AnalyticDisc(std::move(coords), frame_);
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, double radius, int max_iterations,
                             double tolerance) {
  const size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (size_t i = 0; i < n; ++i) simplex[i + 1][i] += radius;
  std::vector<double> values(n + 1);
  for (size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::vector<size_t> order(n + 1);
  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return values[x] < values[y]; });
    const size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(values[worst] - values[best]) <= tolerance * (std::abs(values[best]) + 1e-300)) {
      double spread = 0.0;
      for (size_t i = 0; i <= n; ++i)
        for (size_t j = 0; j < n; ++j) spread = std::max(spread, std::abs(simplex[i][j] - simplex[best][j]));
      if (spread < 1e-12) break;
    }

    std::vector<double> centroid(n, 0.0);
    for (size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
      return p;
    };

    const auto reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < values[best]) {
      const auto expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const auto contracted = along(outside ? -0.5 : 0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (size_t j = 0; j < n; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
      values[i] = f(simplex[i]);
    }
  }
  const size_t best = static_cast<size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], it};
}

UpperBoundResult upper_bound_search(const GreenQuery& q, int k, const OptimizerConfig& config) {
  if (config.restarts < 1 || config.max_iterations < 1 || !(config.penalty_weight > 0.0) ||
      config.boundary_grid < 64 || !(config.simplex_radius > 0.0) || config.degree < 0 ||
      !(config.tolerance > 0.0))
    fail(ErrorCode::InvalidInput, "optimizer configuration values must be positive (grid >= 64)");
  const int degree = config.degree == 0 ? k : config.degree;
  const DiscParametrization param(q, k, degree);

  if (q.pole == q.eval) {
    // z + c l passes through a = z at l = 0.
    std::vector<Polynomial> coords;
    for (const auto& z : q.eval) coords.push_back(Polynomial(std::vector<Complex>{z, 0.0}));
    coords[0] = Polynomial(std::vector<Complex>{q.eval[0], 0.5 * q.domain.margin(q.eval)});
    UpperBoundResult out;
    out.disc = AnalyticDisc(std::move(coords));
    out.feasibility_margin = certify_range(out.disc, q.domain, config.boundary_grid).margin;
    out.value = poletsky_value(out.disc, q.pole).value;
    out.restart = 0;
    return out;
  }

  const double hint = has_oracle(q.domain) ? green_oracle(q).value : 0.9;
  const double start_radius = std::pow(std::clamp(hint, 0.05, 0.999), 1.0 / k);
  constexpr double kMarginTarget = 1e-5;

  auto objective = [&](std::span<const double> x) {
    const auto pts = param.designated(x);
    double prod = 1.0;
    for (const auto& p : pts) {
      if (std::abs(p) < 1e-300) return std::numeric_limits<double>::max();
      prod *= std::abs(p);
    }
    const double m = boundary_margin(param.disc(x), q.domain, config.boundary_grid).margin;
    const double shortfall = std::max(0.0, kMarginTarget - m);
    return prod + config.penalty_weight * shortfall * shortfall;
  };

  UpperBoundResult best;
  bool found = false;
  int total_iterations = 0;
  for (int r = 0; r < config.restarts; ++r) {
    std::mt19937_64 rng(config.rng_seed + static_cast<std::uint64_t>(r));
    std::vector<Complex> pts;
    for (int j = 0; j < k; ++j)
      pts.push_back(std::polar(start_radius + 0.5 * (1.0 - start_radius) * uniform(rng),
                               2.0 * std::numbers::pi * uniform(rng)));
    std::vector<double> x0 = param.encode(pts);
    for (size_t t = static_cast<size_t>(2 * k); t < x0.size(); ++t) x0[t] = 1e-3 * (uniform(rng) - 0.5);

    const auto nm = nelder_mead(objective, x0, config.simplex_radius, config.max_iterations,
                                config.tolerance);
    total_iterations += nm.iterations;
    const AnalyticDisc disc = param.disc(nm.x);
    double margin = 0.0;
    try {
      margin = certify_range(disc, q.domain, std::max(config.boundary_grid, 64)).margin;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InfeasibleDisc) throw;
      continue;
    }
    double value = 1.0;
    try {
      value = poletsky_value(disc, q.pole).value;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAttained && e.code() != ErrorCode::DegenerateDisc) throw;
      continue;
    }
    if (!found || value < best.value) {
      best.value = value;
      best.disc = disc;
      best.feasibility_margin = margin;
      best.restart = r;
      found = true;
    }
  }
  if (!found) fail(ErrorCode::NoBound, "no feasible disc found; try a higher degree or more restarts");
  best.iterations_used = total_iterations;
  return best;
}

std::vector<GapRow> product_gap_report(const Domain& d1, const Domain& d2,
                                       const std::vector<std::pair<Point, Point>>& pairs,
                                       const OptimizerConfig& config, int k) {
  const Domain prod = Domain::product({d1, d2});
  std::vector<GapRow> rows;
  int id = 0;
  for (const auto& [a, z] : pairs) {
    const GreenQuery q = make_query(prod, a, z);
    const auto upper = upper_bound_search(q, k, config);
    const auto lower = contractibility_lower_bound(q);
    rows.push_back({id++, upper.value, lower.value, upper.value - lower.value,
                    upper.iterations_used, upper.feasibility_margin});
  }
  return rows;
}

std::string gap_csv(const std::vector<GapRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << std::scientific;
  os << "pair_id,upper,lower,gap,iterations,margin\n";
  for (const auto& r : rows)
    os << r.pair_id << ',' << r.upper << ',' << r.lower << ',' << r.gap << ',' << r.iterations
       << ',' << r.margin << '\n';
  return os.str();
}

}  // namespace pgreen
