#include "idm/credible.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "idm/special_functions.hpp"

namespace idm {
namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.5 && alpha < 1.0)) {
    throw std::invalid_argument("triangular closed forms need 0.5 <= alpha < 1");
  }
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be positive and finite");
  }
}

// Cumulative mass of the centred triangle from 0 to x, for x in [-1, 1].
double half_cdf(double x) { return x * (1.0 - 0.5 * std::abs(x)); }

}  // namespace

CredibleSpec CredibleSpec::from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  return CredibleSpec{alpha, kappa_from_alpha(alpha)};
}

TriangularFamily::TriangularFamily(double g) : gamma(g) { check_gamma(g); }

double triangular_mass(double t, double a, double b) {
  if (std::isnan(a) || std::isnan(b) || std::isnan(t)) {
    throw std::invalid_argument("triangular mass of NaN");
  }
  if (a > b) throw std::invalid_argument("interval lower end exceeds upper end");
  const double as = std::clamp(a - t, -1.0, 1.0);
  const double bs = std::clamp(b - t, -1.0, 1.0);
  return std::abs(half_cdf(bs) - half_cdf(as));
}

Interval triangular_shortest_interval(double t, double alpha) {
  check_alpha(alpha);
  const double r = 1.0 - std::sqrt(1.0 - alpha);
  return Interval(t - r, t + r);
}

Interval triangular_robust_union(double gamma, double alpha) {
  check_gamma(gamma);
  check_alpha(alpha);
  const double r = gamma + 1.0 - std::sqrt(1.0 - alpha);
  return Interval(-r, r);
}

Interval triangular_minimal_robust(double gamma, double alpha) {
  check_gamma(gamma);
  check_alpha(alpha);
  const double g2 = gamma * gamma;
  double r = 0.0;
  if (g2 <= 0.5 * (1.0 - alpha)) {
    const double radicand = 1.0 - alpha - g2;
    assert(radicand >= 0.0);
    r = 1.0 - std::sqrt(radicand);
  } else {
    r = gamma + 1.0 - std::sqrt(2.0 * (1.0 - alpha));
  }
  return Interval(-r, r);
}

double triangular_one_sided_lower(double t, double alpha) {
  check_alpha(alpha);
  return t - 1.0 + std::sqrt(2.0 * (1.0 - alpha));
}

double one_sided_robust_bound(const std::function<double(double)>& per_t_lower,
                              std::span<const double> t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("one-sided bound needs a non-empty grid");
  double a_min = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const double a = per_t_lower(t);
    if (!std::isfinite(a)) throw std::domain_error("per-t lower bound is not finite");
    a_min = std::min(a_min, a);
  }
  return a_min;
}

Interval union_bound_sides(const std::function<double(double)>& center,
                           const std::function<double(double)>& half_width,
                           std::span<const double> t_grid) {
  if (t_grid.empty()) throw std::invalid_argument("union bound needs a non-empty grid");
  const double inf = std::numeric_limits<double>::infinity();
  double joint = -inf;
  double max_center = -inf;
  double max_width = -inf;
  for (double t : t_grid) {
    const double c = center(t);
    const double w = half_width(t);
    joint = std::max(joint, c + w);
    max_center = std::max(max_center, c);
    max_width = std::max(max_width, w);
  }
  return Interval(joint, max_center + max_width);
}

Interval robust_credible_mi(const ContingencyCounts& tbl, const IdmConfig& cfg,
                            const CredibleSpec& spec, const SimplexPoint& t_star) {
  const MiBounds b = mi_interval_bounds(tbl, cfg);
  const double spread = spec.kappa * std::sqrt(mi_variance_leading(tbl, cfg, t_star));
  return Interval(b.i0 + b.r_lb - spread, b.i0 + b.r_ub + spread);
}

Interval robust_credible_mi(const ContingencyCounts& tbl, const IdmConfig& cfg,
                            const CredibleSpec& spec) {
  return robust_credible_mi(tbl, cfg, spec, SimplexPoint::center(tbl.cells()));
}

}  // namespace idm
