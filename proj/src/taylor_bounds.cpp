#include "idm/taylor_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace idm {
namespace {

void finalize(RobustEstimate& est) {
  if (est.r_ub_per_i.empty() || est.r_ub_per_i.size() != est.r_lb_per_i.size() ||
      est.vertex_values.size() != est.r_ub_per_i.size()) {
    throw std::logic_error("inconsistent remainder vectors");
  }
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (!std::isfinite(est.r_ub_per_i[i]) || !std::isfinite(est.r_lb_per_i[i])) {
      throw std::domain_error("remainder bound for component " + std::to_string(i) +
                              " is not finite; the estimator is not Lipschitz there");
    }
    if (est.r_lb_per_i[i] > est.r_ub_per_i[i]) {
      throw std::domain_error("derivative lower bound exceeds upper bound for component " +
                              std::to_string(i));
    }
  }
  if (!std::isfinite(est.f0)) throw std::domain_error("F(u0) is not finite");
  const auto& ub = est.r_ub_per_i;
  const auto& lb = est.r_lb_per_i;
  est.i1 = static_cast<std::size_t>(std::max_element(ub.begin(), ub.end()) - ub.begin());
  est.i2 = static_cast<std::size_t>(std::min_element(lb.begin(), lb.end()) - lb.begin());
  est.r_ub = ub[est.i1];
  est.r_lb = lb[est.i2];
  est.inner_upper = est.vertex_values[est.i1];
  est.inner_lower = est.vertex_values[est.i2];
}

template <class Objective>
std::vector<double> evaluate_vertices(const CountVector& counts, const IdmConfig& cfg,
                                      Objective&& objective) {
  std::vector<double> values(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const PosteriorMean pm = u_from_t(counts, cfg, SimplexPoint::vertex(counts.size(), i));
    values[i] = objective(std::span<const double>(pm.u));
  }
  return values;
}

double scaled(double sigma, double derivative) {
  // Keep sigma = 0 exact even where the derivative bound is infinite.
  return sigma == 0.0 ? 0.0 : sigma * derivative;
}

void check_compatible(const RobustEstimate& g, const RobustEstimate& h) {
  if (g.size() != h.size()) {
    throw std::invalid_argument("propagated estimates have different dimensions");
  }
  if (std::abs(g.sigma - h.sigma) > 1e-15 * std::max(1.0, g.sigma)) {
    throw std::invalid_argument("propagated estimates were computed for different sigma");
  }
}

}  // namespace

bool RobustEstimate::sandwich_holds(double tol) const {
  const double lo = f0 + r_lb;
  const double hi = f0 + r_ub;
  const double slack =
      tol * std::max({1.0, std::abs(lo), std::abs(hi), std::abs(inner_lower), std::abs(inner_upper)});
  return lo <= inner_lower + slack && inner_lower <= inner_upper + slack &&
         inner_upper <= hi + slack;
}

RobustEstimate concave_remainder_bounds(const CountVector& counts, const IdmConfig& cfg,
                                        const ConcaveSummand& f) {
  const std::vector<double> u0 = base_point(counts, cfg);
  const double sigma = sigma_of(counts, cfg);
  const double denom = counts.total() + cfg.s();

  RobustEstimate est;
  est.sigma = sigma;
  est.f0 = f.sum(u0);
  est.r_ub_per_i.resize(counts.size());
  est.r_lb_per_i.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    // f' is monotone, so its extremes over [u_i^0, u_i^0 + sigma] sit at the ends.
    const double at_base = f.derivative(u0[i]);
    const double at_top = f.derivative((counts[i] + cfg.s()) / denom);
    const bool concave = f.curvature() == Curvature::concave;
    est.r_ub_per_i[i] = scaled(sigma, concave ? at_base : at_top);
    est.r_lb_per_i[i] = scaled(sigma, concave ? at_top : at_base);
  }
  est.vertex_values =
      evaluate_vertices(counts, cfg, [&](std::span<const double> u) { return f.sum(u); });
  finalize(est);
  return est;
}

RobustEstimate approx_interval_general(const CountVector& counts, const IdmConfig& cfg,
                                       const DerivativeBoundProvider& provider) {
  if (!provider.value || !provider.max_partial || !provider.min_partial) {
    throw std::invalid_argument("derivative bound provider is incomplete");
  }
  const ExtendedRegion region{base_point(counts, cfg), sigma_of(counts, cfg)};

  RobustEstimate est;
  est.sigma = region.sigma;
  est.box_enlarged = provider.box_enlarged;
  est.f0 = provider.value(region.u0);
  est.r_ub_per_i.resize(counts.size());
  est.r_lb_per_i.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double hi = provider.max_partial(i, region);
    const double lo = provider.min_partial(i, region);
    if (!std::isfinite(hi) || !std::isfinite(lo)) {
      throw std::domain_error("derivative bound provider returned a non-finite value");
    }
    est.r_ub_per_i[i] = region.sigma * hi;
    est.r_lb_per_i[i] = region.sigma * lo;
  }
  est.vertex_values = evaluate_vertices(counts, cfg, provider.value);
  finalize(est);
  return est;
}

RobustEstimate propagate_sum(const RobustEstimate& g, const RobustEstimate& h, double alpha,
                             double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw std::invalid_argument("sum propagation needs non-negative weights");
  }
  check_compatible(g, h);
  RobustEstimate out;
  out.sigma = g.sigma;
  out.f0 = alpha * g.f0 + beta * h.f0;
  const std::size_t d = g.size();
  out.r_ub_per_i.resize(d);
  out.r_lb_per_i.resize(d);
  out.vertex_values.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    out.r_ub_per_i[i] = alpha * g.r_ub_per_i[i] + beta * h.r_ub_per_i[i];
    out.r_lb_per_i[i] = alpha * g.r_lb_per_i[i] + beta * h.r_lb_per_i[i];
    out.vertex_values[i] = alpha * g.vertex_values[i] + beta * h.vertex_values[i];
  }
  out.nonnegative_certified = g.nonnegative_certified && h.nonnegative_certified;
  out.box_enlarged = g.box_enlarged || h.box_enlarged;
  finalize(out);
  return out;
}

RobustEstimate propagate_product(const RobustEstimate& g, const RobustEstimate& h) {
  if (!g.nonnegative_certified || !h.nonnegative_certified) {
    throw std::invalid_argument(
        "product propagation requires operands certified non-negative with non-negative "
        "derivative bounds");
  }
  check_compatible(g, h);
  // Extremes of each factor over the extended region; the region contains u^0
  // itself, hence the clamps at zero remainder.
  const double g_max = g.f0 + std::max(0.0, g.r_ub);
  const double h_max = h.f0 + std::max(0.0, h.r_ub);
  const double g_min = g.f0 + std::min(0.0, g.r_lb);
  const double h_min = h.f0 + std::min(0.0, h.r_lb);

  RobustEstimate out;
  out.sigma = g.sigma;
  out.f0 = g.f0 * h.f0;
  const std::size_t d = g.size();
  out.r_ub_per_i.resize(d);
  out.r_lb_per_i.resize(d);
  out.vertex_values.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    out.r_ub_per_i[i] = g.r_ub_per_i[i] * h_max + g_max * h.r_ub_per_i[i];
    out.r_lb_per_i[i] = g.r_lb_per_i[i] * h_min + g_min * h.r_lb_per_i[i];
    out.vertex_values[i] = g.vertex_values[i] * h.vertex_values[i];
  }
  out.nonnegative_certified = true;
  out.box_enlarged = g.box_enlarged || h.box_enlarged;
  finalize(out);
  return out;
}

RobustEstimate linear_estimate(const CountVector& counts, const IdmConfig& cfg,
                               std::span<const double> coefficients) {
  if (coefficients.size() != counts.size()) {
    throw std::invalid_argument("coefficient count does not match counts");
  }
  const std::vector<double> u0 = base_point(counts, cfg);
  const double sigma = sigma_of(counts, cfg);
  auto dot = [&](std::span<const double> u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += coefficients[i] * u[i];
    return acc;
  };
  RobustEstimate est;
  est.sigma = sigma;
  est.f0 = dot(u0);
  est.r_ub_per_i.resize(counts.size());
  est.r_lb_per_i.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    est.r_ub_per_i[i] = sigma * coefficients[i];
    est.r_lb_per_i[i] = sigma * coefficients[i];
  }
  est.vertex_values = evaluate_vertices(counts, cfg, dot);
  est.nonnegative_certified =
      std::all_of(coefficients.begin(), coefficients.end(), [](double c) { return c >= 0.0; });
  finalize(est);
  return est;
}

RobustEstimate constant_estimate(std::size_t d, double sigma, double c) {
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  RobustEstimate est;
  est.sigma = sigma;
  est.f0 = c;
  est.r_ub_per_i.assign(d, 0.0);
  est.r_lb_per_i.assign(d, 0.0);
  est.vertex_values.assign(d, c);
  est.nonnegative_certified = c >= 0.0;
  finalize(est);
  return est;
}

DerivativeBoundProvider separable_provider(const ConcaveSummand& f) {
  DerivativeBoundProvider p;
  p.value = [f](std::span<const double> u) { return f.sum(u); };
  const bool concave = f.curvature() == Curvature::concave;
  p.max_partial = [f, concave](std::size_t i, const ExtendedRegion& r) {
    return f.derivative(concave ? r.u0[i] : r.u0[i] + r.sigma);
  };
  p.min_partial = [f, concave](std::size_t i, const ExtendedRegion& r) {
    return f.derivative(concave ? r.u0[i] + r.sigma : r.u0[i]);
  };
  return p;
}

}  // namespace idm
