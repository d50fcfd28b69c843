#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "idm/exact_extrema.hpp"
#include "idm/simplex.hpp"

namespace idm {

/// The extended region {u : u_i >= u_i^0, sum_i u_i <= 1} over which remainder
/// derivatives are bounded. Every coordinate ranges over [u_i^0, u_i^0 + sigma].
struct ExtendedRegion {
  std::vector<double> u0;
  double sigma = 0.0;
};

/// Caller-supplied bounds on the partial derivatives of a general estimator F.
///
/// `max_partial(i, region)` must return an upper bound on dF/du_i over the
/// extended region (and `min_partial` a lower bound). Bounding over the larger
/// box prod_i [u_i^0, u_i^0 + sigma] is allowed; set `box_enlarged` so the
/// result records it. All callables must be re-entrant.
struct DerivativeBoundProvider {
  std::function<double(std::span<const double> u)> value;
  std::function<double(std::size_t i, const ExtendedRegion& region)> max_partial;
  std::function<double(std::size_t i, const ExtendedRegion& region)> min_partial;
  bool box_enlarged = false;
};

/// First-order expansion of F around u^0 with bounded remainder:
///   F0 + r_lb <= F(u^2) and F(u^1) <= F0 + r_ub,
/// bracketing the robust interval of F on both sides to O(sigma^2).
struct RobustEstimate {
  double f0 = 0.0;
  std::vector<double> r_ub_per_i;
  std::vector<double> r_lb_per_i;
  double r_ub = 0.0;
  double r_lb = 0.0;
  double inner_upper = 0.0;
  double inner_lower = 0.0;
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  /// F evaluated at each vertex t = e_i; inner bounds are read off this.
  std::vector<double> vertex_values;
  double sigma = 0.0;
  /// F >= 0 and every per-component derivative bound >= 0 (product propagation
  /// precondition). Set by the producer, never inferred.
  bool nonnegative_certified = false;
  bool box_enlarged = false;

  std::size_t size() const noexcept { return r_ub_per_i.size(); }
  Interval conservative() const { return Interval(f0 + r_lb, f0 + r_ub); }
  Interval inner() const { return Interval(inner_lower, inner_upper); }
  /// f0 + r_lb <= inner_lower <= inner_upper <= f0 + r_ub, with a relative slack.
  bool sandwich_holds(double tol = 1e-12) const;
};

/// Remainder bounds for F(u) = sum_i f(u_i) with concave (or convex) f:
///   r_ub_i = sigma f'(u_i^0),  r_lb_i = sigma f'(u_i^0 + sigma)
/// (swapped for convex f). Throws std::domain_error if f' is unbounded at a
/// required point, e.g. -u log u at u = 0.
RobustEstimate concave_remainder_bounds(const CountVector& counts, const IdmConfig& cfg,
                                        const ConcaveSummand& f);

/// General estimator: remainder bounds from the provider's derivative extremes.
RobustEstimate approx_interval_general(const CountVector& counts, const IdmConfig& cfg,
                                       const DerivativeBoundProvider& provider);

/// Bounds for alpha G + beta H (alpha, beta >= 0). Per-component remainders are
/// combined before taking max/min over components.
RobustEstimate propagate_sum(const RobustEstimate& g, const RobustEstimate& h, double alpha = 1.0,
                             double beta = 1.0);

/// Bounds for G * H where both operands carry the non-negativity certificate.
RobustEstimate propagate_product(const RobustEstimate& g, const RobustEstimate& h);

/// F(u) = sum_i c_i u_i. Certified non-negative when every c_i >= 0.
RobustEstimate linear_estimate(const CountVector& counts, const IdmConfig& cfg,
                               std::span<const double> coefficients);

/// F(u) = c on a d-dimensional simplex with the given sigma. Certified
/// non-negative when c >= 0.
RobustEstimate constant_estimate(std::size_t d, double sigma, double c);

/// Provider for a separable objective, bounding f' exactly per coordinate.
DerivativeBoundProvider separable_provider(const ConcaveSummand& f);

}  // namespace idm
