#pragma once

#include <functional>
#include <span>

#include "idm/mutual_info.hpp"
#include "idm/simplex.hpp"

namespace idm {

/// Coverage level alpha and the matching Gaussian multiplier
/// kappa = sqrt(2) erf^-1(alpha).
struct CredibleSpec {
  double alpha = 0.95;
  double kappa = 0.0;

  /// Throws std::invalid_argument unless 0 < alpha < 1.
  static CredibleSpec from_alpha(double alpha);
};

/// Triangular densities p_t(x) = max(0, 1 - |x - t|) translated over t in
/// [-gamma, gamma].
struct TriangularFamily {
  double gamma = 0.0;

  explicit TriangularFamily(double g);
};

/// p_t([a, b]) = |b*(1 - |b*|/2) - a*(1 - |a*|/2)| with a* = clamp(a - t, -1, 1)
/// and likewise b*. Throws if a > b.
double triangular_mass(double t, double a, double b);

/// Shortest alpha-credible interval of p_t: [t - 1 + sqrt(1-alpha), t + 1 - sqrt(1-alpha)].
/// Requires 0.5 <= alpha < 1.
Interval triangular_shortest_interval(double t, double alpha);

/// Union of the shortest intervals over t in [-gamma, gamma].
Interval triangular_robust_union(double gamma, double alpha);

/// Shortest single interval with coverage >= alpha under every p_t:
///   +-(1 - sqrt(1 - alpha - gamma^2))       if gamma^2 <= (1 - alpha)/2,
///   +-(gamma + 1 - sqrt(2 (1 - alpha)))     otherwise.
Interval triangular_minimal_robust(double gamma, double alpha);

/// Per-t one-sided lower bound of the triangular family, a_t = t - 1 + sqrt(2(1-alpha)),
/// so that [a_t, inf) has coverage exactly alpha.
double triangular_one_sided_lower(double t, double alpha);

/// a_min = min over the grid of a_t, so [a_min, inf) covers under every grid t.
/// Throws on an empty grid or a non-finite a_t.
double one_sided_robust_bound(const std::function<double(double)>& per_t_lower,
                              std::span<const double> t_grid);

/// Both sides of the union bound max_t (E_t + D_t) <= max_t E_t + max_t D_t over
/// a grid: {lower = left-hand side, upper = right-hand side}.
Interval union_bound_sides(const std::function<double(double)>& center,
                           const std::function<double(double)>& half_width,
                           std::span<const double> t_grid);

/// Approximate robust credible interval for the mutual information,
///   [I0 + r_lb - kappa sqrt(Var), I0 + r_ub + kappa sqrt(Var)],
/// with the leading-order variance taken at t_star. Gaussian approximation,
/// so not guaranteed conservative for small samples.
Interval robust_credible_mi(const ContingencyCounts& tbl, const IdmConfig& cfg,
                            const CredibleSpec& spec, const SimplexPoint& t_star);

/// Same with t_star at the centre of the cell simplex.
Interval robust_credible_mi(const ContingencyCounts& tbl, const IdmConfig& cfg,
                            const CredibleSpec& spec);

}  // namespace idm
