#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "idm/simplex.hpp"
#include "idm/special_functions.hpp"

namespace idm {

enum class Curvature { concave, convex };

/// A summand f of a separable objective F(u) = sum_i f(u_i), together with its
/// derivative and declared curvature. Both callables must be re-entrant.
///
/// Construction spot-checks the declared curvature: f' is sampled on a 10-point
/// grid over [0, 1] and must be non-increasing (concave) or non-decreasing
/// (convex). A mismatch throws std::invalid_argument.
class ConcaveSummand {
public:
  using Fn = std::function<double(double)>;

  ConcaveSummand(Fn value, Fn derivative, Curvature curvature = Curvature::concave);

  /// The expected-entropy summand h for the given kernel.
  static ConcaveSummand entropy(const EntropyKernel& kernel);

  double operator()(double u) const { return value_(u); }
  double derivative(double u) const { return derivative_(u); }
  Curvature curvature() const noexcept { return curvature_; }

  /// -f, with the opposite curvature.
  ConcaveSummand negated() const;

  double sum(std::span<const double> u) const;

private:
  Fn value_;
  Fn derivative_;
  Curvature curvature_;
};

struct ExtremumResult {
  double value = 0.0;
  PosteriorMean u_star;
  SimplexPoint t_star;
  /// Set when the extremum sits on a vertex t = e_i.
  std::optional<std::size_t> vertex_index;
  /// Number of equalized smallest components in the maximizer (maximization only).
  std::optional<std::size_t> m_star;
};

/// Global minimum of sum_i f(u_i) over the posterior-mean simplex. For concave f
/// the minimizer is the vertex at argmax_i n_i (ties to the smallest index);
/// convex f is dispatched to the water-filling maximizer of -f.
ExtremumResult min_concave_sum(const CountVector& counts, const IdmConfig& cfg,
                               const ConcaveSummand& f);

/// Global maximum of sum_i f(u_i). For concave f the smallest components are
/// raised to a common level
///   u~ = min_m (s + sum_{k<=m} n_(k)) / (m (n + s)),  counts sorted ascending,
/// and u_i = max(u_i^0, u~). All m are enumerated.
ExtremumResult max_concave_sum(const CountVector& counts, const IdmConfig& cfg,
                               const ConcaveSummand& f);

/// Exact robust interval of the expected entropy.
Interval entropy_interval_exact(const CountVector& counts, const IdmConfig& cfg);

/// The equalization level u~ for every m = 1..d (index m-1), in sorted order.
/// Exposed for inspection of the m-profile.
std::vector<double> water_level_profile(const CountVector& counts, const IdmConfig& cfg);

}  // namespace idm
