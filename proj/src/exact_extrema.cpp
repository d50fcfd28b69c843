#include "idm/exact_extrema.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace idm {

ConcaveSummand::ConcaveSummand(Fn value, Fn derivative, Curvature curvature)
    : value_(std::move(value)), derivative_(std::move(derivative)), curvature_(curvature) {
  if (!value_ || !derivative_) {
    throw std::invalid_argument("summand requires both a value and a derivative");
  }
  constexpr int kProbes = 10;
  double prev = derivative_(0.0);
  for (int k = 1; k < kProbes; ++k) {
    const double u = static_cast<double>(k) / (kProbes - 1);
    const double cur = derivative_(u);
    if (std::isnan(cur) || std::isnan(prev)) {
      throw std::invalid_argument("summand derivative is NaN on [0, 1]");
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(prev));
    const bool ok = curvature_ == Curvature::concave ? cur <= prev + slack : cur >= prev - slack;
    if (!ok) {
      throw std::invalid_argument(curvature_ == Curvature::concave
                                      ? "summand declared concave but f' increases"
                                      : "summand declared convex but f' decreases");
    }
    prev = cur;
  }
}

ConcaveSummand ConcaveSummand::entropy(const EntropyKernel& kernel) {
  return ConcaveSummand([kernel](double u) { return kernel.h(u); },
                        [kernel](double u) { return kernel.h_prime(u); }, Curvature::concave);
}

ConcaveSummand ConcaveSummand::negated() const {
  return ConcaveSummand([f = value_](double u) { return -f(u); },
                        [df = derivative_](double u) { return -df(u); },
                        curvature_ == Curvature::concave ? Curvature::convex : Curvature::concave);
}

double ConcaveSummand::sum(std::span<const double> u) const {
  double total = 0.0;
  for (double x : u) total += value_(x);
  return total;
}

namespace {

std::optional<std::size_t> single_support(const SimplexPoint& t) {
  std::optional<std::size_t> idx;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 1e-12) {
      if (idx) return std::nullopt;
      idx = i;
    }
  }
  return idx;
}

std::vector<std::size_t> ascending_order(const CountVector& counts) {
  std::vector<std::size_t> order(counts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return counts[a] < counts[b]; });
  return order;
}

ExtremumResult at_vertex(const CountVector& counts, const IdmConfig& cfg, std::size_t i,
                         const ConcaveSummand& f) {
  SimplexPoint t = SimplexPoint::vertex(counts.size(), i);
  PosteriorMean u = u_from_t(counts, cfg, t);
  const double value = f.sum(u.u);
  return ExtremumResult{value, std::move(u), std::move(t), i, std::nullopt};
}

ExtremumResult concave_minimum(const CountVector& counts, const IdmConfig& cfg,
                               const ConcaveSummand& f) {
  return at_vertex(counts, cfg, counts.argmax(), f);
}

ExtremumResult concave_maximum(const CountVector& counts, const IdmConfig& cfg,
                               const ConcaveSummand& f) {
  const std::vector<double> levels = water_level_profile(counts, cfg);
  const auto best = static_cast<std::size_t>(std::min_element(levels.begin(), levels.end()) -
                                             levels.begin());
  const double level = levels[best];
  const std::vector<std::size_t> order = ascending_order(counts);
  const double sigma = sigma_of(counts, cfg);

  if (sigma == 0.0) {
    ExtremumResult r = at_vertex(counts, cfg, order.front(), f);
    r.m_star = best + 1;
    return r;
  }

  const std::vector<double> u0 = base_point(counts, cfg);
  std::vector<double> t(counts.size(), 0.0);
  for (std::size_t k = 0; k <= best; ++k) {
    const std::size_t i = order[k];
    t[i] = std::max(0.0, level - u0[i]) / sigma;
  }
  SimplexPoint tp(std::move(t));
  PosteriorMean u = u_from_t(counts, cfg, tp);
  const double value = f.sum(u.u);
  ExtremumResult r{value, std::move(u), tp, single_support(tp), best + 1};
  return r;
}

ExtremumResult negate(ExtremumResult r) {
  r.value = -r.value;
  return r;
}

}  // namespace

std::vector<double> water_level_profile(const CountVector& counts, const IdmConfig& cfg) {
  const std::vector<std::size_t> order = ascending_order(counts);
  const double denom = counts.total() + cfg.s();
  std::vector<double> levels(counts.size());
  double prefix = cfg.s();
  for (std::size_t m = 1; m <= order.size(); ++m) {
    prefix += counts[order[m - 1]];
    levels[m - 1] = prefix / (static_cast<double>(m) * denom);
  }
  return levels;
}

ExtremumResult min_concave_sum(const CountVector& counts, const IdmConfig& cfg,
                               const ConcaveSummand& f) {
  if (f.curvature() == Curvature::convex) {
    return negate(concave_maximum(counts, cfg, f.negated()));
  }
  return concave_minimum(counts, cfg, f);
}

ExtremumResult max_concave_sum(const CountVector& counts, const IdmConfig& cfg,
                               const ConcaveSummand& f) {
  if (f.curvature() == Curvature::convex) {
    return negate(concave_minimum(counts, cfg, f.negated()));
  }
  return concave_maximum(counts, cfg, f);
}

Interval entropy_interval_exact(const CountVector& counts, const IdmConfig& cfg) {
  const ConcaveSummand h = ConcaveSummand::entropy(EntropyKernel(counts.total() + cfg.s()));
  const double lo = min_concave_sum(counts, cfg, h).value;
  const double hi = max_concave_sum(counts, cfg, h).value;
  return Interval(lo, std::max(lo, hi));
}

}  // namespace idm
