#include "idm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace idm {

CountVector::CountVector(std::vector<double> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) {
    throw std::invalid_argument("count vector must have at least one category");
  }
  for (double c : counts_) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("counts must be finite");
    }
    if (c < 0.0) {
      throw std::invalid_argument("counts must be non-negative, got " + std::to_string(c));
    }
  }
  total_ = std::accumulate(counts_.begin(), counts_.end(), 0.0);
}

std::size_t CountVector::argmax() const noexcept {
  // std::max_element returns the first maximal element: ties go to the smallest index.
  return static_cast<std::size_t>(std::max_element(counts_.begin(), counts_.end()) -
                                  counts_.begin());
}

std::size_t CountVector::argmin() const noexcept {
  return static_cast<std::size_t>(std::min_element(counts_.begin(), counts_.end()) -
                                  counts_.begin());
}

IdmConfig::IdmConfig(double s) : s_(s) {
  if (!std::isfinite(s) || s <= 0.0) {
    throw std::invalid_argument("prior strength s must be positive and finite");
  }
}

IdmConfig IdmConfig::zero_strength_limit() { return IdmConfig(0.0, LimitTag{}); }

bool validate_simplex(std::span<const double> t, double tol) {
  if (t.empty() || tol < 0.0) return false;
  double sum = 0.0;
  for (double x : t) {
    if (!std::isfinite(x) || x < -tol) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= tol;
}

SimplexPoint::SimplexPoint(std::vector<double> t, double tol) : t_(std::move(t)) {
  if (!validate_simplex(t_, tol)) {
    throw std::invalid_argument("point is not on the probability simplex");
  }
  for (double& x : t_) x = std::max(x, 0.0);
  const double sum = std::accumulate(t_.begin(), t_.end(), 0.0);
  for (double& x : t_) x /= sum;
}

SimplexPoint SimplexPoint::vertex(std::size_t d, std::size_t i) {
  if (i >= d) throw std::out_of_range("vertex index out of range");
  std::vector<double> t(d, 0.0);
  t[i] = 1.0;
  return SimplexPoint(std::move(t));
}

SimplexPoint SimplexPoint::center(std::size_t d) {
  if (d == 0) throw std::invalid_argument("simplex dimension must be positive");
  return SimplexPoint(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

Interval::Interval(double lo, double hi) : lower(lo), upper(hi) {
  if (!(lo <= hi)) {
    throw std::invalid_argument("interval lower bound exceeds upper bound");
  }
}

double sigma_of(const CountVector& counts, const IdmConfig& cfg) {
  const double denom = counts.total() + cfg.s();
  if (denom <= 0.0) throw std::domain_error("n + s must be positive");
  return cfg.s() / denom;
}

std::vector<double> base_point(const CountVector& counts, const IdmConfig& cfg) {
  const double denom = counts.total() + cfg.s();
  if (denom <= 0.0) throw std::domain_error("n + s must be positive");
  std::vector<double> u0(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) u0[i] = counts[i] / denom;
  return u0;
}

void u_from_t_unchecked(std::span<const double> counts, double s, std::span<const double> t,
                        std::span<double> u) {
  const double denom = std::accumulate(counts.begin(), counts.end(), 0.0) + s;
  for (std::size_t i = 0; i < counts.size(); ++i) u[i] = (counts[i] + s * t[i]) / denom;
}

PosteriorMean u_from_t(const CountVector& counts, const IdmConfig& cfg, const SimplexPoint& t) {
  if (t.size() != counts.size()) {
    throw std::invalid_argument("hyperparameter dimension does not match counts");
  }
  PosteriorMean pm;
  pm.u0 = base_point(counts, cfg);
  pm.sigma = sigma_of(counts, cfg);
  pm.u.resize(counts.size());
  u_from_t_unchecked(counts.values(), cfg.s(), t.values(), pm.u);
  return pm;
}

}  // namespace idm
