#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace idm {

/// Membership tolerance for hyperparameter vectors on the probability simplex.
inline constexpr double kSimplexTolerance = 1e-9;

/// Observed category counts n_i. Fractional counts are allowed.
class CountVector {
public:
  explicit CountVector(std::vector<double> counts);

  std::size_t size() const noexcept { return counts_.size(); }
  double operator[](std::size_t i) const { return counts_[i]; }
  double total() const noexcept { return total_; }
  std::span<const double> values() const noexcept { return counts_; }

  std::size_t argmax() const noexcept;
  std::size_t argmin() const noexcept;

private:
  std::vector<double> counts_;
  double total_ = 0.0;
};

/// Prior strength s of the imprecise Dirichlet model.
class IdmConfig {
public:
  explicit IdmConfig(double s = 1.0);

  /// Admits s = 0 for limit checks (sigma -> 0). Never use for inference.
  static IdmConfig zero_strength_limit();

  double s() const noexcept { return s_; }
  bool is_limit() const noexcept { return s_ == 0.0; }

private:
  struct LimitTag {};
  IdmConfig(double s, LimitTag) : s_(s) {}
  double s_;
};

/// Returns true iff every component is >= -tol and the components sum to 1
/// within tol.
bool validate_simplex(std::span<const double> t, double tol = kSimplexTolerance);

/// A point t on the closed probability simplex. Components within tolerance of
/// zero are clamped and the point is renormalized to an exact unit sum.
class SimplexPoint {
public:
  explicit SimplexPoint(std::vector<double> t, double tol = kSimplexTolerance);

  static SimplexPoint vertex(std::size_t d, std::size_t i);
  static SimplexPoint center(std::size_t d);

  std::size_t size() const noexcept { return t_.size(); }
  double operator[](std::size_t i) const { return t_[i]; }
  std::span<const double> values() const noexcept { return t_; }

private:
  std::vector<double> t_;
};

/// u_i = (n_i + s t_i) / (n + s) together with the base point u_i^0 = n_i/(n+s)
/// and sigma = s/(n+s).
struct PosteriorMean {
  std::vector<double> u;
  std::vector<double> u0;
  double sigma = 0.0;

  std::size_t size() const noexcept { return u.size(); }
};

/// Closed interval [lower, upper].
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  Interval() = default;
  Interval(double lo, double hi);

  double width() const noexcept { return upper - lower; }
  bool contains(double x, double tol = 0.0) const noexcept {
    return x >= lower - tol && x <= upper + tol;
  }
  bool contains(const Interval& other, double tol = 0.0) const noexcept {
    return other.lower >= lower - tol && other.upper <= upper + tol;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

double sigma_of(const CountVector& counts, const IdmConfig& cfg);

/// u_i^0 = n_i / (n + s).
std::vector<double> base_point(const CountVector& counts, const IdmConfig& cfg);

PosteriorMean u_from_t(const CountVector& counts, const IdmConfig& cfg,
                       const SimplexPoint& t);

/// Raw map for an arbitrary t (used by lattice oracles and the extended simplex);
/// no membership validation.
void u_from_t_unchecked(std::span<const double> counts, double s,
                        std::span<const double> t, std::span<double> u);

}  // namespace idm
