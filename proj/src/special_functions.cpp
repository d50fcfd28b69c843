#include "idm/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace idm {
namespace {

// Integers up to this bound take the tabulated closed forms.
constexpr int kClosedFormLimit = 4096;
// Recurrence target for the asymptotic series; at x >= 10 the truncated
// series below is accurate to a few ulps.
constexpr double kAsymptoticFloor = 10.0;

struct HarmonicTables {
  std::vector<long double> harmonic;  // H_n = sum_{i<=n} 1/i
  std::vector<long double> zeta2_tail;  // pi^2/6 - sum_{i<=n} 1/i^2

  HarmonicTables() : harmonic(kClosedFormLimit), zeta2_tail(kClosedFormLimit) {
    const long double pi2_6 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6.0L;
    long double h = 0.0L;
    long double q = 0.0L;
    for (int n = 0; n < kClosedFormLimit; ++n) {
      if (n > 0) {
        h += 1.0L / n;
        q += 1.0L / (static_cast<long double>(n) * n);
      }
      harmonic[n] = h;
      zeta2_tail[n] = pi2_6 - q;
    }
  }
};

const HarmonicTables& tables() {
  static const HarmonicTables t;
  return t;
}

// Returns n >= 1 if x is (within rounding) the integer n and small enough for
// the tabulated closed form, 0 otherwise.
int closed_form_index(double x) {
  const double r = std::nearbyint(x);
  if (r < 1.0 || r >= kClosedFormLimit) return 0;
  if (std::abs(x - r) > 4.0 * std::numeric_limits<double>::epsilon() * r) return 0;
  return static_cast<int>(r);
}

void check_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(what) + " requires a positive finite argument");
  }
}

double digamma_series(double x) {
  double shift = 0.0;
  while (x < kAsymptoticFloor) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 - inv2 / 12))))));
  return shift + std::log(x) - 0.5 * inv - tail;
}

double trigamma_series(double x) {
  double shift = 0.0;
  while (x < kAsymptoticFloor) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double tail =
      inv * inv2 *
      (1.0 / 6 -
       inv2 * (1.0 / 30 -
               inv2 * (1.0 / 42 -
                       inv2 * (1.0 / 30 -
                               inv2 * (5.0 / 66 - inv2 * (691.0 / 2730 - inv2 * 7.0 / 6))))));
  return shift + inv + 0.5 * inv2 + tail;
}

double gaussian_density(double t) { return std::exp(-t * t); }

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = gaussian_density(lm);
  const double frm = gaussian_density(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double digamma(double x) {
  check_positive(x, "digamma");
  if (const int n = closed_form_index(x)) {
    return static_cast<double>(tables().harmonic[n - 1] - static_cast<long double>(kEulerGamma));
  }
  return digamma_series(x);
}

double trigamma(double x) {
  check_positive(x, "trigamma");
  if (const int n = closed_form_index(x)) {
    return static_cast<double>(tables().zeta2_tail[n - 1]);
  }
  return trigamma_series(x);
}

double digamma_asymptotic(double z) {
  check_positive(z, "digamma_asymptotic");
  const double inv2 = 1.0 / (z * z);
  return std::log(z) + 0.5 / z - inv2 / 12.0 + inv2 * inv2 / 120.0;
}

double erf_quadrature(double x) {
  if (std::isnan(x)) return x;
  const double sign = x < 0.0 ? -1.0 : 1.0;
  // erf(6) differs from 1 by 2e-17.
  const double b = std::min(std::abs(x), 6.0);
  if (b == 0.0) return 0.0;
  const double fa = gaussian_density(0.0);
  const double fm = gaussian_density(0.5 * b);
  const double fb = gaussian_density(b);
  const double integral =
      adaptive_simpson(0.0, b, fa, fm, fb, simpson(0.0, b, fa, fm, fb), 1e-15, 40);
  return sign * std::min(1.0, 2.0 / std::sqrt(std::numbers::pi) * integral);
}

double kappa_from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("credibility level alpha must lie in (0, 1)");
  }
  double lo = 0.0;
  double hi = 40.0;
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    if (erf_quadrature(mid / std::numbers::sqrt2) < alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EntropyKernel::EntropyKernel(double total) : total_(total) {
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::domain_error("entropy kernel requires n + s > 0");
  }
  psi_total_ = digamma(total + 1.0);
}

namespace {
double checked_unit(double u) {
  constexpr double slack = 1e-12;
  if (!(u >= -slack && u <= 1.0 + slack)) {
    throw std::domain_error("entropy summand argument must lie in [0, 1]");
  }
  return std::clamp(u, 0.0, 1.0);
}
}  // namespace

double EntropyKernel::h(double u) const {
  u = checked_unit(u);
  return h_of_count(u * total_);
}

double EntropyKernel::h_prime(double u) const {
  u = checked_unit(u);
  return h_prime_of_count(u * total_);
}

double EntropyKernel::h_of_count(double a) const {
  const double u = checked_unit(a / total_);
  if (u == 0.0) return 0.0;
  a = std::min(a, total_);
  return u * (psi_total_ - digamma(a + 1.0));
}

double EntropyKernel::h_prime_of_count(double a) const {
  checked_unit(a / total_);
  a = std::clamp(a, 0.0, total_);
  return psi_total_ - digamma(a + 1.0) - a * trigamma(a + 1.0);
}

}  // namespace idm
