#pragma once

namespace idm {

inline constexpr double kEulerGamma = 0.57721566490153286;

/// Digamma psi(x) for x > 0. Integer arguments use the harmonic-sum closed form
/// psi(n+1) = -gamma + sum_{i<=n} 1/i; everything else uses upward recurrence
/// followed by the asymptotic series.
double digamma(double x);

/// Trigamma psi'(x) for x > 0, with psi'(n+1) = pi^2/6 - sum_{i<=n} 1/i^2 at
/// integers.
double trigamma(double x);

/// Short asymptotic form of psi(z+1):
///   log z + 1/(2z) - 1/(12 z^2) + 1/(120 z^4),
/// error O(z^-6). Intended for z >= 6; smaller arguments should be shifted with
/// psi(x) = psi(x+1) - 1/x first.
double digamma_asymptotic(double z);

/// Error function computed by adaptive Simpson quadrature of the Gaussian density.
double erf_quadrature(double x);

/// kappa such that alpha = erf(kappa / sqrt(2)), by bisection on [0, 40].
double kappa_from_alpha(double alpha);

/// Summand of the expected entropy under a Dirichlet posterior of total
/// strength `total` = n + s:
///   h(u) = u [psi(total + 1) - psi(total u + 1)].
class EntropyKernel {
public:
  explicit EntropyKernel(double total);

  double total() const noexcept { return total_; }

  double h(double u) const;
  double h_prime(double u) const;

  /// h at u = a / total, taking the pseudo-count a = n_i + s t_i directly so
  /// integral a hits the closed forms without a round trip through u.
  double h_of_count(double a) const;
  double h_prime_of_count(double a) const;

private:
  double total_;
  double psi_total_;
};

}  // namespace idm
