#include <gtest/gtest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "idm/special_functions.hpp"
#include "support/exact.hpp"

namespace {

using idm::testing::harmonic;
using idm::testing::harmonic2;
using idm::testing::to_double;
constexpr double kPi = std::numbers::pi;

TEST(Digamma, IntegerArgumentsMatchHarmonicNumbers) {
  for (long n = 1; n <= 300; ++n) {
    const double expected = to_double(harmonic(n - 1)) - idm::kEulerGamma;
    EXPECT_NEAR(idm::digamma(static_cast<double>(n)), expected, 1e-13) << "n=" << n;
  }
}

TEST(Digamma, KnownNonIntegerValues) {
  const double g = idm::kEulerGamma;
  EXPECT_NEAR(idm::digamma(0.5), -g - 2.0 * std::log(2.0), 1e-14);
  EXPECT_NEAR(idm::digamma(1.0 / 3.0), -g - kPi / (2.0 * std::sqrt(3.0)) - 1.5 * std::log(3.0),
              1e-13);
  EXPECT_NEAR(idm::digamma(1.5), 2.0 - g - 2.0 * std::log(2.0), 1e-14);
}

TEST(Digamma, AgreesWithBoostOnRandomArguments) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logx(std::log(1e-3), std::log(1e4));
  for (int k = 0; k < 2000; ++k) {
    const double x = std::exp(logx(rng));
    const double ref = boost::math::digamma(x);
    EXPECT_NEAR(idm::digamma(x), ref, 2e-14 * std::max(1.0, std::abs(ref))) << "x=" << x;
  }
}

TEST(Digamma, Recurrence) {
  for (double x : {0.013, 0.7, 2.25, 9.99, 47.3}) {
    EXPECT_NEAR(idm::digamma(x + 1.0) - idm::digamma(x), 1.0 / x, 1e-12 * std::max(1.0, 1.0 / x));
  }
}

TEST(Digamma, RejectsNonPositive) {
  EXPECT_THROW(idm::digamma(0.0), std::domain_error);
  EXPECT_THROW(idm::digamma(-2.5), std::domain_error);
}

TEST(Trigamma, IntegerArgumentsMatchClosedForm) {
  for (long n = 1; n <= 300; ++n) {
    const double expected = kPi * kPi / 6.0 - to_double(harmonic2(n - 1));
    EXPECT_NEAR(idm::trigamma(static_cast<double>(n)), expected, 1e-13) << "n=" << n;
  }
}

TEST(Trigamma, KnownNonIntegerValues) {
  constexpr double catalan = 0.915965594177219015;
  EXPECT_NEAR(idm::trigamma(0.5), kPi * kPi / 2.0, 1e-13);
  EXPECT_NEAR(idm::trigamma(0.25), kPi * kPi + 8.0 * catalan, 1e-13);
}

TEST(Trigamma, AgreesWithBoostOnRandomArguments) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logx(std::log(1e-3), std::log(1e4));
  for (int k = 0; k < 2000; ++k) {
    const double x = std::exp(logx(rng));
    const double ref = boost::math::trigamma(x);
    EXPECT_NEAR(idm::trigamma(x), ref, 2e-14 * std::max(1.0, ref)) << "x=" << x;
  }
}

TEST(Trigamma, RejectsNonPositive) {
  EXPECT_THROW(idm::trigamma(0.0), std::domain_error);
  EXPECT_THROW(idm::trigamma(-1.0), std::domain_error);
}

TEST(DigammaAsymptotic, ShiftedToOne) {
  // psi(6) = psi(1) + H_5, so psi(1) ~ asymptotic(5) - H_5.
  const double approx = idm::digamma_asymptotic(5.0) - to_double(harmonic(5));
  EXPECT_NEAR(approx, -idm::kEulerGamma, 1e-6);
}

TEST(DigammaAsymptotic, ErrorShrinksWithArgument) {
  double previous = 1.0;
  for (double z : {6.0, 12.0, 24.0, 48.0}) {
    const double err = std::abs(idm::digamma_asymptotic(z) - boost::math::digamma(z + 1.0));
    EXPECT_LT(err, previous);
    EXPECT_LT(err, 1.0 / std::pow(z, 6));
    previous = err;
  }
}

TEST(ErfQuadrature, MatchesStdErf) {
  for (double x = -5.0; x <= 5.0; x += 0.125) {
    EXPECT_NEAR(idm::erf_quadrature(x), std::erf(x), 1e-12) << "x=" << x;
  }
}

TEST(Kappa, InvertsErf) {
  for (double alpha : {0.01, 0.5, 0.6827, 0.9, 0.95, 0.99, 0.999999}) {
    const double k = idm::kappa_from_alpha(alpha);
    EXPECT_NEAR(std::erf(k / std::sqrt(2.0)), alpha, 1e-10) << "alpha=" << alpha;
  }
}

TEST(Kappa, TwoSigma) { EXPECT_NEAR(idm::kappa_from_alpha(0.9545), 2.0, 1e-3); }

TEST(Kappa, RejectsOutOfRange) {
  EXPECT_THROW(idm::kappa_from_alpha(0.0), std::domain_error);
  EXPECT_THROW(idm::kappa_from_alpha(1.0), std::domain_error);
  EXPECT_THROW(idm::kappa_from_alpha(-0.3), std::domain_error);
}

TEST(Kappa, MonotoneAndVanishingAtZero) {
  EXPECT_LT(idm::kappa_from_alpha(1e-9), 1e-8);
  EXPECT_NEAR(idm::kappa_from_alpha(0.6827), 1.0, 1e-3);
  double previous = 0.0;
  for (double alpha = 0.05; alpha < 1.0; alpha += 0.05) {
    const double k = idm::kappa_from_alpha(alpha);
    EXPECT_GT(k, previous);
    previous = k;
  }
}

TEST(EntropyKernel, ExampleValuesAreExact) {
  const idm::EntropyKernel k(10.0);
  using idm::testing::Rational;
  EXPECT_NEAR(k.h(0.3), to_double(Rational(2761, 8400)), 1e-12);
  EXPECT_NEAR(k.h(0.4), to_double(Rational(2131, 6300)), 1e-12);
  EXPECT_NEAR(k.h(0.6), to_double(Rational(1207, 4200)), 1e-12);
  EXPECT_NEAR(k.h(0.7), to_double(Rational(847, 3600)), 1e-12);
  EXPECT_NEAR(k.h_of_count(3.0), k.h(0.3), 1e-15);
}

TEST(EntropyKernel, VanishesAtEndpoints) {
  for (double total : {1.0, 2.5, 10.0, 77.0}) {
    const idm::EntropyKernel k(total);
    EXPECT_EQ(k.h(0.0), 0.0);
    EXPECT_EQ(k.h(1.0), 0.0);
  }
}

TEST(EntropyKernel, DerivativeMatchesFiniteDifference) {
  const idm::EntropyKernel k(13.0);
  for (double u : {0.05, 0.2, 0.5, 0.81, 0.95}) {
    const double step = 1e-6;
    const double fd = (k.h(u + step) - k.h(u - step)) / (2.0 * step);
    EXPECT_NEAR(k.h_prime(u), fd, 1e-7) << "u=" << u;
  }
}

TEST(EntropyKernel, StrictlyConcave) {
  // h''(u) = -2N psi'(Nu+1) - N^2 u psi''(Nu+1), evaluated with Boost.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int total = 2; total <= 100; ++total) {
    const idm::EntropyKernel k(total);
    for (int j = 0; j < 11; ++j) {
      const double u = unit(rng);
      const double x = total * u + 1.0;
      const double second = -2.0 * total * boost::math::trigamma(x) -
                            double(total) * total * u * boost::math::polygamma(2, x);
      EXPECT_LT(second, 0.0);
      const double step = 1e-4;
      if (u > step && u < 1.0 - step) EXPECT_LT(k.h_prime(u + step), k.h_prime(u - step));
      ++checked;
    }
  }
  EXPECT_GE(checked, 1000);
}

}  // namespace
