#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqv/specfun.hpp"

using namespace sqv::specfun;

namespace {

// Explicit-sum oracles, independent of the recurrences under test.
double hermite_explicit(int n, double x) {
  double s = 0.0;
  for (int m = 0; 2 * m <= n; ++m) {
    s += std::pow(-1.0, m) * std::pow(2.0 * x, n - 2 * m) / (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0));
  }
  return std::tgamma(n + 1.0) * s;
}

double laguerre_explicit(int p, double alpha, double x) {
  double s = 0.0;
  for (int i = 0; i <= p; ++i) {
    const double binom = std::tgamma(p + alpha + 1.0) / (std::tgamma(p - i + 1.0) * std::tgamma(alpha + i + 1.0));
    s += std::pow(-1.0, i) * binom * std::pow(x, i) / std::tgamma(i + 1.0);
  }
  return s;
}

}  // namespace

TEST_CASE("hermite_eval examples") {
  CHECK(hermite_eval(0, 3.7) == 1.0);
  CHECK(hermite_eval(1, 2.0) == 4.0);
  CHECK(hermite_eval(3, 1.0) == doctest::Approx(-4.0).epsilon(1e-15));
}

TEST_CASE("hermite_eval agrees with the explicit sum") {
  for (int n = 0; n <= 12; ++n) {
    for (double x = -3.0; x <= 3.0; x += 0.37) {
      const double ref = hermite_explicit(n, x);
      CHECK(std::abs(hermite_eval(n, x) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("hermite recurrence consistency, n <= 30 on [-6, 6]") {
  for (int n = 1; n < 30; ++n) {
    for (int step = -60; step <= 60; ++step) {
      const double x = 0.1 * step;
      const double hp = hermite_eval(n + 1, x);
      const double h = hermite_eval(n, x);
      const double hm = hermite_eval(n - 1, x);
      const double scale = std::abs(hp) + std::abs(2 * x * h) + std::abs(2.0 * n * hm);
      CHECK(std::abs(hp - 2 * x * h + 2.0 * n * hm) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("hermite_eval errors") {
  CHECK_THROWS_AS(hermite_eval(2, std::nan("")), std::domain_error);
  CHECK_THROWS_AS(hermite_eval(2, INFINITY), std::domain_error);
  CHECK_THROWS_AS(hermite_eval(-1, 0.0), std::out_of_range);
  CHECK_THROWS_AS(hermite_eval(kMaxOrder + 1, 0.0), std::out_of_range);
  CHECK_NOTHROW(hermite_eval(kMaxOrder, 0.5));
}

TEST_CASE("laguerre_eval examples") {
  CHECK(laguerre_eval(0, 5.0, 2.3) == 1.0);
  CHECK(laguerre_eval(1, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(laguerre_eval(2, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  // L_p^alpha(0) = binomial(p + alpha, p)
  CHECK(laguerre_eval(3, 2.0, 0.0) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("laguerre_eval agrees with the explicit sum") {
  for (int p = 0; p <= 10; ++p) {
    for (double alpha : {0.0, 1.0, 2.0, 2.5, 6.0}) {
      for (double x = 0.0; x <= 8.0; x += 0.41) {
        const double ref = laguerre_explicit(p, alpha, x);
        CHECK(std::abs(laguerre_eval(p, alpha, x) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("laguerre differential identity by central differences") {
  constexpr double h = 1e-4;
  for (int p = 0; p <= 6; ++p) {
    for (double alpha : {0.0, 1.0, 2.5, 4.0}) {
      for (double x = 0.5; x <= 5.0; x += 0.25) {
        const double l = laguerre_eval(p, alpha, x);
        const double lp = laguerre_eval(p, alpha, x + h);
        const double lm = laguerre_eval(p, alpha, x - h);
        const double d1 = (lp - lm) / (2 * h);
        const double d2 = (lp - 2 * l + lm) / (h * h);
        CHECK(std::abs(x * d2 + (alpha + 1 - x) * d1 + p * l) <= 1e-4);
      }
    }
  }
}

TEST_CASE("laguerre_eval errors") {
  CHECK_THROWS_AS(laguerre_eval(2, 0.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(laguerre_eval(2, 0.0, std::nan("")), std::domain_error);
}

TEST_CASE("log_gamma") {
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
  CHECK(log_factorial(1.5) == doctest::Approx(std::log(0.75 * std::sqrt(std::numbers::pi))).epsilon(1e-14));

  double fact = 1.0;
  for (int n = 0; n <= 18; ++n) {
    if (n > 0) fact *= n;
    CHECK(std::abs(std::exp(log_gamma(n + 1.0)) - fact) <= 1e-12 * fact);
  }
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-2.5), std::domain_error);
}
