#include "sqv/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqv::specfun {

namespace {

void check_order(int n) {
  if (n < 0 || n > kMaxOrder) {
    throw std::out_of_range("polynomial order " + std::to_string(n) +
                            " outside [0, " + std::to_string(kMaxOrder) + "]");
  }
}

}  // namespace

double hermite_eval(int n, double x) {
  check_order(n);
  if (!std::isfinite(x)) throw std::domain_error("hermite_eval: non-finite argument");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_eval(int p, double alpha, double x) {
  check_order(p);
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("laguerre_eval: argument must be finite and >= 0");
  }
  if (p == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_gamma(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw std::domain_error("log_gamma: argument must be finite and > 0");
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(z, &sign);  // reentrant, leaves signgam alone
#else
  return std::lgamma(z);
#endif
}

}  // namespace sqv::specfun
