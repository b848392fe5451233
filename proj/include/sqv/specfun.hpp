#pragma once

// Special functions used by the quadrature-space evaluators: physicists'
// Hermite polynomials, associated Laguerre polynomials and log-Gamma.
// Everything here is pure and thread-safe.

namespace sqv::specfun {

/// Largest polynomial order accepted by the evaluators.
inline constexpr int kMaxOrder = 512;

/// Physicists' Hermite polynomial H_n(x), forward recurrence
/// H_{n+1} = 2x H_n - 2n H_{n-1}.
/// Throws std::domain_error for non-finite x and std::out_of_range for n
/// outside [0, kMaxOrder].
double hermite_eval(int n, double x);

/// Associated Laguerre polynomial L_p^alpha(x) for x >= 0.
double laguerre_eval(int p, double alpha, double x);

/// ln Gamma(z) for z > 0.
double log_gamma(double z);

/// ln(z!) = ln Gamma(z + 1); defined for half-integers as well.
inline double log_factorial(double z) { return log_gamma(z + 1.0); }

}  // namespace sqv::specfun
