#pragma once

// Gamma-family special functions used by the bound calculus.
//
// All functions take strictly positive real arguments and throw
// std::domain_error otherwise. They are pure and thread-safe.

namespace pboost::specfun {

/// Euler-Mascheroni constant, equal to -digamma(1).
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln Gamma(a) - ln Gamma(b).
///
/// Evaluated without forming the two log-gammas separately, so the result
/// keeps full relative precision when a and b are large and close together
/// (the regime of Gamma(T + rho) / Gamma(T + 1) for large T).
double log_gamma_ratio(double a, double b);

/// ln Gamma(b + d) - ln Gamma(b), with the offset d taken exactly.
/// Use this when b + d would round, e.g. T + rho with T in the thousands.
double log_gamma_shift(double b, double d);

/// ln B(a, b).
double log_beta(double a, double b);

/// Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta(double a, double b);

/// Digamma psi(x) = d/dx ln Gamma(x), absolute error below 1e-10.
double digamma(double x);

}  // namespace pboost::specfun
