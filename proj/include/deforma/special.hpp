#pragma once

namespace deforma {

/// Gamma function. Lanczos (g = 7, 9 terms) for x >= 1/2, reflection below.
/// Throws DomainError at nonpositive integers.
double gamma(double x);

/// log Gamma(x) for x > 0, same Lanczos sum.
double log_gamma(double x);

/// Bessel function of the first kind. Power series
///   J_nu(x) = sum_k (-1)^k (x/2)^(2k+nu) / (k! Gamma(nu+k+1))
/// up to x = 13, Hankel asymptotic expansion above.
/// Valid for nu > -1 and 0 <= x <= 50; larger x is rejected with RangeError.
double bessel_j(double nu, double x);

inline constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace deforma
