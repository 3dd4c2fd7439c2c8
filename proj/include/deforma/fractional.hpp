#pragma once

#include "deforma/errors.hpp"
#include "deforma/function.hpp"

namespace deforma::fractional {

/// Coefficient of x^{(n-1)a} in the Caputo derivative of x^{na}:
/// Gamma(1+na)/Gamma(1+(n-1)a) for n > 0, and 0 for n = 0.
double caputo_power_coeff(int n, double alpha);

/// The fractional bracket [n]_a. Same value as caputo_power_coeff; tends to n as a -> 1.
double frac_bracket(int n, double alpha);

/// Caputo derivative of order alpha in (0, 2) at x > 0 with lower limit 0.
///
/// For alpha < 1, f is replaced by its piecewise-linear interpolant on a
/// uniform grid of step ~h over [0, x] and the weakly singular kernel
/// (x - s)^{-alpha} is integrated exactly against it. For alpha > 1 the same
/// scheme with order alpha - 1 is applied to f'. alpha = 1 returns f'(x).
/// A warning is emitted when h > x/16.
double caputo(const FunctionHandle& f, double alpha, double x, double h = 1.0 / 512,
              Warnings* warnings = nullptr);

inline constexpr double kDefaultCutoff = 12.0;
inline constexpr double kDefaultStep = 1.0 / 256;

/// Riesz derivative, 0 < alpha < 2:
///   Gamma(1+a) sin(pi a/2)/pi * int_0^cutoff [f(x+s) - 2f(x) + f(x-s)] / s^{1+a} ds.
/// On [0, h] the second difference is replaced by f''(x) s^2.
double riesz(const FunctionHandle& f, double alpha, double x, double cutoff = kDefaultCutoff,
             double h = kDefaultStep, Warnings* warnings = nullptr);

/// Feller derivative, 0 <= alpha < 1:
///   Gamma(1+a) cos(pi a/2)/pi * int_0^cutoff [f(x+s) - f(x-s)] / s^{1+a} ds.
/// On [0, h] the first difference is replaced by 2 f'(x) s.
double feller(const FunctionHandle& f, double alpha, double x, double cutoff = kDefaultCutoff,
              double h = kDefaultStep, Warnings* warnings = nullptr);

/// sum_k z^{ak} / Gamma(1+ak), z >= 0. Truncated once a term falls below
/// tol times the partial sum; ConvergenceError after 500 terms.
double mittag_leffler(double alpha, double z, double tol = 1e-14);

/// rho(a) = Gamma(1+a) Gamma(2-a)^2, 0 < a <= 1.
double mrl_rho(double alpha);

}  // namespace deforma::fractional
