#pragma once

#include <vector>

#include "deforma/function.hpp"
#include "deforma/grid.hpp"

/// Quantum potentials of real stationary amplitudes (hbar = m = 1).
namespace deforma::qpotential {

/// -r''(xi) / (2 r(xi)). DomainError when |r(xi)| < 1e-10.
double qp_standard(const FunctionHandle& r, double xi);

/// -(1/2) rho(a)^2 (x t)^{2(a-1)} R''(x) / R(x), 0 < a <= 1.
double qp_mrl(const FunctionHandle& R, double alpha, double t, double x);

/// R(x) = sum_k c_k x^{k alpha}: the form on which the Caputo derivative of
/// order alpha acts termwise.
struct PowerSeriesAmplitude {
  double alpha = 1.0;
  std::vector<double> coeffs;

  double operator()(double x) const;
  /// Termwise Caputo derivative of order alpha.
  PowerSeriesAmplitude caputo() const;

  /// sum_{k < terms} lambda^k x^{k alpha} / Gamma(1 + k alpha)
  static PowerSeriesAmplitude mittag_leffler(double alpha, double lambda, int terms);
};

/// -(1/2) (D^a D^a R)(x) / R(x) with the Caputo derivative D^a, 0 < a <= 1, x >= 0.
double qp_fractional(const PowerSeriesAmplitude& R, double x);

/// Parity-sector quantum potential of the reflection-deformed oscillator:
///   odd:  -r''/(2r) - (D-1) r'/(2 xi r) + (D-1)/(2 xi^2)
///   even: -[r'' + (D-1) r'/xi] / (2r)
/// DomainError when r does not have the declared parity (to 1e-8), at xi = 0,
/// or when |r(xi)| < 1e-10.
double qp_deformed(const FunctionHandle& r, double D, Parity parity, double xi);

/// c(xi) = xi^2 [qp_deformed + (d_D d_D r) / (2r)] with d_D applied twice
/// literally, reflection included. Points at xi = 0 or with |r| < 1e-10 are
/// NaN; meta["omitted"] counts them.
Profile qp_relation_check(const FunctionHandle& r, double D, Parity parity, const Grid& grid);

/// Constants that appear when the odd-sector operator d_xi + (D-1)/xi is
/// squared as a scalar instead of composed with its reflection.
struct RelationConstants {
  /// Constant offset relating (d_D^2 r)/(2r) to -Q in the quoted relation: (D-1)(2D-1)/2.
  double quoted_relation;
  /// 1/xi^2 coefficient of the squared operator, first written form: (D-1)(D-2).
  double square_first_form;
  /// Same coefficient, second written form: (D-1)(2-D).
  double square_second_form;
  /// Offset the second form would imply in the relation: (D-1)(3-D)/2.
  double implied_by_second_form;
};
RelationConstants relation_constants(double D);

}  // namespace deforma::qpotential
