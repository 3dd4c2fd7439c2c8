#pragma once

#include <Eigen/Dense>
#include <vector>

#include "deforma/function.hpp"
#include "deforma/polygauss.hpp"

/// D-deformed calculus: the reflection-carrying derivative
///   d_D = d/dxi + (D-1)/(2 xi) (1 - R),   (R f)(xi) = f(-xi),
/// together with its brackets, exponential, integral and ladder operators.
namespace deforma::dcalc {

/// Throws DomainError unless 0 < D < 2.
void require_dimension(double D, const char* who);

/// [n]_D = n for even n, n + D - 1 for odd n.
double d_bracket(int n, double D);
/// [n]_D! as the product of brackets. RangeError for n > 170.
double d_factorial(int n, double D);
/// Gamma-function form of the product:
///   even n: 2^n (n/2)! Gamma((n+D)/2) / Gamma(D/2)
///   odd n:  2^n ((n-1)/2)! Gamma((n+1+D)/2) / Gamma(D/2)
double d_factorial_gamma_form(int n, double D);
/// The same expression with the integer factorials replaced by the bare
/// numbers n/2 and (n-1)/2, as it is sometimes quoted. Kept only so the
/// verification report can show how far it is from the product.
double d_factorial_quoted_form(int n, double D);

/// xi -> f'(xi) + (D-1)/(2 xi) (f(xi) - f(-xi)); throws at xi = 0.
/// f' is analytic when f carries it, otherwise a 4th-order stencil. When f
/// carries two analytic derivatives the result carries one.
FunctionHandle d_derivative(const FunctionHandle& f, double D,
                            double h = kFirstDerivativeStep);

/// Exact d_D on p e^{-xi^2/2} with D kept symbolic.
PolyGauss d_derivative(const PolyGauss& f);
/// (xi - d_D) f, i.e. sqrt(2) times the creation operator.
PolyGauss raise(const PolyGauss& f);
/// (xi + d_D) f, i.e. sqrt(2) times the annihilation operator.
PolyGauss lower(const PolyGauss& f);

/// E_D(z) = sum z^n / [n]_D!, truncated at relative tol; ConvergenceError after 500 terms.
double d_exp(double D, double z, double tol = 1e-14);
/// xi -> E_D(lambda xi) with three analytic derivatives.
FunctionHandle d_exp_function(double D, double lambda);

/// The inverse of d_D anchored at 0, evaluated at x, for F smooth on
/// [-|x|, |x|]. Formally the alternating series
///   sum_n (-1)^n I_n(x),  I_0 = int_0 F,  I_{n+1} = int_0 (D-1)/(2s) (1 - R) I_n ds.
/// Each odd power s^k is damped by (D-1)/k per step, so for D near 0 or 2
/// the series needs hundreds of terms. Here it is summed in one step by
/// solving (1 + T) y = I_0 on a 48-term Chebyshev expansion over [-|x|, |x|].
double d_integral(const FunctionHandle& F, double D, double x);

/// The same series truncated after `terms` (1..30) terms, evaluated term by
/// term. ConvergenceError if |I_n| grows for 5 consecutive terms.
double d_integral_series(const FunctionHandle& F, double D, double x, int terms = 30);

enum class LadderFlavor { q, Q, D };
const char* to_string(LadderFlavor flavor);

/// Truncated Fock-space matrices of size (N+1) x (N+1).
struct LadderRep {
  int dim = 0;
  Eigen::MatrixXd a;
  Eigen::MatrixXd adag;
  Eigen::MatrixXd number;
  LadderFlavor flavor = LadderFlavor::D;
  double parameter = 1.0;
};

/// a[n-1, n] = sqrt([n]) with the flavor's bracket; adag = a^T. N >= 2.
LadderRep ladder(double parameter, LadderFlavor flavor, int N);

/// c_n = alpha^n / sqrt([n]_D! E_D(|alpha|^2)), n = 0..N. RangeError when
/// |c_N|^2 >= 1e-12 (the truncation would drop visible weight).
std::vector<Complex> coherent_coeffs(Complex alpha, double D, int N);

/// |n> = prefactor * shape, shape = (xi - d_D)^n e^{-xi^2/2} exactly and
/// prefactor = 2^{-n/2} / sqrt([n]_D!).
struct Eigenstate {
  int n = 0;
  double D = 1.0;
  PolyGauss shape;
  double prefactor = 1.0;

  double evaluate(double xi) const { return prefactor * shape.evaluate(xi, D); }
  FunctionHandle to_function(int derivative_depth = 3) const {
    return shape.to_function(D, prefactor, derivative_depth);
  }
};

/// n <= 40.
Eigenstate eigenfunction(int n, double D);

/// sigma(D) = 2 pi^{D/2} / Gamma(D/2).
double sigma(double D);
/// (sigma(D)/2) |xi|^{D-1}
double integration_weight(double D, double xi);
/// pi^{D/2} R0^D / Gamma(1 + D/2)
double sphere_volume(double D, double R0);

/// int f g (sigma(D)/2) |xi|^{D-1} dxi over the real line, from exact Gaussian moments.
double weighted_inner_product(const PolyGauss& f, const PolyGauss& g, double D);
double weighted_inner_product(const Eigenstate& f, const Eigenstate& g);

}  // namespace deforma::dcalc
