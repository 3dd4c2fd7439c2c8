#pragma once

#include "deforma/function.hpp"

/// q-calculus (symmetric bracket, Jackson derivative) and Q-calculus
/// (one-sided bracket and derivative).
namespace deforma::qcalc {

enum class Flavor { symmetric_q, onesided_Q };

/// Validated deformation parameter: q > 0 and |q - 1| > 1e-9.
class QDeformation {
 public:
  QDeformation(double q, Flavor flavor);
  double q() const { return q_; }
  Flavor flavor() const { return flavor_; }

 private:
  double q_;
  Flavor flavor_;
};

/// Throws DomainError unless q > 0 and |q - 1| > 1e-9.
void require_deformation(double q, const char* who);

/// [x]_q = (q^x - q^-x) / (q - q^-1), evaluated as sinh(x ln q) / sinh(ln q).
double q_bracket(double x, double q);
/// [x]_Q = (Q^x - 1) / (Q - 1), evaluated with expm1.
double Q_bracket(double x, double Q);

double q_factorial(int n, double q);
double Q_factorial(int n, double Q);
/// Gaussian binomial [n]_Q! / ([k]_Q! [n-k]_Q!).
double Q_binomial(int n, int k, double Q);

/// x -> (f(qx) - f(x/q)) / ((q - 1/q) x). Evaluating at x = 0 throws.
FunctionHandle q_derivative(FunctionHandle f, double q);
/// x -> (f(Qx) - f(x)) / ((Q - 1) x). Evaluating at x = 0 throws.
FunctionHandle Q_derivative(FunctionHandle f, double Q);

/// Closed form of the q-derivative applied twice:
///   [f(q^2 x)/(q^2 - 1) + f(q^-2 x)/(1 - q^-2)
///    - f(x) (1/(q^2 - 1) + 1/(1 - q^-2))] / ((q - 1/q) x^2)
FunctionHandle q_derivative_nested2(FunctionHandle f, double q);

/// n-th power of the Q-derivative in closed form, 1 <= n <= 12:
///   (Q-1)^-n Q^{-n(n-1)/2} x^-n sum_k [n k]_Q (-1)^k Q^{k(k-1)/2} f(Q^{n-k} x)
FunctionHandle Q_derivative_n(FunctionHandle f, double Q, int n);

/// The q^n-derivative written as the average of n shifted q-derivatives,
///   (1/[n]_q) sum_{k=0}^{n-1} D^q_x [f(q^{2k-(n-1)} x)].
/// Equals q_derivative(f, q^n).
FunctionHandle q_derivative_average(FunctionHandle f, double q, int n);

/// e_q(az) = sum a^n z^n / [n]_q!, truncated when |term| < tol |sum|;
/// ConvergenceError after 500 terms.
double q_exp(double a, double z, double q, double tol = 1e-14);
/// e_Q(ax) = sum a^n x^n / [n]_Q!.
double Q_exp(double a, double x, double Q, double tol = 1e-14);

FunctionHandle q_exp_function(double a, double q);
FunctionHandle Q_exp_function(double a, double Q);

/// Jackson integral of Re f over [0, a]:
///   a (q^-1 - q) sum_n q^{2n+1} f(q^{2n+1} a).
/// q > 1 is mapped to 1/q (the bracket is symmetric under q -> 1/q).
double q_integral(const FunctionHandle& f, double a, double q);

/// Jackson Q-integral of Re f over [0, a]: a (1 - Q) sum_k Q^k f(Q^k a), 0 < Q < 1.
double Q_integral(const FunctionHandle& f, double a, double Q);
double Q_integral01(const FunctionHandle& f, double Q);

}  // namespace deforma::qcalc
