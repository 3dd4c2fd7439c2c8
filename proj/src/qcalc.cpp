#include "deforma/qcalc.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "deforma/errors.hpp"
#include "series.hpp"

namespace deforma::qcalc {
namespace {

void require_nonzero_x(double x, const char* who) {
  if (x == 0.0) throw DomainError(std::string(who) + ": undefined at x = 0");
}

double jackson_sum(const FunctionHandle& f, double a, double ratio, double first_power,
                   const char* who) {
  // sum_{n>=0} r^n * p * f(r^n * p * a) with p = first_power
  double sum = 0.0;
  double weight = first_power;
  for (int n = 0; n < detail::kMaxSeriesTerms; ++n) {
    const double term = weight * f.real(weight * a);
    sum += term;
    if (detail::term_negligible(term, sum, detail::kSeriesTolerance)) return sum;
    weight *= ratio;
  }
  throw ConvergenceError(std::string(who) + ": Jackson sum did not converge in 500 terms");
}

}  // namespace

void require_deformation(double q, const char* who) {
  if (!(q > 0.0)) throw DomainError(std::string(who) + ": deformation parameter must be positive");
  if (std::abs(q - 1.0) <= 1e-9) {
    throw DomainError(std::string(who) + ": deformation parameter must differ from 1");
  }
}

QDeformation::QDeformation(double q, Flavor flavor) : q_(q), flavor_(flavor) {
  require_deformation(q, "QDeformation");
}

double q_bracket(double x, double q) {
  require_deformation(q, "q_bracket");
  const double lq = std::log(q);
  return std::sinh(x * lq) / std::sinh(lq);
}

double Q_bracket(double x, double Q) {
  require_deformation(Q, "Q_bracket");
  const double lq = std::log(Q);
  return std::expm1(x * lq) / std::expm1(lq);
}

double q_factorial(int n, double q) {
  if (n < 0) throw DomainError("q_factorial: negative n");
  double acc = 1.0;
  for (int k = 1; k <= n; ++k) acc *= q_bracket(k, q);
  return acc;
}

double Q_factorial(int n, double Q) {
  if (n < 0) throw DomainError("Q_factorial: negative n");
  double acc = 1.0;
  for (int k = 1; k <= n; ++k) acc *= Q_bracket(k, Q);
  return acc;
}

double Q_binomial(int n, int k, double Q) {
  if (k < 0 || k > n) return 0.0;
  return Q_factorial(n, Q) / (Q_factorial(k, Q) * Q_factorial(n - k, Q));
}

FunctionHandle q_derivative(FunctionHandle f, double q) {
  require_deformation(q, "q_derivative");
  const double denom = q - 1.0 / q;
  return FunctionHandle([f = std::move(f), q, denom](double x) {
    require_nonzero_x(x, "q_derivative");
    return (f(q * x) - f(x / q)) / (denom * x);
  });
}

FunctionHandle Q_derivative(FunctionHandle f, double Q) {
  require_deformation(Q, "Q_derivative");
  return FunctionHandle([f = std::move(f), Q](double x) {
    require_nonzero_x(x, "Q_derivative");
    return (f(Q * x) - f(x)) / ((Q - 1.0) * x);
  });
}

FunctionHandle q_derivative_nested2(FunctionHandle f, double q) {
  require_deformation(q, "q_derivative_nested2");
  const double q2 = q * q;
  const double up = 1.0 / (q2 - 1.0);
  const double down = 1.0 / (1.0 - 1.0 / q2);
  const double denom = q - 1.0 / q;
  return FunctionHandle([f = std::move(f), q2, up, down, denom](double x) {
    require_nonzero_x(x, "q_derivative_nested2");
    const Complex bracket = f(q2 * x) * up + f(x / q2) * down - f(x) * (up + down);
    return bracket / (denom * x * x);
  });
}

FunctionHandle Q_derivative_n(FunctionHandle f, double Q, int n) {
  require_deformation(Q, "Q_derivative_n");
  if (n < 1 || n > 12) throw RangeError("Q_derivative_n: order must be in [1, 12]");
  std::vector<double> weights(n + 1);
  std::vector<double> shifts(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    weights[k] = Q_binomial(n, k, Q) * sign * std::pow(Q, 0.5 * k * (k - 1));
    shifts[k] = std::pow(Q, n - k);
  }
  const double prefactor = std::pow(Q - 1.0, -n) * std::pow(Q, -0.5 * n * (n - 1));
  return FunctionHandle([f = std::move(f), weights, shifts, prefactor, n](double x) {
    require_nonzero_x(x, "Q_derivative_n");
    Complex sum = 0.0;
    for (int k = 0; k <= n; ++k) sum += weights[k] * f(shifts[k] * x);
    return prefactor * sum / std::pow(x, n);
  });
}

FunctionHandle q_derivative_average(FunctionHandle f, double q, int n) {
  require_deformation(q, "q_derivative_average");
  if (n < 1) throw DomainError("q_derivative_average: n must be >= 1");
  const double norm = q_bracket(n, q);
  const double denom = q - 1.0 / q;
  return FunctionHandle([f = std::move(f), q, n, norm, denom](double x) {
    require_nonzero_x(x, "q_derivative_average");
    Complex sum = 0.0;
    for (int k = 0; k < n; ++k) {
      // D^q_x applied to x -> f(s x), s = q^{2k-(n-1)}
      const double s = std::pow(q, 2 * k - (n - 1));
      sum += (f(s * q * x) - f(s * x / q)) / (denom * x);
    }
    return sum / norm;
  });
}

namespace {

template <class Bracket>
double deformed_exp(double a, double z, double tol, Bracket bracket, const char* who) {
  const double step = a * z;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < detail::kMaxSeriesTerms; ++n) {
    term *= step / bracket(n);
    sum += term;
    if (detail::term_negligible(term, sum, tol)) return sum;
  }
  throw ConvergenceError(std::string(who) + ": series did not converge in 500 terms");
}

}  // namespace

double q_exp(double a, double z, double q, double tol) {
  require_deformation(q, "q_exp");
  return deformed_exp(a, z, tol, [q](int n) { return q_bracket(n, q); }, "q_exp");
}

double Q_exp(double a, double x, double Q, double tol) {
  require_deformation(Q, "Q_exp");
  return deformed_exp(a, x, tol, [Q](int n) { return Q_bracket(n, Q); }, "Q_exp");
}

FunctionHandle q_exp_function(double a, double q) {
  require_deformation(q, "q_exp_function");
  return FunctionHandle([a, q](double z) { return Complex(q_exp(a, z, q), 0.0); });
}

FunctionHandle Q_exp_function(double a, double Q) {
  require_deformation(Q, "Q_exp_function");
  return FunctionHandle([a, Q](double x) { return Complex(Q_exp(a, x, Q), 0.0); });
}

double q_integral(const FunctionHandle& f, double a, double q) {
  require_deformation(q, "q_integral");
  if (q > 1.0) q = 1.0 / q;
  return a * (1.0 / q - q) * jackson_sum(f, a, q * q, q, "q_integral");
}

double Q_integral(const FunctionHandle& f, double a, double Q) {
  require_deformation(Q, "Q_integral");
  if (!(Q < 1.0)) throw DomainError("Q_integral: requires 0 < Q < 1");
  return a * (1.0 - Q) * jackson_sum(f, a, Q, 1.0, "Q_integral");
}

double Q_integral01(const FunctionHandle& f, double Q) { return Q_integral(f, 1.0, Q); }

}  // namespace deforma::qcalc
