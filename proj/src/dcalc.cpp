#include "deforma/dcalc.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "deforma/errors.hpp"
#include "deforma/qcalc.hpp"
#include "deforma/special.hpp"
#include "series.hpp"

namespace deforma::dcalc {

void require_dimension(double D, const char* who) {
  if (!(D > 0.0 && D < 2.0)) throw DomainError(std::string(who) + ": D must lie in (0, 2)");
}

double d_bracket(int n, double D) {
  require_dimension(D, "d_bracket");
  if (n < 0) throw DomainError("d_bracket: n must be >= 0");
  return (n % 2 == 0) ? n : n + D - 1.0;
}

double d_factorial(int n, double D) {
  require_dimension(D, "d_factorial");
  if (n < 0) throw DomainError("d_factorial: n must be >= 0");
  if (n > 170) throw RangeError("d_factorial: n > 170 overflows");
  double acc = 1.0;
  for (int k = 1; k <= n; ++k) acc *= d_bracket(k, D);
  return acc;
}

double d_factorial_gamma_form(int n, double D) {
  require_dimension(D, "d_factorial_gamma_form");
  if (n < 0) throw DomainError("d_factorial_gamma_form: n must be >= 0");
  const int half = n / 2;
  const double shift = (n % 2 == 0) ? 0.0 : 1.0;
  return std::pow(2.0, n) * std::tgamma(half + 1.0) * gamma((n + shift + D) / 2.0) /
         gamma(D / 2.0);
}

double d_factorial_quoted_form(int n, double D) {
  require_dimension(D, "d_factorial_quoted_form");
  if (n < 0) throw DomainError("d_factorial_quoted_form: n must be >= 0");
  const int half = n / 2;
  const double shift = (n % 2 == 0) ? 0.0 : 1.0;
  return std::pow(2.0, n) * half * gamma((n + shift + D) / 2.0) / gamma(D / 2.0);
}

FunctionHandle d_derivative(const FunctionHandle& f, double D, double h) {
  require_dimension(D, "d_derivative");
  const double c = 0.5 * (D - 1.0);
  Parity parity = Parity::none;
  if (f.parity_hint() == Parity::even) parity = Parity::odd;
  if (f.parity_hint() == Parity::odd) parity = Parity::even;

  FunctionHandle g(
      [f, c, h](double xi) {
        if (xi == 0.0) throw DomainError("d_derivative: undefined at xi = 0");
        return first_derivative(f, xi, h) + c / xi * (f(xi) - f(-xi));
      },
      Interval::real_line(), parity);
  if (f.derivative_depth() < 2) return g;

  const FunctionHandle& f1 = f.derivative();
  const FunctionHandle& f2 = f1.derivative();
  FunctionHandle g1(
      [f, f1, f2, c](double xi) {
        if (xi == 0.0) throw DomainError("d_derivative: undefined at xi = 0");
        return f2(xi) + c / xi * (f1(xi) + f1(-xi)) - c / (xi * xi) * (f(xi) - f(-xi));
      },
      Interval::real_line(), f.parity_hint());
  return g.with_derivative(g1);
}

PolyGauss d_derivative(const PolyGauss& f) {
  const DPoly d_minus_one = DPoly::symbol() - DPoly(1);
  return f.differentiate() + d_minus_one * f.divide_odd_part_by_xi();
}

PolyGauss raise(const PolyGauss& f) { return f.multiply_by_xi() - d_derivative(f); }
PolyGauss lower(const PolyGauss& f) { return f.multiply_by_xi() + d_derivative(f); }

double d_exp(double D, double z, double tol) {
  require_dimension(D, "d_exp");
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < detail::kMaxSeriesTerms; ++n) {
    term *= z / d_bracket(n, D);
    sum += term;
    if (detail::term_negligible(term, sum, tol)) return sum;
  }
  throw ConvergenceError("d_exp: series did not converge in 500 terms");
}

namespace {

// k-th derivative of z -> E_D(z): sum_{n>=k} n!/(n-k)! z^{n-k} / [n]_D!
double d_exp_derivative(double D, double z, int k) {
  double term = std::tgamma(k + 1.0) / d_factorial(k, D);
  double sum = term;
  for (int n = k; n < detail::kMaxSeriesTerms; ++n) {
    term *= (n + 1.0) / (n + 1.0 - k) * z / d_bracket(n + 1, D);
    sum += term;
    if (detail::term_negligible(term, sum, detail::kSeriesTolerance)) return sum;
  }
  throw ConvergenceError("d_exp: series did not converge in 500 terms");
}

FunctionHandle d_exp_chain(double D, double lambda, int order, int depth) {
  FunctionHandle f([D, lambda, order](double xi) {
    return Complex(std::pow(lambda, order) * d_exp_derivative(D, lambda * xi, order), 0.0);
  });
  if (depth == 0) return f;
  return f.with_derivative(d_exp_chain(D, lambda, order + 1, depth - 1));
}

// Chebyshev expansion on [a, b] after the usual chebft / chebint / chebev recipes.
struct Chebyshev {
  double a = -1.0;
  double b = 1.0;
  std::vector<double> c;

  double operator()(double x) const {
    const double y = (2.0 * x - a - b) / (b - a);
    const double y2 = 2.0 * y;
    double d = 0.0;
    double dd = 0.0;
    for (std::size_t j = c.size() - 1; j >= 1; --j) {
      const double sv = d;
      d = y2 * d - dd + c[j];
      dd = sv;
    }
    return y * d - dd + 0.5 * c[0];
  }

  double norm() const {
    double s = 0.0;
    for (double v : c) s += std::abs(v);
    return s;
  }

  template <class F>
  static Chebyshev fit(double a, double b, std::size_t n, F&& func) {
    Chebyshev out{a, b, std::vector<double>(n, 0.0)};
    std::vector<double> fx(n);
    const double mid = 0.5 * (b + a);
    const double half = 0.5 * (b - a);
    for (std::size_t k = 0; k < n; ++k) {
      fx[k] = func(mid + half * std::cos(kPi * (k + 0.5) / n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += fx[k] * std::cos(kPi * j * (k + 0.5) / n);
      out.c[j] = 2.0 / n * s;
    }
    return out;
  }

  // Antiderivative that vanishes at `anchor`.
  Chebyshev integral(double anchor) const {
    const std::size_t n = c.size();
    Chebyshev out{a, b, std::vector<double>(n, 0.0)};
    const double con = 0.25 * (b - a);
    double sum = 0.0;
    double fac = 1.0;
    for (std::size_t j = 1; j + 1 < n; ++j) {
      out.c[j] = con * (c[j - 1] - c[j + 1]) / j;
      sum += fac * out.c[j];
      fac = -fac;
    }
    out.c[n - 1] = con * c[n - 2] / (n - 1);
    sum += fac * out.c[n - 1];
    out.c[0] = 2.0 * sum;
    out.c[0] -= 2.0 * out(anchor);
    return out;
  }
};

constexpr std::size_t kChebyshevNodes = 48;

}  // namespace

FunctionHandle d_exp_function(double D, double lambda) {
  require_dimension(D, "d_exp_function");
  return d_exp_chain(D, lambda, 0, 3);
}

namespace {

// Chebyshev pieces of the D-integral on [-X, X]: the ordinary antiderivative
// I_0 of F, and the operator T y = int_0 (D-1)/(2s) (y(s) - y(-s)) ds.
// Chebyshev nodes never include s = 0, so the quotient is evaluated literally.
Chebyshev first_antiderivative(const FunctionHandle& F, double X) {
  return Chebyshev::fit(-X, X, kChebyshevNodes, [&F](double s) { return F.real(s); })
      .integral(0.0);
}

Chebyshev reflection_step(const Chebyshev& y, double c) {
  return Chebyshev::fit(y.a, y.b, kChebyshevNodes,
                        [&y, c](double s) { return c * (y(s) - y(-s)) / s; })
      .integral(0.0);
}

}  // namespace

double d_integral(const FunctionHandle& F, double D, double x) {
  require_dimension(D, "d_integral");
  if (x == 0.0) return 0.0;
  const double X = std::abs(x);
  const double c = 0.5 * (D - 1.0);
  const Chebyshev start = first_antiderivative(F, X);

  // sum_n (-1)^n T^n I_0 = (1 + T)^{-1} I_0; T is linear on the coefficients.
  const auto n = static_cast<Eigen::Index>(kChebyshevNodes);
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  Chebyshev unit{-X, X, std::vector<double>(kChebyshevNodes, 0.0)};
  for (Eigen::Index j = 0; j < n; ++j) {
    unit.c.assign(kChebyshevNodes, 0.0);
    unit.c[j] = 1.0;
    const Chebyshev image = reflection_step(unit, c);
    for (Eigen::Index i = 0; i < n; ++i) system(i, j) += image.c[i];
  }
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(start.c.data(), n);
  const Eigen::VectorXd solution = system.partialPivLu().solve(rhs);
  Chebyshev sum{-X, X, std::vector<double>(solution.data(), solution.data() + n)};
  return sum(x);
}

double d_integral_series(const FunctionHandle& F, double D, double x, int terms) {
  require_dimension(D, "d_integral_series");
  if (terms < 1 || terms > 30) throw DomainError("d_integral_series: terms must lie in [1, 30]");
  if (x == 0.0) return 0.0;
  const double X = std::abs(x);
  const double c = 0.5 * (D - 1.0);

  Chebyshev current = first_antiderivative(F, X);
  double sum = current(x);
  double previous_norm = current.norm();
  int growth = 0;
  for (int n = 1; n < terms; ++n) {
    current = reflection_step(current, c);
    const double norm = current.norm();
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    sum += sign * current(x);
    if (norm <= 1e-16 * std::max(std::abs(sum), previous_norm)) break;
    growth = (norm >= previous_norm) ? growth + 1 : 0;
    if (growth >= 5) throw ConvergenceError("d_integral_series: iterated integrals do not decay");
    previous_norm = norm;
  }
  return sum;
}

const char* to_string(LadderFlavor flavor) {
  switch (flavor) {
    case LadderFlavor::q: return "q";
    case LadderFlavor::Q: return "Q";
    case LadderFlavor::D: return "D";
  }
  return "D";
}

LadderRep ladder(double parameter, LadderFlavor flavor, int N) {
  if (N < 2) throw DomainError("ladder: N must be >= 2");
  auto bracket = [&](int n) {
    switch (flavor) {
      case LadderFlavor::q: return qcalc::q_bracket(n, parameter);
      case LadderFlavor::Q: return qcalc::Q_bracket(n, parameter);
      case LadderFlavor::D: return d_bracket(n, parameter);
    }
    return 0.0;
  };
  LadderRep rep;
  rep.dim = N + 1;
  rep.flavor = flavor;
  rep.parameter = parameter;
  rep.a = Eigen::MatrixXd::Zero(N + 1, N + 1);
  rep.number = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int n = 1; n <= N; ++n) rep.a(n - 1, n) = std::sqrt(bracket(n));
  for (int n = 0; n <= N; ++n) rep.number(n, n) = n;
  rep.adag = rep.a.transpose();
  return rep;
}

std::vector<Complex> coherent_coeffs(Complex alpha, double D, int N) {
  require_dimension(D, "coherent_coeffs");
  if (N < 0 || N > 170) throw DomainError("coherent_coeffs: N must lie in [0, 170]");
  const double norm = 1.0 / std::sqrt(d_exp(D, std::norm(alpha)));
  std::vector<Complex> out(N + 1);
  Complex power = 1.0;
  for (int n = 0; n <= N; ++n) {
    out[n] = norm * power / std::sqrt(d_factorial(n, D));
    power *= alpha;
  }
  if (std::norm(out[N]) >= 1e-12) {
    throw RangeError("coherent_coeffs: truncation at N = " + std::to_string(N) +
                     " is insufficient");
  }
  return out;
}

Eigenstate eigenfunction(int n, double D) {
  require_dimension(D, "eigenfunction");
  if (n < 0 || n > 40) throw DomainError("eigenfunction: n must lie in [0, 40]");
  PolyGauss shape = PolyGauss::gaussian();
  for (int k = 0; k < n; ++k) shape = raise(shape);
  return Eigenstate{n, D, std::move(shape), std::pow(2.0, -0.5 * n) / std::sqrt(d_factorial(n, D))};
}

double sigma(double D) {
  if (!(D > 0.0)) throw DomainError("sigma: D must be positive");
  return 2.0 * std::pow(kPi, D / 2.0) / gamma(D / 2.0);
}

double integration_weight(double D, double xi) {
  return 0.5 * sigma(D) * std::pow(std::abs(xi), D - 1.0);
}

double sphere_volume(double D, double R0) {
  if (!(D > 0.0)) throw DomainError("sphere_volume: D must be positive");
  if (!(R0 >= 0.0)) throw DomainError("sphere_volume: R0 must be >= 0");
  return std::pow(kPi, D / 2.0) * std::pow(R0, D) / gamma(1.0 + D / 2.0);
}

double weighted_inner_product(const PolyGauss& f, const PolyGauss& g, double D) {
  if (!(D > 0.0)) throw DomainError("weighted_inner_product: D must be positive");
  if (f.is_zero() || g.is_zero()) return 0.0;
  std::vector<double> fc(f.coeffs().size());
  std::vector<double> gc(g.coeffs().size());
  for (std::size_t i = 0; i < fc.size(); ++i) fc[i] = f.coeffs()[i].evaluate(D);
  for (std::size_t i = 0; i < gc.size(); ++i) gc[i] = g.coeffs()[i].evaluate(D);
  // 2 int_0^inf xi^{m+D-1} e^{-xi^2} dxi = Gamma((m+D)/2); odd m cancel.
  double total = 0.0;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    for (std::size_t j = 0; j < gc.size(); ++j) {
      if ((i + j) % 2 != 0) continue;
      total += fc[i] * gc[j] * std::exp(log_gamma((i + j + D) / 2.0));
    }
  }
  return 0.5 * sigma(D) * total;
}

double weighted_inner_product(const Eigenstate& f, const Eigenstate& g) {
  if (f.D != g.D) throw DomainError("weighted_inner_product: states belong to different D");
  return f.prefactor * g.prefactor * weighted_inner_product(f.shape, g.shape, f.D);
}

}  // namespace deforma::dcalc
