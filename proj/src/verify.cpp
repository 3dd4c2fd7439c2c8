#include "deforma/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "deforma/dcalc.hpp"
#include "deforma/errors.hpp"
#include "deforma/expression.hpp"
#include "deforma/fractional.hpp"
#include "deforma/polygauss.hpp"
#include "deforma/qcalc.hpp"
#include "deforma/qpotential.hpp"
#include "deforma/special.hpp"
#include "deforma/spectral.hpp"

namespace deforma::verify {
namespace {

// Bit-level definitions only (seed_seq, mt19937_64, shifts), so a seed gives
// the same corpus on every standard library.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      stream};
    engine_.seed(seq);
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::vector<double> polynomial(int max_degree) {
    std::vector<double> c(integer(1, max_degree) + 1);
    for (double& v : c) v = uniform(-1.0, 1.0);
    return c;
  }

 private:
  std::mt19937_64 engine_;
};

// Largest error seen; NaN is sticky so a broken evaluation cannot pass.
class MaxError {
 public:
  void add(double e) {
    if (std::isnan(e) || std::isnan(value_)) {
      value_ = std::numeric_limits<double>::quiet_NaN();
    } else {
      value_ = std::max(value_, e);
    }
  }
  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

double rel(double got, double want, double floor = 1.0) {
  return std::abs(got - want) / std::max(floor, std::abs(want));
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

FunctionHandle polynomial(const std::vector<double>& c, int depth = 3) {
  FunctionHandle f([c](double x) { return Complex(horner(c, x), 0.0); });
  if (depth == 0) return f;
  std::vector<double> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  if (d.empty()) d.push_back(0.0);
  return f.with_derivative(polynomial(d, depth - 1));
}

FunctionHandle product(const FunctionHandle& f, const FunctionHandle& g) {
  return FunctionHandle([f, g](double x) { return f(x) * g(x); });
}

FunctionHandle reflected(const FunctionHandle& f) {
  return FunctionHandle([f](double x) { return f(-x); });
}

FunctionHandle opaque(const FunctionHandle& f) {
  return FunctionHandle([f](double x) { return f(x); });
}

std::string short_number(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 3);
  return std::string(buf, result.ptr);
}

DPoly symbolic_bracket(int n) {
  return (n % 2 == 0) ? DPoly(n) : DPoly(n - 1) + DPoly::symbol();
}

constexpr double kQs[] = {0.5, 0.8, 1.3, 2.0};
constexpr double kDs[] = {0.5, 1.0, 1.5};

struct Check {
  const char* module;
  const char* name;
  double tolerance;
  std::function<double(Rng&)> measure;
};

struct Info {
  const char* module;
  const char* name;
  std::function<std::string()> describe;
};

// ---------------------------------------------------------------- core

std::vector<Check> core_checks() {
  std::vector<Check> checks;
  checks.push_back({"core", "gamma recurrence", 1e-12, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 200; ++i) {
                        const double x = rng.uniform(0.1, 20.0);
                        e.add(rel(x * gamma(x), gamma(x + 1.0), 0.0));
                      }
                      return e.value();
                    }});
  checks.push_back({"core", "Bessel three-term recurrence", 1e-10, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 200; ++i) {
                        const double nu = rng.uniform(0.5, 4.0);
                        const double x = rng.uniform(0.5, 10.0);
                        const double lhs = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x);
                        e.add(std::abs(lhs - 2.0 * nu / x * bessel_j(nu, x)));
                      }
                      return e.value();
                    }});
  checks.push_back(
      {"core", "PolyGauss second derivative, exact coefficients", 0.0, [](Rng& rng) {
         // (p e^{-x^2/2})'' = (p'' - 2x p' + (x^2 - 1) p) e^{-x^2/2}; the error is
         // the number of mismatching samples.
         double mismatches = 0.0;
         for (int trial = 0; trial < 20; ++trial) {
           std::vector<DPoly> coeffs;
           const int degree = rng.integer(0, 6);
           for (int k = 0; k <= degree; ++k) {
             coeffs.push_back(DPoly(std::vector<Rational>{
                 Rational(rng.integer(-5, 5), rng.integer(1, 4)), Rational(rng.integer(-3, 3))}));
           }
           const PolyGauss p(coeffs);
           const auto& c = p.coeffs();
           const int n = static_cast<int>(c.size());
           std::vector<DPoly> want(n + 2);
           for (int k = 0; k < n; ++k) {
             want[k + 2] = want[k + 2] + c[k];
             want[k] = want[k] - c[k] - DPoly(2 * k) * c[k];
             if (k >= 2) want[k - 2] = want[k - 2] + DPoly(k * (k - 1)) * c[k];
           }
           if (!(p.differentiate().differentiate() == PolyGauss(want))) mismatches += 1.0;
         }
         return mismatches;
       }});
  checks.push_back({"core", "parsed expressions against direct evaluation", 1e-13, [](Rng& rng) {
                      const std::vector<std::pair<const char*, double (*)(double)>> corpus = {
                          {"exp(-x^2/2)", [](double x) { return std::exp(-x * x / 2.0); }},
                          {"x^3 - 2*x + 1", [](double x) { return x * x * x - 2.0 * x + 1.0; }},
                          {"sin(x)*cos(2*x)", [](double x) { return std::sin(x) * std::cos(2.0 * x); }},
                          {"sqrt(1 + x^2)", [](double x) { return std::sqrt(1.0 + x * x); }},
                          {"1/(1 + x^2)", [](double x) { return 1.0 / (1.0 + x * x); }},
                          {"-x^2", [](double x) { return -(x * x); }},
                          {"2^x^2", [](double x) { return std::pow(2.0, x * x); }},
                          {"abs(x - 1)*x", [](double x) { return std::abs(x - 1.0) * x; }},
                          {"x*exp(-x^2/2)", [](double x) { return x * std::exp(-x * x / 2.0); }},
                          {"(x + 1)/(x + 2) - 3", [](double x) { return (x + 1.0) / (x + 2.0) - 3.0; }},
                      };
                      MaxError e;
                      for (const auto& [text, reference] : corpus) {
                        const FunctionHandle f = parse_expression(text);
                        for (int i = 0; i < 20; ++i) {
                          const double x = rng.uniform(0.2, 2.0);
                          e.add(rel(f.real(x), reference(x)));
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"core", "parsed symbolic derivatives against finite differences", 1e-8,
                    [](Rng& rng) {
                      MaxError e;
                      for (const char* text : {"exp(-x^2/2)", "x^3 - 2*x", "sin(x)*cos(x)", "x^x",
                                               "sqrt(1 + x^2)", "1/(1+x^2)"}) {
                        const FunctionHandle f = parse_expression(text);
                        const FunctionHandle box = opaque(f);
                        for (int i = 0; i < 10; ++i) {
                          const double x = rng.uniform(0.3, 1.9);
                          e.add(rel(f.derivative().real(x), first_derivative(box, x).real()));
                        }
                      }
                      return e.value();
                    }});
  return checks;
}

// ---------------------------------------------------------------- qcalc

std::vector<Check> qcalc_checks() {
  using namespace qcalc;
  std::vector<Check> checks;
  checks.push_back({"qcalc", "q product rule, both forms", 1e-10, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 200; ++i) {
                        const FunctionHandle f = polynomial(rng.polynomial(6));
                        const FunctionHandle g = polynomial(rng.polynomial(6));
                        const double q = kQs[rng.integer(0, 3)];
                        const double x = rng.uniform(0.2, 3.0);
                        const double direct = q_derivative(product(f, g), q).real(x);
                        const double df = q_derivative(f, q).real(x);
                        const double dg = q_derivative(g, q).real(x);
                        const double a1 = df * g.real(x / q);
                        const double a2 = f.real(q * x) * dg;
                        const double b1 = dg * f.real(x / q);
                        const double b2 = g.real(q * x) * df;
                        e.add(std::abs(direct - a1 - a2) / (std::abs(a1) + std::abs(a2) + 1e-300));
                        e.add(std::abs(direct - b1 - b2) / (std::abs(b1) + std::abs(b2) + 1e-300));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "Q product rule, both forms", 1e-10, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 200; ++i) {
                        const FunctionHandle f = polynomial(rng.polynomial(6));
                        const FunctionHandle g = polynomial(rng.polynomial(6));
                        const double Q = kQs[rng.integer(0, 3)];
                        const double x = rng.uniform(0.2, 3.0);
                        const double direct = Q_derivative(product(f, g), Q).real(x);
                        const double df = Q_derivative(f, Q).real(x);
                        const double dg = Q_derivative(g, Q).real(x);
                        const double c1 = df * g.real(Q * x);
                        const double c2 = f.real(x) * dg;
                        const double d1 = df * g.real(x);
                        const double d2 = f.real(Q * x) * dg;
                        e.add(std::abs(direct - c1 - c2) / (std::abs(c1) + std::abs(c2) + 1e-300));
                        e.add(std::abs(direct - d1 - d2) / (std::abs(d1) + std::abs(d2) + 1e-300));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "Q quotient rule", 1e-10, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 200; ++i) {
                        const FunctionHandle f = polynomial(rng.polynomial(6));
                        std::vector<double> hc = rng.polynomial(4);
                        for (double& v : hc) v *= 0.1;
                        hc[0] = 2.0;
                        const FunctionHandle h = polynomial(hc);
                        const double Q = kQs[rng.integer(0, 3)];
                        const double x = rng.uniform(0.2, 3.0);
                        const FunctionHandle ratio([f, h](double t) { return f(t) / h(t); });
                        const double direct = Q_derivative(ratio, Q).real(x);
                        const double n1 = Q_derivative(f, Q).real(x) * h.real(x);
                        const double n2 = f.real(x) * Q_derivative(h, Q).real(x);
                        const double den = h.real(Q * x) * h.real(x);
                        e.add(std::abs(direct - (n1 - n2) / den) /
                              ((std::abs(n1) + std::abs(n2)) / std::abs(den) + 1e-300));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "q second derivative, closed form against nesting", 1e-9, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 100; ++i) {
                        const FunctionHandle f = polynomial(rng.polynomial(6));
                        const double q = kQs[rng.integer(0, 3)];
                        const double x = rng.uniform(0.2, 3.0);
                        const double nested = q_derivative(q_derivative(f, q), q).real(x);
                        e.add(rel(q_derivative_nested2(f, q).real(x), nested));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "Q second derivative, closed form against nesting", 1e-9, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 100; ++i) {
                        const FunctionHandle f = polynomial(rng.polynomial(6));
                        const double Q = kQs[rng.integer(0, 3)];
                        const double x = rng.uniform(0.2, 3.0);
                        const double nested = Q_derivative(Q_derivative(f, Q), Q).real(x);
                        e.add(rel(Q_derivative_n(f, Q, 2).real(x), nested));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "Q n-th derivative against n-fold nesting, n <= 4", 1e-9, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 120; ++i) {
                        const FunctionHandle f = polynomial(rng.polynomial(6));
                        const double Q = kQs[rng.integer(0, 3)];
                        const int n = rng.integer(1, 4);
                        const double x = rng.uniform(0.2, 3.0);
                        FunctionHandle nested = f;
                        for (int k = 0; k < n; ++k) nested = Q_derivative(nested, Q);
                        e.add(rel(Q_derivative_n(f, Q, n).real(x), nested.real(x)));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "q^2 derivative, two-point form against shifted average", 1e-12,
                    [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 100; ++i) {
                        const FunctionHandle f = polynomial(rng.polynomial(6));
                        const double q = kQs[rng.integer(0, 3)];
                        const double x = rng.uniform(0.2, 3.0);
                        const double two_point =
                            (f.real(q * q * x) - f.real(x / (q * q))) / ((q * q - 1.0 / (q * q)) * x);
                        e.add(rel(q_derivative_average(f, q, 2).real(x), two_point));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "power composition of the q-derivative", 1e-11, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 60; ++i) {
                        const int n = rng.integer(2, 3);
                        const FunctionHandle f = monomial(rng.integer(1, 5));
                        const double q = kQs[rng.integer(0, 3)];
                        const double x = rng.uniform(0.3, 1.8);
                        const FunctionHandle composed([f, n](double t) { return f(std::pow(t, n)); });
                        const double lhs = q_derivative(composed, q).real(x);
                        const double rhs = q_bracket(n, q) * std::pow(x, n - 1) *
                                           q_derivative(f, std::pow(q, n)).real(std::pow(x, n));
                        e.add(rel(lhs, rhs));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "q fundamental theorem, both directions", 1e-9, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 40; ++i) {
                        const FunctionHandle f = polynomial(rng.polynomial(5));
                        const double a = rng.uniform(0.2, 2.0);
                        const double q = kQs[rng.integer(0, 3)];
                        const FunctionHandle F(
                            [f, q](double t) { return Complex(q_integral(f, t, q), 0.0); });
                        e.add(rel(q_derivative(F, q).real(a), f.real(a)));
                        e.add(rel(q_integral(q_derivative(f, q), a, q), f.real(a) - f.real(0.0)));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "Q fundamental theorem, both directions", 1e-9, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 40; ++i) {
                        const FunctionHandle f = polynomial(rng.polynomial(5));
                        const double a = rng.uniform(0.2, 2.0);
                        const double Q = rng.uniform(0.2, 0.9);
                        const FunctionHandle G(
                            [f, Q](double t) { return Complex(Q_integral(f, t, Q), 0.0); });
                        e.add(rel(Q_derivative(G, Q).real(a), f.real(a)));
                        e.add(rel(Q_integral(Q_derivative(f, Q), a, Q), f.real(a) - f.real(0.0)));
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "bracket classical limits", 1e-5, [](Rng&) {
                      MaxError e;
                      for (int n = 0; n <= 10; ++n) {
                        for (double q : {1.0 + 1e-7, 1.0 - 1e-7}) {
                          e.add(std::abs(q_bracket(n, q) - n));
                          e.add(std::abs(Q_bracket(n, q) - n));
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"qcalc", "q bracket symmetry under q -> 1/q", 1e-13, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 200; ++i) {
                        const double x = rng.uniform(-6.0, 6.0);
                        const double q = rng.uniform(0.1, 5.0);
                        if (std::abs(q - 1.0) < 1e-6) continue;
                        e.add(rel(q_bracket(x, 1.0 / q), q_bracket(x, q)));
                      }
                      return e.value();
                    }});
  return checks;
}

// ---------------------------------------------------------------- fractional

std::vector<Check> fractional_checks() {
  using namespace fractional;
  std::vector<Check> checks;
  checks.push_back({"fractional", "Caputo power rule on x^(n alpha)", 1e-3, [](Rng&) {
                      MaxError e;
                      for (int n = 1; n <= 3; ++n) {
                        for (double alpha : {0.3, 0.5, 0.8}) {
                          const FunctionHandle f(
                              [n, alpha](double x) { return Complex(std::pow(x, n * alpha), 0.0); });
                          for (double x : {0.5, 1.0, 2.0}) {
                            const double want =
                                caputo_power_coeff(n, alpha) * std::pow(x, (n - 1) * alpha);
                            e.add(rel(caputo(f, alpha, x, x / 512.0), want, 0.0));
                          }
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"fractional", "fractional bracket equals the Caputo coefficient", 0.0,
                    [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 100; ++i) {
                        const int n = rng.integer(0, 20);
                        const double alpha = rng.uniform(0.05, 1.0);
                        e.add(std::abs(frac_bracket(n, alpha) - caputo_power_coeff(n, alpha)));
                      }
                      return e.value();
                    }});
  checks.push_back({"fractional", "Riesz linearity", 1e-10, [](Rng& rng) {
                      const FunctionHandle f([](double x) { return Complex(std::exp(-x * x), 0.0); });
                      const FunctionHandle g(
                          [](double x) { return Complex(x * std::exp(-x * x / 2.0), 0.0); });
                      MaxError e;
                      for (int i = 0; i < 6; ++i) {
                        const double alpha = rng.uniform(0.2, 1.8);
                        const double a = rng.uniform(-2.0, 2.0);
                        const double b = rng.uniform(-2.0, 2.0);
                        const double x = rng.uniform(-1.5, 1.5);
                        const FunctionHandle combo(
                            [f, g, a, b](double t) { return a * f(t) + b * g(t); });
                        const double lhs = riesz(combo, alpha, x);
                        const double rhs = a * riesz(f, alpha, x) + b * riesz(g, alpha, x);
                        e.add(rel(lhs, rhs));
                      }
                      return e.value();
                    }});
  checks.push_back({"fractional", "Feller linearity", 1e-10, [](Rng& rng) {
                      const FunctionHandle f([](double x) { return Complex(std::exp(-x * x), 0.0); });
                      const FunctionHandle g(
                          [](double x) { return Complex(x * std::exp(-x * x / 2.0), 0.0); });
                      MaxError e;
                      for (int i = 0; i < 6; ++i) {
                        const double alpha = rng.uniform(0.1, 0.9);
                        const double a = rng.uniform(-2.0, 2.0);
                        const double b = rng.uniform(-2.0, 2.0);
                        const double x = rng.uniform(-1.5, 1.5);
                        const FunctionHandle combo(
                            [f, g, a, b](double t) { return a * f(t) + b * g(t); });
                        const double lhs = feller(combo, alpha, x);
                        const double rhs = a * feller(f, alpha, x) + b * feller(g, alpha, x);
                        e.add(rel(lhs, rhs));
                      }
                      return e.value();
                    }});
  checks.push_back({"fractional", "Riesz preserves evenness", 1e-9, [](Rng& rng) {
                      const FunctionHandle f(
                          [](double x) { return Complex((1.0 + x * x) * std::exp(-x * x), 0.0); });
                      MaxError e;
                      for (int i = 0; i < 6; ++i) {
                        const double alpha = rng.uniform(0.2, 1.8);
                        const double x = rng.uniform(0.1, 2.0);
                        e.add(std::abs(riesz(f, alpha, x) - riesz(f, alpha, -x)));
                      }
                      return e.value();
                    }});
  checks.push_back({"fractional", "Mittag-Leffler at alpha = 1 is exp", 1e-10, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 50; ++i) {
                        const double z = rng.uniform(0.0, 5.0);
                        e.add(rel(mittag_leffler(1.0, z), std::exp(z), 0.0));
                      }
                      return e.value();
                    }});
  checks.push_back({"fractional", "Mittag-Leffler termwise Caputo eigen-relation", 1e-10, [](Rng&) {
                      // sum_{k>=1} coeff(k) z^{(k-1)a}/Gamma(1+ka) against sum_{k>=0} z^{ka}/Gamma(1+ka)
                      const double alpha = 0.5;
                      const double z = 0.8;
                      double lhs = 0.0;
                      double rhs = 0.0;
                      for (int k = 0; k < 60; ++k) {
                        const double power = std::pow(z, k * alpha);
                        rhs += power * std::exp(-log_gamma(1.0 + k * alpha));
                        lhs += caputo_power_coeff(k + 1, alpha) * power *
                               std::exp(-log_gamma(1.0 + (k + 1) * alpha));
                      }
                      return rel(lhs, rhs);
                    }});
  return checks;
}

// ---------------------------------------------------------------- dcalc

double definite(const FunctionHandle& F, double D, double a, double b) {
  return dcalc::d_integral(F, D, b) - dcalc::d_integral(F, D, a);
}

std::vector<Check> dcalc_checks() {
  using namespace dcalc;
  std::vector<Check> checks;
  checks.push_back({"dcalc", "D-derivative product rule", 1e-8, [](Rng& rng) {
                      MaxError e;
                      for (double D : {0.5, 1.2, 1.8}) {
                        for (int i = 0; i < 20; ++i) {
                          const FunctionHandle f = polynomial(rng.polynomial(5));
                          const FunctionHandle g = polynomial(rng.polynomial(5));
                          double xi = rng.uniform(-2.0, 2.0);
                          if (std::abs(xi) < 0.05) xi = 0.5;
                          const double lhs = d_derivative(product(f, g), D).real(xi);
                          const double t1 = g.real(xi) * d_derivative(f, D).real(xi);
                          const double t2 = d_derivative(g, D).real(xi) * f.real(-xi);
                          const double t3 = g.derivative().real(xi) * (f.real(xi) - f.real(-xi));
                          e.add(std::abs(lhs - t1 - t2 - t3) /
                                (std::abs(t1) + std::abs(t2) + std::abs(t3) + 1e-12));
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"dcalc", "integration by parts with both correction integrals", 1e-6, [](Rng&) {
                      MaxError e;
                      const double a = 0.5;
                      const double b = 2.0;
                      for (double D : {0.5, 1.2, 1.8}) {
                        for (int m = 0; m <= 4; ++m) {
                          for (int k = 0; k <= 4; ++k) {
                            const FunctionHandle f = monomial(m);
                            const FunctionHandle g = monomial(k);
                            const FunctionHandle c2(
                                [f, g](double x) { return g.derivative()(x) * (f(x) - f(-x)); });
                            const double lhs = definite(product(g, d_derivative(f, D)), D, a, b);
                            const double rhs = f.real(b) * g.real(b) - f.real(a) * g.real(a) -
                                               definite(product(d_derivative(g, D), reflected(f)), D, a, b) -
                                               definite(c2, D, a, b);
                            e.add(rel(lhs, rhs));
                          }
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"dcalc", "number operator from the anticommutator", 1e-12, [](Rng&) {
                      MaxError e;
                      for (double D : kDs) {
                        const int N = 64;
                        const LadderRep rep = ladder(D, LadderFlavor::D, N);
                        const Eigen::MatrixXd number =
                            0.5 * (rep.adag * rep.a + rep.a * rep.adag) -
                            0.5 * D * Eigen::MatrixXd::Identity(N + 1, N + 1);
                        const Eigen::MatrixXd diff = (number - rep.number).topLeftCorner(N, N);
                        e.add(diff.cwiseAbs().maxCoeff());
                      }
                      return e.value();
                    }});
  checks.push_back({"dcalc", "Wigner relations on the truncated space (N = 64)", 1e-10, [](Rng&) {
                      using CMatrix = Eigen::MatrixXcd;
                      const Complex i(0.0, 1.0);
                      MaxError e;
                      for (double D : kDs) {
                        const int N = 64;
                        const LadderRep rep = ladder(D, LadderFlavor::D, N);
                        const CMatrix a = rep.a.cast<Complex>();
                        const CMatrix ad = rep.adag.cast<Complex>();
                        const CMatrix X = (a + ad) / std::sqrt(2.0);
                        const CMatrix P = (a - ad) / (i * std::sqrt(2.0));
                        const CMatrix H = 0.5 * (P * P + X * X);
                        const CMatrix r1 = i * P - (X * H - H * X);
                        const CMatrix r2 = -i * X - (P * H - H * P);
                        e.add(r1.topLeftCorner(N - 1, N - 1).cwiseAbs().maxCoeff());
                        e.add(r2.topLeftCorner(N - 1, N - 1).cwiseAbs().maxCoeff());
                      }
                      return e.value();
                    }});
  checks.push_back({"dcalc", "lowering operator on eigenfunctions, exact", 0.0, [](Rng&) {
                      double mismatches = 0.0;
                      for (int n = 1; n <= 10; ++n) {
                        const PolyGauss un = eigenfunction(n, 1.0).shape;
                        const PolyGauss prev = eigenfunction(n - 1, 1.0).shape;
                        if (!(lower(un) == DPoly(2) * symbolic_bracket(n) * prev)) mismatches += 1.0;
                      }
                      return mismatches;
                    }});
  checks.push_back({"dcalc", "D-factorial Gamma form against the product", 1e-12, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 100; ++i) {
                        const int n = rng.integer(0, 30);
                        const double D = rng.uniform(0.05, 1.95);
                        e.add(rel(d_factorial_gamma_form(n, D), d_factorial(n, D), 0.0));
                      }
                      return e.value();
                    }});
  checks.push_back({"dcalc", "D-integral inverts the D-derivative", 1e-6, [](Rng& rng) {
                      MaxError e;
                      const FunctionHandle G(
                          [](double x) { return Complex(std::exp(x) * (1.0 + x * x), 0.0); });
                      for (int i = 0; i < 6; ++i) {
                        const double D = rng.uniform(0.2, 1.8);
                        const FunctionHandle g(
                            [G, D](double xi) { return Complex(d_integral(G, D, xi), 0.0); });
                        double xi = rng.uniform(-1.2, 1.2);
                        if (std::abs(xi) < 0.1) xi = 0.7;
                        e.add(rel(d_derivative(g, D).real(xi), G.real(xi)));
                      }
                      return e.value();
                    }});
  checks.push_back({"dcalc", "D-exponential is an eigenfunction of the D-derivative", 1e-8,
                    [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 40; ++i) {
                        const double D = rng.uniform(0.2, 1.8);
                        const double lambda = rng.uniform(-1.5, 1.5);
                        double xi = rng.uniform(-2.0, 2.0);
                        if (std::abs(xi) < 0.05) xi = 0.5;
                        const FunctionHandle E = d_exp_function(D, lambda);
                        e.add(rel(d_derivative(E, D).real(xi), lambda * E.real(xi)));
                      }
                      return e.value();
                    }});
  return checks;
}

std::vector<Info> dcalc_infos() {
  std::vector<Info> infos;
  infos.push_back({"dcalc", "D-factorial, quoted form", [] {
                     const double D = 1.5;
                     std::string agree;
                     std::string differ;
                     double worst = 0.0;
                     int worst_n = 0;
                     for (int n = 0; n <= 8; ++n) {
                       const double product = dcalc::d_factorial(n, D);
                       const double quoted = dcalc::d_factorial_quoted_form(n, D);
                       const double r = std::abs(quoted - product) / product;
                       std::string& list = (r < 1e-12) ? agree : differ;
                       list += (list.empty() ? "" : ", ") + std::to_string(n);
                       if (r > worst) {
                         worst = r;
                         worst_n = n;
                       }
                     }
                     return "at D = 1.5 the form with bare n/2, (n-1)/2 in place of their factorials "
                            "matches the product for n in {" +
                            agree + "} and differs for n in {" + differ +
                            "}; worst relative deviation " + short_number(worst) + " at n = " +
                            std::to_string(worst_n) + "; the Gamma form with factorials is used";
                   }});
  infos.push_back({"dcalc", "product rule, printed and swapped assignments", [] {
                     MaxError printed;
                     MaxError swapped;
                     const FunctionHandle f = polynomial({0.3, -1.0, 0.5, 0.7});
                     const FunctionHandle g = polynomial({1.0, 0.4, -0.6, 0.0, 0.2});
                     for (double D : {0.5, 1.2, 1.8}) {
                       for (double xi : {-1.7, -0.6, 0.4, 1.3}) {
                         const double lhs = dcalc::d_derivative(product(f, g), D).real(xi);
                         const double base = g.real(xi) * dcalc::d_derivative(f, D).real(xi);
                         const double p = base + dcalc::d_derivative(g, D).real(xi) * f.real(-xi) +
                                          g.derivative().real(xi) * (f.real(xi) - f.real(-xi));
                         const double s = base + dcalc::d_derivative(f, D).real(xi) * g.real(-xi) +
                                          f.derivative().real(xi) * (g.real(xi) - g.real(-xi));
                         printed.add(rel(p, lhs));
                         swapped.add(rel(s, lhs));
                       }
                     }
                     return "g d_D f + (d_D g) Rf + g' (1-R) f holds as printed (max residual " +
                            short_number(printed.value()) +
                            "); exchanging f and g in the correction terms fails (max residual " +
                            short_number(swapped.value()) + ")";
                   }});
  infos.push_back({"dcalc", "integration by parts, printed form", [] {
                     MaxError corrected;
                     MaxError literal;
                     const double a = 0.5;
                     const double b = 2.0;
                     const double D = 1.5;
                     for (int m = 1; m <= 3; ++m) {
                       for (int k = 0; k <= 2; ++k) {
                         const FunctionHandle f = monomial(m);
                         const FunctionHandle g = monomial(k);
                         const FunctionHandle c2(
                             [f, g](double x) { return g.derivative()(x) * (f(x) - f(-x)); });
                         const double lhs = definite(product(g, dcalc::d_derivative(f, D)), D, a, b);
                         const double boundary = f.real(b) * g.real(b) - f.real(a) * g.real(a);
                         const double c1 =
                             definite(product(dcalc::d_derivative(g, D), reflected(f)), D, a, b);
                         const double rest = definite(c2, D, a, b);
                         corrected.add(rel(lhs, boundary - c1 - rest));
                         literal.add(rel(lhs, boundary));
                       }
                     }
                     return "the formula closes when its first '=' after the boundary term is read "
                            "as '-' (max residual " +
                            short_number(corrected.value()) +
                            " at D = 1.5); read literally, int g d_D f = [fg] is off by up to " +
                            short_number(literal.value()) + " relative";
                   }});
  return infos;
}

// ---------------------------------------------------------------- spectral

std::vector<Check> spectral_checks() {
  using namespace spectral;
  std::vector<Check> checks;
  checks.push_back({"spectral", "WKB levels at alpha = 1 are n + 1/2", 1e-12, [](Rng&) {
                      MaxError e;
                      const SpectrumResult r = wkb_energies(1.0, 10);
                      for (int n = 0; n <= 10; ++n) e.add(std::abs(r.energies[n] - (n + 0.5)));
                      return e.value();
                    }});
  checks.push_back({"spectral", "ladder Hamiltonian spectrum n + D/2 (N = 64)", 1e-10, [](Rng&) {
                      MaxError e;
                      for (double D : kDs) {
                        const dcalc::LadderRep rep = dcalc::ladder(D, dcalc::LadderFlavor::D, 64);
                        const Eigen::MatrixXd H = 0.5 * (rep.a * rep.adag + rep.adag * rep.a);
                        Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues();
                        const SpectrumResult exact = d_oscillator_energies(D, 62);
                        for (int n = 0; n <= 62; ++n) {
                          double nearest = std::numeric_limits<double>::infinity();
                          for (int k = 0; k < ev.size(); ++k) {
                            nearest = std::min(nearest, std::abs(ev(k) - exact.energies[n]));
                          }
                          e.add(nearest);
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"spectral", "Dunkl Hamiltonian on eigenfunctions, ratio n + D/2", 1e-7, [](Rng&) {
                      MaxError e;
                      for (double D : kDs) {
                        for (int n = 0; n <= 6; ++n) {
                          const FunctionHandle f = dcalc::eigenfunction(n, D).to_function();
                          const FunctionHandle Hf = dunkl_apply(f, D, true);
                          for (int j = 0; j <= 27; ++j) {
                            const double xi = 0.3 + 0.1 * j;
                            const double value = f.real(xi);
                            if (std::abs(value) < 1e-6) continue;
                            e.add(std::abs(Hf.real(xi) / value - (n + D / 2.0)));
                          }
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"spectral", "weighted orthonormality of eigenfunctions", 1e-8, [](Rng&) {
                      MaxError e;
                      for (double D : kDs) {
                        const double norm2 = std::pow(kPi, D / 2.0);
                        for (int m = 0; m <= 4; ++m) {
                          for (int n = 0; n <= 4; ++n) {
                            const double ip = dcalc::weighted_inner_product(
                                dcalc::eigenfunction(m, D), dcalc::eigenfunction(n, D));
                            e.add(std::abs(ip / norm2 - (m == n ? 1.0 : 0.0)));
                          }
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"spectral", "sphere volume from the integration weight", 1e-8, [](Rng&) {
                      boost::math::quadrature::tanh_sinh<double> integrator;
                      MaxError e;
                      for (double D : kDs) {
                        const double q = 2.0 * integrator.integrate(
                                                   [D](double xi) { return dcalc::integration_weight(D, xi); },
                                                   0.0, 2.0);
                        e.add(rel(q, dcalc::sphere_volume(D, 2.0), 0.0));
                      }
                      return e.value();
                    }});
  checks.push_back({"spectral", "numeric oscillator at alpha = 1 (L = 8, N = 400)", 2e-2, [](Rng&) {
                      MaxError e;
                      const SpectrumResult r = fractional_oscillator_numeric(1.0, 8.0, 400, 5);
                      for (int n = 0; n < 5; ++n) e.add(std::abs(r.energies[n] - (n + 0.5)));
                      return e.value();
                    }});
  checks.push_back({"spectral", "numeric oscillator convergence order, |p - 2|", 0.2, [](Rng&) {
                      const double e200 = fractional_oscillator_numeric(1.0, 8.0, 200, 1).energies[0];
                      const double e400 = fractional_oscillator_numeric(1.0, 8.0, 400, 1).energies[0];
                      const double e800 = fractional_oscillator_numeric(1.0, 8.0, 800, 1).energies[0];
                      return std::abs(std::log2((e200 - e400) / (e400 - e800)) - 2.0);
                    }});
  checks.push_back({"spectral", "numeric oscillator at alpha = 0.8 against WKB, relative", 0.1,
                    [](Rng&) {
                      const double e0 = fractional_oscillator_numeric(0.8, 8.0, 400, 1).energies[0];
                      return rel(e0, wkb_energy(0, 0.8), 0.0);
                    }});
  checks.push_back({"spectral", "free particle at D = 1 has constant modulus", 1e-8, [](Rng& rng) {
                      MaxError e;
                      for (int i = 0; i < 10; ++i) {
                        const double p = rng.uniform(0.2, 3.0);
                        const FunctionHandle psi = free_particle_psi(p, 1.0);
                        const double m0 = std::abs(psi(0.0));
                        for (int j = 0; j < 10; ++j) {
                          e.add(std::abs(std::abs(psi(rng.uniform(-10.0, 10.0))) - m0));
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"spectral", "free particle Hamiltonian residual at D = 1.4", 1e-4, [](Rng&) {
                      MaxError e;
                      const double D = 1.4;
                      const double p = 1.3;
                      const FunctionHandle psi = free_particle_psi(p, D);
                      const FunctionHandle H = dunkl_apply(psi, D, false);
                      for (int j = 0; j <= 22; ++j) {
                        const double xi = 0.5 + 0.25 * j;
                        const Complex want = 0.5 * p * p * psi(xi);
                        e.add(std::abs(H(xi) - want) / std::abs(want));
                      }
                      return e.value();
                    }});
  return checks;
}

std::vector<Info> spectral_infos() {
  return {{"spectral", "WKB exponent variant", [] {
             const double exponentiated = spectral::wkb_energy(0, 0.8);
             const double bare = spectral::wkb_energy_unexponentiated(0, 0.8);
             return "E(0, 0.8) = " + format_number(exponentiated) +
                    " with the bracketed Gamma ratio raised to alpha; left unexponentiated it is " +
                    format_number(bare) + " (difference " + short_number(bare - exponentiated) +
                    "); both reduce to n + 1/2 at alpha = 1";
           }}};
}

// ---------------------------------------------------------------- qpotential

std::vector<Check> qpotential_checks() {
  using namespace qpotential;
  std::vector<Check> checks;
  checks.push_back({"qpotential", "energy balance Q + xi^2/2 = n + D/2", 1e-6, [](Rng&) {
                      MaxError e;
                      for (double D : kDs) {
                        for (int n = 0; n <= 4; ++n) {
                          const FunctionHandle f = dcalc::eigenfunction(n, D).to_function();
                          const Parity parity = (n % 2 == 0) ? Parity::even : Parity::odd;
                          for (int j = 0; j <= 54; ++j) {
                            const double xi = 0.3 + 0.05 * j;
                            if (std::abs(f.real(xi)) < 1e-3) continue;
                            e.add(std::abs(qp_deformed(f, D, parity, xi) + xi * xi / 2.0 - (n + D / 2.0)));
                          }
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"qpotential", "even sector at D = 1 equals the standard form", 1e-10,
                    [](Rng& rng) {
                      MaxError e;
                      const FunctionHandle g = PolyGauss::gaussian().to_function(1.0);
                      const FunctionHandle g2 =
                          (DPoly(2) * PolyGauss::gaussian().multiply_by_xi().multiply_by_xi() -
                           PolyGauss::gaussian())
                              .to_function(1.0);
                      for (int i = 0; i < 20; ++i) {
                        const double xi = rng.uniform(0.2, 2.5);
                        e.add(std::abs(qp_deformed(g, 1.0, Parity::even, xi) - qp_standard(g, xi)));
                        if (std::abs(g2.real(xi)) > 1e-3) {
                          e.add(std::abs(qp_deformed(g2, 1.0, Parity::even, xi) - qp_standard(g2, xi)));
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"qpotential", "relation check c(xi) = 0 under literal reflection", 1e-7, [](Rng&) {
                      MaxError e;
                      const Grid grid = Grid::uniform(-3.0, 3.0, 61);
                      for (double D : kDs) {
                        for (int n = 0; n <= 3; ++n) {
                          const PolyGauss shape = dcalc::eigenfunction(n, D).shape;
                          const Parity parity = (n % 2 == 0) ? Parity::even : Parity::odd;
                          const Profile c = qp_relation_check(shape.to_function(D), D, parity, grid);
                          for (const Complex& v : c.values()) {
                            if (!std::isnan(v.real())) e.add(std::abs(v.real()));
                          }
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"qpotential", "fractional QP on Mittag-Leffler amplitudes is -lambda^2/2", 1e-8,
                    [](Rng& rng) {
                      MaxError e;
                      for (double alpha : {0.4, 0.7}) {
                        for (double lambda : {0.5, 1.0}) {
                          const PowerSeriesAmplitude R =
                              PowerSeriesAmplitude::mittag_leffler(alpha, lambda, 120);
                          for (int i = 0; i < 5; ++i) {
                            const double x = rng.uniform(0.05, 2.0);
                            e.add(std::abs(qp_fractional(R, x) + lambda * lambda / 2.0));
                          }
                        }
                      }
                      return e.value();
                    }});
  checks.push_back({"qpotential", "MRL QP at alpha = 1 equals the standard form", 1e-10, [](Rng& rng) {
                      MaxError e;
                      const FunctionHandle g = PolyGauss::gaussian().to_function(1.0);
                      for (int i = 0; i < 20; ++i) {
                        const double t = rng.uniform(0.1, 5.0);
                        const double x = rng.uniform(0.1, 2.5);
                        e.add(std::abs(qp_mrl(g, 1.0, t, x) - qp_standard(g, x)));
                      }
                      return e.value();
                    }});
  return checks;
}

std::vector<Info> qpotential_infos() {
  return {{"qpotential", "relation constant and operator-square forms", [] {
             const double D = 1.5;
             const Profile c = qpotential::qp_relation_check(PolyGauss::gaussian().to_function(D), D,
                                                            Parity::even, Grid::uniform(0.5, 3.0, 26));
             MaxError literal;
             for (const Complex& v : c.values()) literal.add(std::abs(v.real()));
             const qpotential::RelationConstants k = qpotential::relation_constants(D);
             return "at D = 1.5 literal composition gives a zero constant (max |c| " +
                    short_number(literal.value()) + "); the quoted constant (D-1)(2D-1)/2 is " +
                    format_number(k.quoted_relation) + "; the 1/xi^2 coefficient is written both as " +
                    "(D-1)(D-2) = " + format_number(k.square_first_form) + " and (D-1)(2-D) = " +
                    format_number(k.square_second_form) + ", the latter implying (D-1)(3-D)/2 = " +
                    format_number(k.implied_by_second_form);
           }}};
}

struct ModuleSuite {
  const char* name;
  std::vector<Check> (*checks)();
  std::vector<Info> (*infos)();
};

std::vector<Info> no_infos() { return {}; }

const ModuleSuite kSuites[] = {
    {"core", core_checks, no_infos},
    {"qcalc", qcalc_checks, no_infos},
    {"fractional", fractional_checks, no_infos},
    {"dcalc", dcalc_checks, dcalc_infos},
    {"spectral", spectral_checks, spectral_infos},
    {"qpotential", qpotential_checks, qpotential_infos},
};

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::info: return "INFO";
  }
  return "?";
}

const std::vector<std::string>& module_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const ModuleSuite& s : kSuites) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

std::vector<Record> run(const Options& options) {
  if (!options.only.empty()) {
    const auto& names = module_names();
    if (std::find(names.begin(), names.end(), options.only) == names.end()) {
      throw DomainError("verify: unknown module '" + options.only + "'");
    }
  }
  std::vector<Record> records;
  std::uint32_t stream = 0;
  for (const ModuleSuite& suite : kSuites) {
    const bool selected = options.only.empty() || options.only == suite.name;
    for (Check& check : suite.checks()) {
      // Streams are numbered over the whole suite so --only reproduces the
      // errors of a full run.
      Rng rng(options.seed, stream++);
      if (!selected) continue;
      Record r{Status::pass, check.module, check.name, 0.0, check.tolerance, {}};
      try {
        r.max_error = check.measure(rng);
        if (!(r.max_error <= check.tolerance)) r.status = Status::fail;
      } catch (const std::exception& ex) {
        r.status = Status::fail;
        r.max_error = std::numeric_limits<double>::quiet_NaN();
        r.detail = ex.what();
      }
      records.push_back(std::move(r));
    }
    if (!selected) continue;
    for (Info& info : suite.infos()) {
      Record r{Status::info, info.module, info.name, 0.0, 0.0, {}};
      try {
        r.detail = info.describe();
      } catch (const std::exception& ex) {
        r.detail = std::string("could not evaluate: ") + ex.what();
      }
      records.push_back(std::move(r));
    }
  }
  return records;
}

bool all_passed(const std::vector<Record>& records) {
  return std::none_of(records.begin(), records.end(),
                      [](const Record& r) { return r.status == Status::fail; });
}

std::string format_report(const std::vector<Record>& records) {
  std::ostringstream out;
  int passed = 0;
  int failed = 0;
  int infos = 0;
  for (const Record& r : records) {
    std::string module = r.module;
    module.resize(std::max<std::size_t>(module.size(), 11), ' ');
    out << to_string(r.status) << "  " << module;
    if (r.status == Status::info) {
      ++infos;
      out << r.name << ": " << r.detail << '\n';
      continue;
    }
    (r.status == Status::pass ? passed : failed)++;
    std::string name = r.name;
    name.resize(std::max<std::size_t>(name.size(), 58), ' ');
    out << name << "  max_err " << short_number(r.max_error) << "  tol "
        << short_number(r.tolerance);
    if (!r.detail.empty()) out << "  (" << r.detail << ')';
    out << '\n';
  }
  out << "summary: " << passed << " passed, " << failed << " failed, " << infos << " info\n";
  return out.str();
}

}  // namespace deforma::verify
