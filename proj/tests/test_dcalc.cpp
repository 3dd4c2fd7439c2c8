#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <vector>

#include "deforma/dcalc.hpp"
#include "deforma/errors.hpp"
#include "deforma/special.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace deforma;
using namespace deforma::dcalc;
using doctest::Approx;

namespace {

FunctionHandle product(const FunctionHandle& f, const FunctionHandle& g) {
  return FunctionHandle([f, g](double x) { return f(x) * g(x); });
}

FunctionHandle reflected(const FunctionHandle& f) {
  return FunctionHandle([f](double x) { return f(-x); });
}

DPoly symbolic_bracket(int n) {
  return (n % 2 == 0) ? DPoly(n) : DPoly(n - 1) + DPoly::symbol();
}

double definite(const FunctionHandle& F, double D, double a, double b) {
  return d_integral(F, D, b) - d_integral(F, D, a);
}

double weighted_quadrature(const Eigenstate& f, const Eigenstate& g) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto integrand = [&](double xi) {
    return (f.evaluate(xi) * g.evaluate(xi) + f.evaluate(-xi) * g.evaluate(-xi)) *
           integration_weight(f.D, xi);
  };
  return integrator.integrate(integrand, 0.0, 40.0);
}

}  // namespace

TEST_CASE("d_bracket") {
  for (int m = 0; m < 6; ++m) {
    CHECK(d_bracket(2 * m, 1.3) == 2 * m);
    CHECK(d_bracket(2 * m + 1, 1.3) == Approx(2 * m + 1.3));
  }
  CHECK(d_bracket(3, 1.5) == 3.5);
  for (int n = 0; n <= 10; ++n) CHECK(d_bracket(n, 1.0) == n);
  CHECK_THROWS_AS(d_bracket(1, 0.0), DomainError);
  CHECK_THROWS_AS(d_bracket(1, 2.0), DomainError);
}

TEST_CASE("d_factorial") {
  CHECK(d_factorial(0, 0.7) == 1.0);
  CHECK(d_factorial(2, 1.5) == 3.0);
  double fact = 1.0;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) fact *= n;
    CHECK(d_factorial(n, 1.0) == Approx(fact).epsilon(1e-15));
  }
  CHECK_THROWS_AS(d_factorial(171, 1.5), RangeError);
  CHECK(d_factorial(170, 1.9) > 0.0);
}

TEST_CASE("d_factorial: Gamma form equals the product; the quoted form does not") {
  for (double D : {0.3, 0.5, 1.0, 1.5, 1.9}) {
    for (int n = 0; n <= 40; ++n) {
      CHECK(d_factorial_gamma_form(n, D) == Approx(d_factorial(n, D)).epsilon(1e-11));
    }
    CHECK(d_factorial_quoted_form(0, D) == 0.0);
    CHECK(std::abs(d_factorial_quoted_form(6, D) / d_factorial(6, D) - 1.0) > 0.1);
  }
}

TEST_CASE("d_derivative: examples") {
  for (const FunctionHandle& f : {monomial(3), testing::opaque(monomial(3))}) {
    CHECK(d_derivative(f, 1.5).real(1.2) == Approx(5.04).epsilon(1e-6));
  }
  const FunctionHandle g([](double x) { return Complex(std::exp(-0.5 * x * x), 0.0); });
  for (double xi : {0.3, 1.0, 2.2}) {
    const FunctionHandle gd = g.with_derivative(
        FunctionHandle([](double x) { return Complex(-x * std::exp(-0.5 * x * x), 0.0); }));
    CHECK(d_derivative(gd, 0.6).real(xi) == -xi * std::exp(-0.5 * xi * xi));
  }
  const FunctionHandle e = d_exp_function(1.4, 0.8);
  CHECK(d_derivative(e, 1.4).real(0.9) == Approx(0.8 * e.real(0.9)).epsilon(1e-6));
  CHECK(d_derivative(testing::opaque(e), 1.4).real(0.9) == Approx(0.8 * e.real(0.9)).epsilon(1e-6));
  CHECK_THROWS_AS(d_derivative(e, 1.4)(0.0), DomainError);
}

TEST_CASE("d_derivative: monomial power rule and parity") {
  for (double D : {0.5, 1.2, 1.8}) {
    for (int n = 1; n <= 7; ++n) {
      for (double xi : {-1.3, 0.4, 2.0}) {
        CHECK(d_derivative(monomial(n), D).real(xi) ==
              Approx(d_bracket(n, D) * std::pow(xi, n - 1)).epsilon(1e-12));
      }
    }
  }
  CHECK(d_derivative(monomial(3), 1.5).parity_hint() == Parity::even);
  CHECK(d_derivative(monomial(2), 1.5).parity_hint() == Parity::odd);
}

TEST_CASE("d_derivative: analytic derivative of the result") {
  testing::Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const FunctionHandle f = testing::polynomial(rng.polynomial(5));
    const double D = rng.uniform(0.2, 1.8);
    const FunctionHandle g = d_derivative(f, D);
    REQUIRE(g.has_derivative());
    const double xi = rng.uniform(0.3, 2.0) * (rng.integer(0, 1) ? 1.0 : -1.0);
    CHECK(g.derivative().real(xi) ==
          Approx(first_derivative(testing::opaque(g), xi).real()).epsilon(1e-8));
  }
}

TEST_CASE("d_derivative: exact PolyGauss form matches the numeric operator") {
  testing::Rng rng(32);
  for (int i = 0; i < 20; ++i) {
    std::vector<DPoly> coeffs;
    for (int k = 0; k <= rng.integer(0, 5); ++k) coeffs.emplace_back(Rational(rng.integer(-4, 4)));
    const PolyGauss p(coeffs);
    const double D = rng.uniform(0.2, 1.8);
    const double xi = rng.uniform(-2.5, 2.5);
    if (std::abs(xi) < 1e-3) continue;
    CHECK(d_derivative(p).evaluate(xi, D) ==
          Approx(d_derivative(p.to_function(D), D).real(xi)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("product rule as written holds") {
  testing::Rng rng(33);
  for (double D : {0.5, 1.2, 1.8}) {
    for (int i = 0; i < 20; ++i) {
      const FunctionHandle f = testing::polynomial(rng.polynomial(5));
      const FunctionHandle g = testing::polynomial(rng.polynomial(5));
      double xi = rng.uniform(-2.0, 2.0);
      if (std::abs(xi) < 0.05) xi = 0.5;
      const double lhs = d_derivative(product(f, g), D).real(xi);
      const double t1 = g.real(xi) * d_derivative(f, D).real(xi);
      const double t2 = d_derivative(g, D).real(xi) * f.real(-xi);
      const double t3 = g.derivative().real(xi) * (f.real(xi) - f.real(-xi));
      CHECK(std::abs(lhs - (t1 + t2 + t3)) <= 1e-8 * (std::abs(t1) + std::abs(t2) + std::abs(t3) + 1e-12));
    }
  }
}

TEST_CASE("d_exp") {
  CHECK(d_exp(1.3, 0.0) == 1.0);
  for (double z : {-1.0, 0.5, 2.0}) CHECK(d_exp(1.0, z) == Approx(std::exp(z)).epsilon(1e-13));
  long double reference = 0.0L;
  long double term = 1.0L;
  for (int n = 0; n < 200; ++n) {
    if (n > 0) term /= static_cast<long double>(d_bracket(n, 1.5));
    reference += term;
  }
  CHECK(d_exp(1.5, 1.0, 1e-12) == Approx(static_cast<double>(reference)).epsilon(1e-12));
  CHECK(d_exp(1.5, 1.0) == Approx(2.124207753573408947).epsilon(1e-14));
}

TEST_CASE("d_exp_function carries analytic derivatives") {
  const FunctionHandle e = d_exp_function(0.7, 1.3);
  REQUIRE(e.derivative_depth() == 3);
  for (double xi : {-0.8, 0.2, 1.5}) {
    CHECK(e.derivative().real(xi) ==
          Approx(first_derivative(testing::opaque(e), xi).real()).epsilon(1e-9));
    CHECK(e.derivative().derivative().real(xi) ==
          Approx(second_derivative(testing::opaque(e), xi).real()).epsilon(1e-7));
  }
}

TEST_CASE("d_integral") {
  CHECK(d_integral(monomial(2), 1.5, 1.0) == Approx(1.0 / 3.5).epsilon(1e-8));
  for (double D : {0.4, 1.3, 1.9}) {
    for (int n = 0; n <= 6; ++n) {
      for (double x : {-1.4, 0.6, 2.0}) {
        CHECK(d_integral(monomial(n), D, x) ==
              Approx(std::pow(x, n + 1) / d_bracket(n + 1, D)).epsilon(1e-10));
      }
    }
  }
  // Odd integrands have an even antiderivative, which the reflection term leaves alone.
  const FunctionHandle s([](double x) { return Complex(std::sin(x), 0.0); });
  for (double D : {0.5, 1.6}) {
    for (double x : {0.5, 1.7, -2.3}) {
      CHECK(std::abs(d_integral(s, D, x) - (1.0 - std::cos(x))) < 1e-10);
    }
  }
  CHECK(d_integral(monomial(2), 1.5, 0.0) == 0.0);
}

TEST_CASE("d_integral_series: truncated sums") {
  CHECK(d_integral_series(monomial(2), 1.5, 1.0) == Approx(1.0 / 3.5).epsilon(1e-12));
  const FunctionHandle G([](double x) { return Complex(std::exp(x) * std::cos(x), 0.0); });
  for (double D : {0.7, 1.3}) {
    for (double x : {-1.2, 0.8}) {
      CHECK(d_integral_series(G, D, x) == Approx(d_integral(G, D, x)).epsilon(1e-5));
    }
  }
  // Ratio (D-1) for the constant term: 30 terms fall visibly short at D = 1.9.
  const double partial = d_integral_series(constant_function(1.0), 1.9, 1.0);
  CHECK(std::abs(partial - 1.0 / 1.9) > 1e-3);
  CHECK(std::abs(partial - 1.0 / 1.9) < 0.05);
  // One term is the ordinary antiderivative.
  CHECK(d_integral_series(monomial(2), 1.5, 2.0, 1) == Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(d_integral_series(monomial(2), 1.5, 1.0, 0), DomainError);
  CHECK_THROWS_AS(d_integral_series(monomial(2), 1.5, 1.0, 31), DomainError);
}

TEST_CASE("d_integral: fundamental theorem") {
  const double D = 1.3;
  const FunctionHandle F = monomial(3);
  const FunctionHandle f([F, D](double xi) { return Complex(d_integral(F, D, xi), 0.0); });
  CHECK(d_derivative(f, D).real(0.7) == Approx(std::pow(0.7, 3)).epsilon(1e-6));
  const FunctionHandle G([](double x) { return Complex(std::exp(x) * (1.0 + x * x), 0.0); });
  const FunctionHandle g([G, D](double xi) { return Complex(d_integral(G, D, xi), 0.0); });
  for (double xi : {-0.9, 0.4, 1.1}) {
    CHECK(d_derivative(g, D).real(xi) == Approx(G.real(xi)).epsilon(1e-6));
  }
}

TEST_CASE("integration by parts with both correction integrals") {
  // int_a^b g d_D f = [f g]_a^b - int_a^b (d_D g) R f - int_a^b g' (1 - R) f
  const double a = 0.5;
  const double b = 2.0;
  for (double D : {0.5, 1.2, 1.8}) {
    for (int m = 0; m <= 4; ++m) {
      for (int k = 0; k <= 4; ++k) {
        const FunctionHandle f = monomial(m);
        const FunctionHandle g = monomial(k);
        const FunctionHandle lhs_integrand = product(g, d_derivative(f, D));
        const FunctionHandle c1 = product(d_derivative(g, D), reflected(f));
        const FunctionHandle c2(
            [f, g](double x) { return g.derivative()(x) * (f(x) - f(-x)); });
        const double lhs = definite(lhs_integrand, D, a, b);
        const double boundary = f.real(b) * g.real(b) - f.real(a) * g.real(a);
        const double rhs = boundary - definite(c1, D, a, b) - definite(c2, D, a, b);
        CHECK(lhs == Approx(rhs).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("ladder: D flavor") {
  const LadderRep rep = ladder(1.5, LadderFlavor::D, 8);
  CHECK(rep.dim == 9);
  const Eigen::MatrixXd n_op = rep.adag * rep.a;
  for (int n = 0; n <= 8; ++n) {
    CHECK(n_op(n, n) == Approx(d_bracket(n, 1.5)).epsilon(1e-14));
    for (int m = 0; m <= 8; ++m) {
      if (m != n) CHECK(n_op(n, m) == 0.0);
    }
  }
  CHECK(rep.adag == rep.a.transpose());
  const Eigen::MatrixXd comm = rep.a * rep.adag - rep.adag * rep.a;
  for (int n = 0; n < 8; ++n) {
    CHECK(comm(n, n) == Approx(n % 2 == 0 ? 1.5 : 0.5).epsilon(1e-14));
  }
  const Eigen::MatrixXd number = 0.5 * (rep.adag * rep.a + rep.a * rep.adag) -
                                 0.75 * Eigen::MatrixXd::Identity(9, 9);
  for (int n = 0; n < 8; ++n) CHECK(std::abs(number(n, n) - rep.number(n, n)) < 1e-13);
  CHECK_THROWS_AS(ladder(1.5, LadderFlavor::D, 1), DomainError);
}

TEST_CASE("ladder: q and Q flavors approach the boson algebra") {
  for (LadderFlavor flavor : {LadderFlavor::q, LadderFlavor::Q}) {
    const LadderRep rep = ladder(1.0 + 1e-7, flavor, 10);
    const Eigen::MatrixXd comm = rep.a * rep.adag - rep.adag * rep.a;
    for (int n = 0; n < 10; ++n) CHECK(std::abs(comm(n, n) - 1.0) < 1e-5);
  }
  const LadderRep q = ladder(2.0, LadderFlavor::q, 4);
  CHECK(q.a(1, 2) == Approx(std::sqrt(2.5)));
  CHECK(std::string(to_string(LadderFlavor::Q)) == "Q");
}

TEST_CASE("ladder: Wigner relations on the truncated space") {
  using CMatrix = Eigen::MatrixXcd;
  const Complex i(0.0, 1.0);
  for (double D : {0.5, 1.0, 1.5}) {
    const int N = 20;
    const LadderRep rep = ladder(D, LadderFlavor::D, N);
    const CMatrix a = rep.a.cast<Complex>();
    const CMatrix ad = rep.adag.cast<Complex>();
    const CMatrix X = (a + ad) / std::sqrt(2.0);
    const CMatrix P = (a - ad) / (i * std::sqrt(2.0));
    const CMatrix H = 0.5 * (P * P + X * X);
    const CMatrix r1 = i * P - (X * H - H * X);
    const CMatrix r2 = -i * X - (P * H - H * P);
    CHECK(r1.topLeftCorner(N - 1, N - 1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(r2.topLeftCorner(N - 1, N - 1).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("coherent states") {
  const auto vacuum = coherent_coeffs(0.0, 1.5, 5);
  CHECK(vacuum[0] == Complex(1.0, 0.0));
  for (int n = 1; n <= 5; ++n) CHECK(vacuum[n] == Complex(0.0, 0.0));

  const Complex alpha(0.8, 0.0);
  const auto c = coherent_coeffs(alpha, 1.5, 40);
  double norm = 0.0;
  for (const Complex& v : c) norm += std::norm(v);
  CHECK(std::abs(norm - 1.0) < 1e-10);

  const LadderRep rep = ladder(1.5, LadderFlavor::D, 40);
  Eigen::VectorXcd vec(41);
  for (int n = 0; n <= 40; ++n) vec(n) = c[n];
  const Eigen::VectorXcd lowered = rep.a.cast<Complex>() * vec;
  CHECK((lowered - alpha * vec).cwiseAbs().maxCoeff() < 1e-8);

  const auto complex_c = coherent_coeffs(Complex(0.3, -0.5), 0.7, 40);
  double cn = 0.0;
  for (const Complex& v : complex_c) cn += std::norm(v);
  CHECK(std::abs(cn - 1.0) < 1e-10);

  CHECK_THROWS_AS(coherent_coeffs(3.0, 1.5, 5), RangeError);
}

TEST_CASE("eigenfunctions") {
  const Eigenstate zero = eigenfunction(0, 1.5);
  CHECK(zero.shape == PolyGauss::gaussian());
  CHECK(zero.prefactor == 1.0);
  CHECK(lower(zero.shape).is_zero());

  const Eigenstate one = eigenfunction(1, 1.5);
  CHECK(one.shape == DPoly(2) * PolyGauss::gaussian().multiply_by_xi());
  CHECK(one.evaluate(0.7) == Approx(std::sqrt(2.0) * 0.7 * std::exp(-0.245) / std::sqrt(1.5)));

  for (int n = 0; n <= 12; ++n) {
    CHECK(eigenfunction(n, 1.2).shape.parity() == (n % 2 == 0 ? Parity::even : Parity::odd));
  }
  // (xi + d_D) u_n = 2 [n]_D u_{n-1}, i.e. a_D |n> = sqrt([n]_D) |n-1>
  for (int n = 1; n <= 10; ++n) {
    const PolyGauss un = eigenfunction(n, 1.0).shape;
    const PolyGauss prev = eigenfunction(n - 1, 1.0).shape;
    CHECK(lower(un) == DPoly(2) * symbolic_bracket(n) * prev);
  }
  for (int n = 1; n <= 10; ++n) {
    const Eigenstate s = eigenfunction(n, 0.8);
    const Eigenstate p = eigenfunction(n - 1, 0.8);
    const double xi = 0.9;
    const double lowered = lower(s.shape).evaluate(xi, 0.8) * s.prefactor / std::sqrt(2.0);
    CHECK(lowered == Approx(std::sqrt(d_bracket(n, 0.8)) * p.evaluate(xi)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(eigenfunction(41, 1.0), DomainError);
}

TEST_CASE("weight constants") {
  CHECK(sigma(1.0) == Approx(2.0).epsilon(1e-15));
  CHECK(sigma(2.0) == Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(sphere_volume(0.5, 2.0) == Approx(2.07721467583565730).epsilon(1e-13));
  CHECK(sphere_volume(1.0, 2.0) == Approx(4.0).epsilon(1e-14));
  CHECK(sphere_volume(1.5, 2.0) == Approx(7.26210191021512274).epsilon(1e-13));
  CHECK(sphere_volume(2.0, 2.0) == Approx(4.0 * kPi).epsilon(1e-14));
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (double D : {0.5, 1.0, 1.5}) {
    const double q = 2.0 * integrator.integrate([D](double xi) { return integration_weight(D, xi); },
                                                0.0, 2.0);
    CHECK(q == Approx(sphere_volume(D, 2.0)).epsilon(1e-8));
  }
}

TEST_CASE("weighted orthonormality of eigenfunctions") {
  for (double D : {0.5, 1.0, 1.5}) {
    for (int m = 0; m <= 4; ++m) {
      for (int n = 0; n <= 4; ++n) {
        // Every level carries the vacuum norm pi^{D/2}.
        const double ip = weighted_inner_product(eigenfunction(m, D), eigenfunction(n, D));
        CHECK(std::abs(ip / std::pow(kPi, D / 2.0) - (m == n ? 1.0 : 0.0)) < 1e-8);
      }
    }
    // The moment formula against direct quadrature.
    for (int n : {0, 1, 3}) {
      const Eigenstate s = eigenfunction(n, D);
      const Eigenstate t = eigenfunction(n + 1, D);
      CHECK(weighted_quadrature(s, s) == Approx(std::pow(kPi, D / 2.0)).epsilon(1e-8));
      CHECK(std::abs(weighted_quadrature(s, t)) < 1e-8);
    }
  }
}
