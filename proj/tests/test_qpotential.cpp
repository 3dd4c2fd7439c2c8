#include <cmath>
#include <limits>

#include "deforma/dcalc.hpp"
#include "deforma/errors.hpp"
#include "deforma/fractional.hpp"
#include "deforma/qpotential.hpp"
#include "deforma/special.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace deforma;
using namespace deforma::qpotential;
using doctest::Approx;

namespace {

FunctionHandle gaussian(double D = 1.0) { return PolyGauss::gaussian().to_function(D); }
FunctionHandle xi_gaussian(double D = 1.0) {
  return PolyGauss::gaussian().multiply_by_xi().to_function(D);
}

// exp(-x^2/2) written in the x^{k alpha} basis with the Taylor coefficients
// placed on the even powers.
PowerSeriesAmplitude gaussian_series(double alpha, int terms) {
  PowerSeriesAmplitude out{alpha, std::vector<double>(terms, 0.0)};
  double c = 1.0;
  for (int m = 0; 2 * m < terms; ++m) {
    out.coeffs[2 * m] = c;
    c *= -0.5 / (m + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("qp_standard") {
  CHECK(qp_standard(gaussian(), 0.0) == Approx(0.5).epsilon(1e-8));
  CHECK(std::abs(qp_standard(constant_function(3.0), 1.2)) < 1e-10);
  for (double xi = -3.0; xi <= 3.0; xi += 0.25) {
    if (std::abs(std::abs(xi) - 1.0) < 1e-12) continue;
    CHECK(std::abs(qp_standard(gaussian(), xi) + xi * xi / 2.0 - 0.5) < 1e-6);
  }
  CHECK_THROWS_AS(qp_standard(xi_gaussian(), 0.0), DomainError);
}

TEST_CASE("qp_mrl") {
  const FunctionHandle g = gaussian();
  for (double t : {0.3, 1.0, 5.0}) {
    for (double x : {0.2, 0.7, 1.9}) {
      CHECK(qp_mrl(g, 1.0, t, x) == Approx(qp_standard(g, x)).epsilon(1e-12));
    }
  }
  CHECK(std::abs(qp_mrl(g, 0.5, 1.0, 1.0)) < 1e-6);
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (double x : {0.4, 1.6}) {
      const double ratio = qp_mrl(g, alpha, 4.0 * 0.7, x) / qp_mrl(g, alpha, 0.7, x);
      CHECK(ratio == Approx(std::pow(4.0, 2.0 * (alpha - 1.0))).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(qp_mrl(g, 0.3, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(qp_mrl(g, 0.5, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(qp_mrl(g, 1.5, 1.0, 1.0), DomainError);
  // integral exponent: 2(alpha - 1) = -1 at alpha = 0.5 allows negative x t
  CHECK_NOTHROW(qp_mrl(g, 0.5, -1.0, 0.5));
}

TEST_CASE("PowerSeriesAmplitude") {
  const PowerSeriesAmplitude p{0.5, {1.0, 2.0, 3.0}};
  CHECK(p(4.0) == Approx(1.0 + 2.0 * 2.0 + 3.0 * 4.0));
  const PowerSeriesAmplitude d = p.caputo();
  REQUIRE(d.coeffs.size() == 2);
  CHECK(d.coeffs[0] == Approx(2.0 * fractional::caputo_power_coeff(1, 0.5)));
  CHECK(d.coeffs[1] == Approx(3.0 * fractional::caputo_power_coeff(2, 0.5)));
  CHECK_THROWS_AS(p(-1.0), DomainError);

  const PowerSeriesAmplitude ml = PowerSeriesAmplitude::mittag_leffler(0.6, 0.8, 80);
  for (double x : {0.0, 0.5, 2.0}) {
    CHECK(ml(x) == Approx(fractional::mittag_leffler(0.6, std::pow(0.8, 1.0 / 0.6) * x)).epsilon(1e-12));
  }
}

TEST_CASE("qp_fractional") {
  for (double alpha : {0.4, 0.7}) {
    for (double lambda : {0.5, 1.0}) {
      const PowerSeriesAmplitude R = PowerSeriesAmplitude::mittag_leffler(alpha, lambda, 120);
      for (double x : {0.1, 0.5, 1.0, 1.5, 2.0}) {
        CHECK(std::abs(qp_fractional(R, x) + lambda * lambda / 2.0) < 1e-8);
      }
    }
  }
  CHECK(qp_fractional(PowerSeriesAmplitude{0.6, {0.0, 1.0}}, 1.3) == 0.0);

  // Classical limit: the Gaussian written in the power basis
  CHECK(qp_fractional(gaussian_series(1.0, 20), 0.5) ==
        Approx(qp_standard(gaussian(), 0.5)).epsilon(1e-10));
  CHECK(std::abs(qp_fractional(gaussian_series(0.999, 20), 0.5) - qp_standard(gaussian(), 0.5)) <
        1e-3);

  CHECK_THROWS_AS(qp_fractional(PowerSeriesAmplitude{0.0, {1.0}}, 0.5), DomainError);
  CHECK_THROWS_AS(qp_fractional(PowerSeriesAmplitude{0.5, {}}, 0.5), DomainError);
  CHECK_THROWS_AS(qp_fractional(PowerSeriesAmplitude{0.5, {0.0, 1.0}}, 0.0), DomainError);
}

TEST_CASE("qp_deformed: ground and first excited states") {
  for (double D : {0.5, 1.0, 1.5}) {
    for (double xi = 0.3; xi <= 3.0; xi += 0.1) {
      CHECK(std::abs(qp_deformed(gaussian(D), D, Parity::even, xi) - (D - xi * xi) / 2.0) < 1e-6);
      CHECK(std::abs(qp_deformed(xi_gaussian(D), D, Parity::odd, xi) + xi * xi / 2.0 -
                     (1.0 + D / 2.0)) < 1e-6);
    }
  }
}

TEST_CASE("qp_deformed: D = 1 is qp_standard") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const double xi = rng.uniform(0.2, 2.5);
    CHECK(std::abs(qp_deformed(gaussian(), 1.0, Parity::even, xi) - qp_standard(gaussian(), xi)) <
          1e-10);
    if (std::abs(xi - std::sqrt(3.0)) > 0.05) {
      CHECK(std::abs(qp_deformed(xi_gaussian(), 1.0, Parity::odd, xi) -
                     qp_standard(xi_gaussian(), xi)) < 1e-10);
    }
  }
}

TEST_CASE("qp_deformed: energy balance for eigenfunctions") {
  for (double D : {0.5, 1.0, 1.5}) {
    for (int n = 0; n <= 4; ++n) {
      const dcalc::Eigenstate state = dcalc::eigenfunction(n, D);
      const FunctionHandle f = state.to_function();
      const Parity parity = (n % 2 == 0) ? Parity::even : Parity::odd;
      for (double xi = 0.3; xi <= 3.0; xi += 0.05) {
        if (std::abs(f.real(xi)) < 1e-3) continue;  // stay clear of nodes
        CHECK(std::abs(qp_deformed(f, D, parity, xi) + xi * xi / 2.0 - (n + D / 2.0)) < 1e-6);
      }
    }
  }
}

TEST_CASE("qp_deformed: errors") {
  CHECK_THROWS_AS(qp_deformed(gaussian(), 1.5, Parity::odd, 1.0), DomainError);
  CHECK_THROWS_AS(qp_deformed(xi_gaussian(), 1.5, Parity::even, 1.0), DomainError);
  CHECK_THROWS_AS(qp_deformed(gaussian(), 1.5, Parity::even, 0.0), DomainError);
  CHECK_THROWS_AS(qp_deformed(gaussian(), 1.5, Parity::none, 1.0), DomainError);
  CHECK_THROWS_AS(qp_deformed(gaussian(), -0.5, Parity::even, 1.0), DomainError);
  const FunctionHandle tiny = FunctionHandle([](double x) { return Complex(1e-12 * std::exp(-x * x), 0.0); });
  CHECK_THROWS_AS(qp_deformed(tiny, 1.5, Parity::even, 1.0), DomainError);
}

TEST_CASE("qp_relation_check: literal composition closes") {
  const Grid grid = Grid::uniform(-3.0, 3.0, 61);
  for (double D : {0.5, 1.0, 1.5}) {
    for (int n = 0; n <= 3; ++n) {
      const PolyGauss shape = dcalc::eigenfunction(n, D).shape;
      const Parity parity = (n % 2 == 0) ? Parity::even : Parity::odd;
      const Profile c = qp_relation_check(shape.to_function(D), D, parity, grid);
      int omitted = 0;
      for (const Complex& v : c.values()) {
        if (std::isnan(v.real())) {
          ++omitted;
          continue;
        }
        CHECK(std::abs(v.real()) < 1e-7);
      }
      CHECK(omitted >= 1);  // xi = 0 is on the grid
      CHECK(c.meta().at("omitted") == std::to_string(omitted));
      CHECK(c.meta().at("kind") == "qp-check");
    }
  }
}

TEST_CASE("qp_relation_check: quoted constant is reported, not applied") {
  const Profile c =
      qp_relation_check(gaussian(1.5), 1.5, Parity::even, Grid::uniform(0.5, 2.5, 5));
  CHECK(std::stod(c.meta().at("quoted_relation_constant")) == Approx(0.5));
  CHECK(std::abs(std::stod(c.meta().at("quoted_relation_constant"))) > 0.1);
}

TEST_CASE("relation_constants") {
  const RelationConstants k = relation_constants(1.5);
  CHECK(k.quoted_relation == Approx(0.5));
  CHECK(k.square_first_form == Approx(-0.25));
  CHECK(k.square_second_form == Approx(0.25));
  CHECK(k.implied_by_second_form == Approx(0.375));
  const RelationConstants one = relation_constants(1.0);
  CHECK(one.quoted_relation == 0.0);
  CHECK(one.square_first_form == 0.0);
  CHECK(one.square_second_form == 0.0);
  CHECK(one.implied_by_second_form == 0.0);
  // The two written square forms differ by a sign for every D except 1 and 2.
  testing::Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const double D = rng.uniform(0.1, 1.9);
    const RelationConstants r = relation_constants(D);
    CHECK(r.square_first_form == Approx(-r.square_second_form));
  }
}
