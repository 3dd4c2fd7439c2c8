#include "deforma/qpotential.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "deforma/dcalc.hpp"
#include "deforma/errors.hpp"
#include "deforma/fractional.hpp"
#include "deforma/special.hpp"

namespace deforma::qpotential {
namespace {

constexpr double kAmplitudeFloor = 1e-10;

double amplitude(const FunctionHandle& r, double xi, const char* who) {
  const double value = r.real(xi);
  if (!(std::abs(value) >= kAmplitudeFloor)) {
    throw DomainError(std::string(who) + ": amplitude vanishes at xi = " + format_number(xi));
  }
  return value;
}

void require_parity(const FunctionHandle& r, Parity parity, double xi, double value) {
  if (parity == Parity::none) throw DomainError("qp_deformed: parity must be even or odd");
  const double mirrored = r.real(-xi);
  const double defect = (parity == Parity::even) ? value - mirrored : value + mirrored;
  if (std::abs(defect) > 1e-8 * std::abs(value)) {
    throw DomainError(std::string("qp_deformed: amplitude is not ") + to_string(parity) +
                      " at xi = " + format_number(xi));
  }
}

}  // namespace

double qp_standard(const FunctionHandle& r, double xi) {
  const double value = amplitude(r, xi, "qp_standard");
  return -second_derivative(r, xi).real() / (2.0 * value);
}

double qp_mrl(const FunctionHandle& R, double alpha, double t, double x) {
  const double rho = fractional::mrl_rho(alpha);
  const double exponent = 2.0 * (alpha - 1.0);
  const double xt = x * t;
  double scale = 1.0;
  if (exponent != 0.0) {
    const bool integral = std::floor(exponent) == exponent;
    if ((xt < 0.0 && !integral) || xt == 0.0) {
      throw DomainError("qp_mrl: (x t)^" + format_number(exponent) + " undefined for x t = " +
                        format_number(xt));
    }
    scale = std::pow(xt, exponent);
  }
  const double value = amplitude(R, x, "qp_mrl");
  return -0.5 * rho * rho * scale * second_derivative(R, x).real() / value;
}

double PowerSeriesAmplitude::operator()(double x) const {
  if (x < 0.0 && alpha != 1.0) throw DomainError("power-series amplitude needs x >= 0");
  const double base = (alpha == 1.0) ? x : std::pow(x, alpha);
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * base + coeffs[k];
  return acc;
}

PowerSeriesAmplitude PowerSeriesAmplitude::caputo() const {
  PowerSeriesAmplitude out{alpha, {}};
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    out.coeffs.push_back(coeffs[k] * fractional::caputo_power_coeff(static_cast<int>(k), alpha));
  }
  return out;
}

PowerSeriesAmplitude PowerSeriesAmplitude::mittag_leffler(double alpha, double lambda, int terms) {
  if (terms < 1) throw DomainError("mittag_leffler amplitude: terms must be >= 1");
  PowerSeriesAmplitude out{alpha, {}};
  for (int k = 0; k < terms; ++k) {
    out.coeffs.push_back(std::pow(lambda, k) * std::exp(-log_gamma(1.0 + k * alpha)));
  }
  return out;
}

double qp_fractional(const PowerSeriesAmplitude& R, double x) {
  if (!(R.alpha > 0.0 && R.alpha <= 1.0)) {
    throw DomainError("qp_fractional: alpha must lie in (0, 1]");
  }
  if (R.coeffs.empty()) throw DomainError("qp_fractional: empty power-series amplitude");
  const double value = R(x);
  if (!(std::abs(value) >= kAmplitudeFloor)) {
    throw DomainError("qp_fractional: amplitude vanishes at x = " + format_number(x));
  }
  const PowerSeriesAmplitude twice = R.caputo().caputo();
  return twice.coeffs.empty() ? 0.0 : -0.5 * twice(x) / value;
}

double qp_deformed(const FunctionHandle& r, double D, Parity parity, double xi) {
  dcalc::require_dimension(D, "qp_deformed");
  if (xi == 0.0) throw DomainError("qp_deformed: undefined at xi = 0");
  const double value = amplitude(r, xi, "qp_deformed");
  require_parity(r, parity, xi, value);
  const double d1 = first_derivative(r, xi).real();
  const double d2 = second_derivative(r, xi).real();
  if (parity == Parity::even) return -(d2 + (D - 1.0) / xi * d1) / (2.0 * value);
  return -d2 / (2.0 * value) - (D - 1.0) * d1 / (2.0 * xi * value) +
         (D - 1.0) / (2.0 * xi * xi);
}

Profile qp_relation_check(const FunctionHandle& r, double D, Parity parity, const Grid& grid) {
  dcalc::require_dimension(D, "qp_relation_check");
  if (parity == Parity::none) throw DomainError("qp_relation_check: parity must be even or odd");
  const FunctionHandle once = dcalc::d_derivative(r, D);
  const FunctionHandle twice = dcalc::d_derivative(once, D);
  std::vector<Complex> values;
  values.reserve(grid.size());
  int omitted = 0;
  for (double xi : grid.abscissae()) {
    if (xi == 0.0 || std::abs(r.real(xi)) < kAmplitudeFloor) {
      values.emplace_back(std::numeric_limits<double>::quiet_NaN(), 0.0);
      ++omitted;
      continue;
    }
    const double q = qp_deformed(r, D, parity, xi);
    const double c = xi * xi * (q + twice.real(xi) / (2.0 * r.real(xi)));
    values.emplace_back(c, 0.0);
  }
  const RelationConstants constants = relation_constants(D);
  return Profile(grid, std::move(values),
                 {{"kind", "qp-check"},
                  {"D", format_number(D)},
                  {"parity", to_string(parity)},
                  {"omitted", std::to_string(omitted)},
                  {"quoted_relation_constant", format_number(constants.quoted_relation)}});
}

RelationConstants relation_constants(double D) {
  return {(D - 1.0) * (2.0 * D - 1.0) / 2.0, (D - 1.0) * (D - 2.0), (D - 1.0) * (2.0 - D),
          (D - 1.0) * (3.0 - D) / 2.0};
}

}  // namespace deforma::qpotential
