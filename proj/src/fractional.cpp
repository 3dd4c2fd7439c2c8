#include "deforma/fractional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "deforma/grid.hpp"
#include "deforma/special.hpp"
#include "series.hpp"

namespace deforma::fractional {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// Caputo derivative of order beta in (0,1) of the piecewise-linear interpolant
// of samples g_j at s_j = j*h, j = 0..m, evaluated at x = m*h.
double l1_sum(const std::vector<double>& g, double h, double beta) {
  const std::size_t m = g.size() - 1;
  const double x = m * h;
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double slope = (g[j + 1] - g[j]) / h;
    const double near = x - static_cast<double>(j + 1) * h;
    const double far = x - static_cast<double>(j) * h;
    sum += slope * (std::pow(far, 1.0 - beta) - std::pow(std::max(near, 0.0), 1.0 - beta));
  }
  return sum / gamma(2.0 - beta);
}

constexpr std::array<double, 4> kGaussNodes = {-0.8611363115940526, -0.3399810435848563,
                                               0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGaussWeights = {0.3478548451374538, 0.6521451548625461,
                                                 0.6521451548625461, 0.3478548451374538};

struct TailQuadrature {
  double integral = 0.0;
  double max_abs = 0.0;
};

// int_h^cutoff kernel(s) / s^{1+alpha} ds on panels of width ~h, 4-point Gauss-Legendre.
template <class Kernel>
TailQuadrature tail_integral(Kernel kernel, double alpha, double h, double cutoff) {
  TailQuadrature out;
  const double span = cutoff - h;
  if (span <= 0.0) return out;
  const auto panels = static_cast<std::size_t>(std::ceil(span / h - 1e-9));
  const double width = span / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = h + static_cast<double>(p) * width;
    const double mid = a + 0.5 * width;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
      const double s = mid + 0.5 * width * kGaussNodes[k];
      const double value = kernel(s, out.max_abs);
      out.integral += 0.5 * width * kGaussWeights[k] * value / std::pow(s, 1.0 + alpha);
    }
  }
  return out;
}

void check_decay(const FunctionHandle& f, double x, double cutoff, double max_abs,
                 Warnings* warnings, const char* who) {
  if (warnings == nullptr) return;
  const double edge = std::max(std::abs(f(x + cutoff)), std::abs(f(x - cutoff)));
  if (edge > 1e-8 * max_abs) {
    warnings->push_back(std::string(who) + ": integrand has not decayed at the cutoff (|f| = " +
                        format_number(edge) + ")");
  }
}

void check_window(double cutoff, double h, const char* who) {
  require_finite(cutoff, "cutoff");
  require_finite(h, "h");
  if (!(h > 0.0)) throw DomainError(std::string(who) + ": step h must be positive");
  if (!(cutoff > h)) throw DomainError(std::string(who) + ": cutoff must exceed h");
}

}  // namespace

double caputo_power_coeff(int n, double alpha) {
  if (n < 0) throw DomainError("caputo_power_coeff: n must be >= 0");
  if (n == 0) return 0.0;
  const double hi = 1.0 + n * alpha;
  const double lo = 1.0 + (n - 1) * alpha;
  if (hi < 150.0) return gamma(hi) / gamma(lo);
  return std::exp(log_gamma(hi) - log_gamma(lo));
}

double frac_bracket(int n, double alpha) { return caputo_power_coeff(n, alpha); }

double caputo(const FunctionHandle& f, double alpha, double x, double h, Warnings* warnings) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("caputo: alpha must lie in (0, 2)");
  if (!(x > 0.0)) throw DomainError("caputo: x must be positive");
  if (!(h > 0.0)) throw DomainError("caputo: step h must be positive");
  const Interval window{0.0, x};
  if (alpha == 1.0) return first_derivative(f, x, kFirstDerivativeStep, window).real();
  if (warnings != nullptr && h > x / 16.0) {
    warnings->push_back("caputo: step h = " + format_number(h) +
                        " under-resolves the singular weight (h > x/16)");
  }
  const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(x / h - 1e-9)));
  const double step = x / static_cast<double>(m);
  std::vector<double> g(m + 1);
  if (alpha < 1.0) {
    for (std::size_t j = 0; j <= m; ++j) g[j] = f.real(j * step);
    return l1_sum(g, step, alpha);
  }
  const double fd = std::min(kFirstDerivativeStep, x / 8.0);
  for (std::size_t j = 0; j <= m; ++j) {
    g[j] = first_derivative(f, std::min(j * step, x), fd, window).real();
  }
  return l1_sum(g, step, alpha - 1.0);
}

double riesz(const FunctionHandle& f, double alpha, double x, double cutoff, double h,
             Warnings* warnings) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("riesz: alpha must lie in (0, 2)");
  check_window(cutoff, h, "riesz");
  const double fx = f.real(x);
  const double f2 = (f.real(x + h) - 2.0 * fx + f.real(x - h)) / (h * h);
  const double head = f2 * std::pow(h, 2.0 - alpha) / (2.0 - alpha);
  auto kernel = [&](double s, double& max_abs) {
    const double up = f.real(x + s);
    const double down = f.real(x - s);
    max_abs = std::max({max_abs, std::abs(up), std::abs(down), std::abs(fx)});
    return up - 2.0 * fx + down;
  };
  const TailQuadrature tail = tail_integral(kernel, alpha, h, cutoff);
  check_decay(f, x, cutoff, tail.max_abs, warnings, "riesz");
  return gamma(1.0 + alpha) * std::sin(kPi * alpha / 2.0) / kPi * (head + tail.integral);
}

double feller(const FunctionHandle& f, double alpha, double x, double cutoff, double h,
              Warnings* warnings) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("feller: alpha must lie in [0, 1)");
  check_window(cutoff, h, "feller");
  const double f1 = (f.real(x + h) - f.real(x - h)) / (2.0 * h);
  const double head = 2.0 * f1 * std::pow(h, 1.0 - alpha) / (1.0 - alpha);
  auto kernel = [&](double s, double& max_abs) {
    const double up = f.real(x + s);
    const double down = f.real(x - s);
    max_abs = std::max({max_abs, std::abs(up), std::abs(down)});
    return up - down;
  };
  const TailQuadrature tail = tail_integral(kernel, alpha, h, cutoff);
  check_decay(f, x, cutoff, tail.max_abs, warnings, "feller");
  return gamma(1.0 + alpha) * std::cos(kPi * alpha / 2.0) / kPi * (head + tail.integral);
}

double mittag_leffler(double alpha, double z, double tol) {
  if (!(alpha > 0.0)) throw DomainError("mittag_leffler: alpha must be positive");
  if (!(z >= 0.0)) throw DomainError("mittag_leffler: z must be >= 0");
  if (z == 0.0) return 1.0;
  const double log_z = std::log(z);
  double sum = 1.0;
  double previous = 1.0;
  for (int k = 1; k < detail::kMaxSeriesTerms; ++k) {
    const double term = std::exp(alpha * k * log_z - log_gamma(1.0 + alpha * k));
    sum += term;
    if (term <= previous && detail::term_negligible(term, sum, tol)) return sum;
    previous = term;
  }
  throw ConvergenceError("mittag_leffler: series did not converge in 500 terms");
}

double mrl_rho(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("mrl_rho: alpha must lie in (0, 1]");
  const double g = gamma(2.0 - alpha);
  return gamma(1.0 + alpha) * g * g;
}

}  // namespace deforma::fractional
