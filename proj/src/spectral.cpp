#include "deforma/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "deforma/dcalc.hpp"
#include "deforma/errors.hpp"
#include "deforma/qcalc.hpp"
#include "deforma/special.hpp"

namespace deforma::spectral {
namespace {

void require_nmax(int nmax, const char* who) {
  if (nmax < 0) throw DomainError(std::string(who) + ": nmax must be >= 0");
}

double wkb_ratio(double alpha) {
  return alpha * gamma((1.0 + alpha) / (2.0 * alpha)) / gamma(1.0 / (2.0 * alpha));
}

void require_wkb_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("wkb_energies: alpha must lie in (0, 2]");
}

}  // namespace

const char* to_string(SpectrumMethod method) {
  switch (method) {
    case SpectrumMethod::exact_ladder: return "exact_ladder";
    case SpectrumMethod::wkb: return "wkb";
    case SpectrumMethod::numeric_grid: return "numeric_grid";
    case SpectrumMethod::q_exact: return "q_exact";
  }
  return "exact_ladder";
}

SpectrumResult q_oscillator_energies(double q, int nmax) {
  require_nmax(nmax, "q_oscillator_energies");
  qcalc::require_deformation(q, "q_oscillator_energies");
  SpectrumResult out{{}, SpectrumMethod::q_exact, {{"q", format_number(q)}}};
  for (int n = 0; n <= nmax; ++n) {
    out.energies.push_back(0.5 * (qcalc::q_bracket(n, q) + qcalc::q_bracket(n + 1, q)));
  }
  return out;
}

double wkb_energy(int n, double alpha) {
  require_wkb_alpha(alpha);
  return std::pow(0.5 + n, alpha) * std::pow(kPi, alpha / 2.0) *
         std::pow(wkb_ratio(alpha), alpha);
}

double wkb_energy_unexponentiated(int n, double alpha) {
  require_wkb_alpha(alpha);
  return std::pow(0.5 + n, alpha) * std::pow(kPi, alpha / 2.0) * wkb_ratio(alpha);
}

SpectrumResult wkb_energies(double alpha, int nmax) {
  require_nmax(nmax, "wkb_energies");
  require_wkb_alpha(alpha);
  SpectrumResult out{{}, SpectrumMethod::wkb, {{"alpha", format_number(alpha)}}};
  for (int n = 0; n <= nmax; ++n) out.energies.push_back(wkb_energy(n, alpha));
  return out;
}

Eigen::MatrixXd riesz_matrix(double alpha, double L, int N) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("riesz_matrix: alpha must lie in (0, 1]");
  if (!(L > 0.0)) throw DomainError("riesz_matrix: L must be positive");
  if (N < 8 || N > 1000) throw DomainError("riesz_matrix: N must lie in [8, 1000]");
  const double h = 2.0 * L / (N + 1);
  const double norm = std::sqrt(2.0 / (N + 1));
  Eigen::MatrixXd V(N, N);
  Eigen::VectorXd lambda(N);
  for (int k = 1; k <= N; ++k) {
    const double s = std::sin(k * kPi / (2.0 * (N + 1)));
    lambda(k - 1) = std::pow(4.0 / (h * h) * s * s, alpha / 2.0);
    for (int j = 1; j <= N; ++j) V(j - 1, k - 1) = norm * std::sin(j * k * kPi / (N + 1));
  }
  return -(V * lambda.asDiagonal() * V.transpose());
}

SpectrumResult fractional_oscillator_numeric(double alpha, double L, int N, int k) {
  const Eigen::MatrixXd A = riesz_matrix(alpha, L, N);
  if (k < 1 || k > N) throw DomainError("fractional_oscillator_numeric: k must lie in [1, N]");
  const double h = 2.0 * L / (N + 1);
  Eigen::MatrixXd H = 0.5 * (A * A);
  for (int j = 0; j < N; ++j) H(j, j) += 0.5 * std::pow(std::abs(-L + (j + 1) * h), 2.0 * alpha);
  H = 0.5 * (H + H.transpose()).eval();

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("fractional_oscillator_numeric: eigen-solve failed");
  }
  const Eigen::VectorXd ground = solver.eigenvectors().col(0).cwiseAbs();
  const double peak = ground.maxCoeff();
  const auto wide = (ground.array() >= 0.5 * peak).count();
  if (wide < 8) {
    throw RangeError("fractional_oscillator_numeric: grid too coarse (" + std::to_string(wide) +
                     " points above half maximum)");
  }

  SpectrumResult out{{},
                     SpectrumMethod::numeric_grid,
                     {{"alpha", format_number(alpha)},
                      {"L", format_number(L)},
                      {"N", std::to_string(N)},
                      {"k", std::to_string(k)}}};
  for (int n = 0; n < k; ++n) out.energies.push_back(solver.eigenvalues()(n));
  return out;
}

SpectrumResult d_oscillator_energies(double D, int nmax) {
  require_nmax(nmax, "d_oscillator_energies");
  dcalc::require_dimension(D, "d_oscillator_energies");
  SpectrumResult out{{}, SpectrumMethod::exact_ladder, {{"D", format_number(D)}}};
  for (int n = 0; n <= nmax; ++n) {
    out.energies.push_back(0.5 * (dcalc::d_bracket(n, D) + dcalc::d_bracket(n + 1, D)));
  }
  return out;
}

FunctionHandle free_particle_psi(double p, double D) {
  dcalc::require_dimension(D, "free_particle_psi");
  if (p == 0.0 || !std::isfinite(p)) throw DomainError("free_particle_psi: p must be nonzero");
  const double amplitude = std::sqrt(std::pow(std::abs(p), D - 1.0) / (2.0 * dcalc::sigma(D)));
  const double at_origin = amplitude * std::pow(2.0, 1.0 - D / 2.0) / gamma(D / 2.0);
  return FunctionHandle([p, D, amplitude, at_origin](double xi) {
    if (xi == 0.0) return Complex(at_origin, 0.0);
    const double z = std::abs(p * xi);
    const double sgn = (p * xi > 0.0) ? 1.0 : -1.0;
    const double scale = amplitude * std::pow(z, 1.0 - D / 2.0);
    return Complex(scale * bessel_j(D / 2.0 - 1.0, z), scale * sgn * bessel_j(D / 2.0, z));
  });
}

Profile probability_density(double p, double D, const Grid& grid) {
  const FunctionHandle psi = free_particle_psi(p, D);
  std::vector<Complex> values;
  values.reserve(grid.size());
  for (double xi : grid.abscissae()) {
    const double weight = dcalc::integration_weight(D, xi);
    values.emplace_back(weight * std::norm(psi(xi)), 0.0);
  }
  return Profile(grid, std::move(values),
                 {{"kind", "density"}, {"p", format_number(p)}, {"D", format_number(D)}});
}

double uncertainty_bound(double D, Parity parity) {
  dcalc::require_dimension(D, "uncertainty_bound");
  switch (parity) {
    case Parity::even: return D / 2.0;
    case Parity::odd: return (2.0 - D) / 2.0;
    case Parity::none: return 0.5;
  }
  return 0.5;
}

FunctionHandle dunkl_apply(const FunctionHandle& f, double D, bool include_potential) {
  dcalc::require_dimension(D, "dunkl_apply");
  return FunctionHandle(
      [f, D, include_potential](double xi) {
        if (xi == 0.0) throw DomainError("dunkl_apply: undefined at xi = 0");
        const Complex value = f(xi);
        const Complex d1 = first_derivative(f, xi);
        const Complex d2 = second_derivative(f, xi);
        Complex out = -0.5 * (d2 + (D - 1.0) / xi * d1 -
                              (D - 1.0) / (2.0 * xi * xi) * (value - f(-xi)));
        if (include_potential) out += 0.5 * xi * xi * value;
        return out;
      },
      Interval::real_line(), f.parity_hint());
}

}  // namespace deforma::spectral
