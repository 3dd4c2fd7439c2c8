#pragma once

#include <Eigen/Dense>
#include <vector>

#include "deforma/function.hpp"
#include "deforma/grid.hpp"

namespace deforma::spectral {

enum class SpectrumMethod { exact_ladder, wkb, numeric_grid, q_exact };
const char* to_string(SpectrumMethod method);

struct SpectrumResult {
  std::vector<double> energies;  // indexed by n
  SpectrumMethod method = SpectrumMethod::exact_ladder;
  Meta params;
};

/// E(n) = ([n]_q + [n+1]_q) / 2, n = 0..nmax.
SpectrumResult q_oscillator_energies(double q, int nmax);

/// E(n, a) = (1/2 + n)^a pi^{a/2} [a Gamma((1+a)/(2a)) / Gamma(1/(2a))]^a, 0 < a <= 2.
SpectrumResult wkb_energies(double alpha, int nmax);
double wkb_energy(int n, double alpha);
/// The same expression with the bracketed Gamma ratio left unexponentiated.
/// Only used to report how far that reading is from wkb_energy.
double wkb_energy_unexponentiated(int n, double alpha);

/// Riesz derivative of order alpha in (0, 1] on the N interior points of
/// [-L, L] with f = 0 outside: -V diag(lambda^{alpha/2}) V^T, where lambda
/// and V are the eigenpairs of the three-point Dirichlet Laplacian -d^2.
/// Its square is the order-2alpha operator (-d^2)^alpha.
Eigen::MatrixXd riesz_matrix(double alpha, double L, int N);

/// Lowest k eigenvalues of (1/2)[A^2 + diag(|xi|^{2 alpha})] with A = riesz_matrix.
/// 0 < alpha <= 1, 8 <= N <= 1000. RangeError ("grid too coarse") when the
/// ground state spans fewer than 8 grid points above half its maximum.
SpectrumResult fractional_oscillator_numeric(double alpha, double L, int N, int k);

/// E(n) = ([n]_D + [n+1]_D) / 2 = n + D/2.
SpectrumResult d_oscillator_energies(double D, int nmax);

/// psi_p(xi) = A_p |p xi|^{1-D/2} [J_{D/2-1}(|p xi|) + i sgn(p xi) J_{D/2}(|p xi|)],
/// A_p = sqrt(|p|^{D-1} / (2 sigma(D))). The value at xi = 0 is the limit
/// A_p 2^{1-D/2} / Gamma(D/2).
FunctionHandle free_particle_psi(double p, double D);

/// rho_p = (sigma(D)/2) |xi|^{D-1} |psi_p|^2 sampled on the grid (+inf at
/// xi = 0 when D < 1).
Profile probability_density(double p, double D, const Grid& grid);

/// D/2 for even states, (2-D)/2 for odd, 1/2 for mixed (Parity::none).
double uncertainty_bound(double D, Parity parity);

/// (H f)(xi) = -1/2 [f'' + (D-1)/xi f' - (D-1)/(2 xi^2) (f(xi) - f(-xi))]
///             (+ xi^2 f / 2 with the potential). Throws at xi = 0.
FunctionHandle dunkl_apply(const FunctionHandle& f, double D, bool include_potential);

}  // namespace deforma::spectral
