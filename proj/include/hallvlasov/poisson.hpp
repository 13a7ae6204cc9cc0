#pragma once

#include <optional>
#include <span>
#include <vector>

namespace hv {

struct PoissonSolution {
  std::vector<double> log_ne;
  std::vector<double> n_e;
  /// Final max-norm of -lambda^2 D2 u + e^u - n_I.
  double residual_norm = 0.0;
  int newton_iters = 0;
};

/// Solves -lambda^2 D2 u + e^u = n_I for u = ln n_e on the cell centres.
///
/// D2 is the three-point second difference closed by ghost reflection
/// (homogeneous Neumann); its rows and columns sum to zero, so at
/// convergence sum n_e dx equals sum n_I dx up to L * newton_tol. Damped
/// Newton with an SPD tridiagonal Jacobian; the initial guess defaults to
/// ln(mean n_I).
///
/// Throws InvalidInput for negative n_I, n_I == 0 everywhere, lambda <= 0;
/// NonConvergence after 100 iterations.
PoissonSolution solve_log_ne(std::span<const double> n_I, double dx, double lambda, double newton_tol,
                             std::optional<std::span<const double>> initial_guess = std::nullopt);

struct TwoSidedBound {
  double min_ne = 0.0;
  double max_ne = 0.0;
  double norm53_nI = 0.0;
  double norm53_ne = 0.0;
  /// min n_e > 0 and ||n_e||_{5/3} <= ||n_I||_{5/3} (1 + 1e-10).
  bool pass = false;
};

TwoSidedBound check_two_sided_bound(const PoissonSolution& sol, std::span<const double> n_I, double dx);

/// lambda^2 / 2 sum (D1 u)^2 dx over interior faces; the wall faces carry
/// zero flux.
double electrostatic_energy(const PoissonSolution& sol, double lambda, double dx);
double electrostatic_energy(std::span<const double> log_ne, double lambda, double dx);

/// sum (n ln n - n + 1) dx evaluated from u = ln n.
double free_energy(std::span<const double> log_ne, double dx);

/// Residual -lambda^2 D2 u + e^u - n_I at every centre.
std::vector<double> poisson_residual(std::span<const double> log_ne, std::span<const double> n_I, double dx,
                                     double lambda);

}  // namespace hv
