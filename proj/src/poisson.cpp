#include "hallvlasov/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hallvlasov/errors.hpp"
#include "hallvlasov/moments.hpp"
#include "hallvlasov/summation.hpp"
#include "lapack.hpp"

namespace hv {

namespace {

constexpr int kMaxNewtonIters = 100;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return std::isfinite(m) ? m : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<double> poisson_residual(std::span<const double> u, std::span<const double> n_I, double dx,
                                     double lambda) {
  const std::size_t n = u.size();
  const double k = lambda * lambda / (dx * dx);
  std::vector<double> F(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? u[0] : u[i - 1];
    const double right = i + 1 == n ? u[n - 1] : u[i + 1];
    // -lambda^2 D2 u written as differences so equal neighbours cancel exactly
    F[i] = k * ((u[i] - left) + (u[i] - right)) + std::exp(u[i]) - n_I[i];
  }
  return F;
}

PoissonSolution solve_log_ne(std::span<const double> n_I, double dx, double lambda, double newton_tol,
                             std::optional<std::span<const double>> initial_guess) {
  const int n = static_cast<int>(n_I.size());
  if (n < 1) throw InvalidInput("solve_log_ne: empty density");
  if (!(lambda > 0.0)) throw InvalidInput("solve_log_ne: lambda must be > 0");
  if (!(dx > 0.0)) throw InvalidInput("solve_log_ne: dx must be > 0");
  CompensatedSum total;
  for (double x : n_I) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidInput("solve_log_ne: n_I must be finite and >= 0");
    total.add(x);
  }
  if (!(total.value() > 0.0)) throw InvalidInput("solve_log_ne: n_I vanishes identically (no neutral solution)");

  PoissonSolution sol;
  if (initial_guess && static_cast<int>(initial_guess->size()) == n) {
    sol.log_ne.assign(initial_guess->begin(), initial_guess->end());
  } else {
    sol.log_ne.assign(n, std::log(total.value() / n));
  }

  const double k = lambda * lambda / (dx * dx);
  std::vector<double> F = poisson_residual(sol.log_ne, n_I, dx, lambda);
  double fnorm = max_abs(F);
  std::vector<double> diag(n), off(std::max(n - 1, 1)), step(n), trial(n);
  int iters = 0;
  while (fnorm > newton_tol) {
    if (iters >= kMaxNewtonIters)
      throw NonConvergence("solve_log_ne: no convergence after " + std::to_string(kMaxNewtonIters) +
                           " Newton iterations (residual " + std::to_string(fnorm) + ")");
    for (int i = 0; i < n; ++i) {
      const int neighbours = (i > 0) + (i + 1 < n);
      diag[i] = k * neighbours + std::exp(sol.log_ne[i]);
      step[i] = -F[i];
    }
    std::fill(off.begin(), off.end(), -k);
    int nrhs = 1, info = 0;
    dptsv_(&n, &nrhs, diag.data(), off.data(), step.data(), &n, &info);
    if (info != 0) throw NonConvergence("solve_log_ne: Jacobian factorisation failed");

    double alpha = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 40; ++halvings) {
      for (int i = 0; i < n; ++i) trial[i] = sol.log_ne[i] + alpha * step[i];
      std::vector<double> Ft = poisson_residual(trial, n_I, dx, lambda);
      const double tn = max_abs(Ft);
      if (tn < fnorm) {
        sol.log_ne.swap(trial);
        F.swap(Ft);
        fnorm = tn;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    ++iters;
    if (!accepted)
      throw NonConvergence("solve_log_ne: damped Newton stalled at residual " + std::to_string(fnorm));
  }
  sol.residual_norm = fnorm;
  sol.newton_iters = iters;
  sol.n_e.resize(n);
  for (int i = 0; i < n; ++i) sol.n_e[i] = std::exp(sol.log_ne[i]);
  return sol;
}

TwoSidedBound check_two_sided_bound(const PoissonSolution& sol, std::span<const double> n_I, double dx) {
  TwoSidedBound b;
  b.min_ne = *std::min_element(sol.n_e.begin(), sol.n_e.end());
  b.max_ne = *std::max_element(sol.n_e.begin(), sol.n_e.end());
  b.norm53_nI = profile_lp_norm(n_I, dx, 5.0 / 3.0);
  b.norm53_ne = profile_lp_norm(sol.n_e, dx, 5.0 / 3.0);
  b.pass = b.min_ne > 0.0 && b.norm53_ne <= b.norm53_nI * (1.0 + 1e-10);
  return b;
}

double electrostatic_energy(std::span<const double> u, double lambda, double dx) {
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double d = u[i + 1] - u[i];
    s.add(d * d);
  }
  return 0.5 * lambda * lambda * s.value() / dx;
}

double electrostatic_energy(const PoissonSolution& sol, double lambda, double dx) {
  return electrostatic_energy(sol.log_ne, lambda, dx);
}

double free_energy(std::span<const double> u, double dx) {
  CompensatedSum s;
  // n ln n - n + 1 = u e^u - (e^u - 1), nonnegative with a double zero at u = 0
  for (double x : u) s.add(std::max(0.0, x * std::exp(x) - std::expm1(x)));
  return s.value() * dx;
}

}  // namespace hv
