#pragma once

// Reference computations for the tests, written directly from the
// definitions with long-double accumulation and no library helpers.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hallvlasov/grid.hpp"

namespace oracle {

inline long double mass(const hv::DistributionFunction& f) {
  const hv::PhaseSpaceGrid& g = f.grid();
  long double s = 0.0L;
  for (double v : f.values()) s += v;
  return s * g.dx() * g.dv3();
}

inline std::vector<double> density(const hv::DistributionFunction& f) {
  const hv::PhaseSpaceGrid& g = f.grid();
  std::vector<double> n(g.Nx());
  const std::size_t nv = g.velocity_size();
  for (int i = 0; i < g.Nx(); ++i) {
    long double s = 0.0L;
    const auto slab = f.slab(i);
    for (std::size_t k = 0; k < nv; ++k) s += slab[k];
    n[i] = static_cast<double>(s * g.dv3());
  }
  return n;
}

inline std::vector<hv::Vec3> momentum(const hv::DistributionFunction& f) {
  const hv::PhaseSpaceGrid& g = f.grid();
  std::vector<hv::Vec3> m(g.Nx());
  for (int i = 0; i < g.Nx(); ++i) {
    long double s[3] = {0.0L, 0.0L, 0.0L};
    for (int a = 0; a < g.Nv(); ++a)
      for (int b = 0; b < g.Nv(); ++b)
        for (int c = 0; c < g.Nv(); ++c) {
          const long double v = f(i, a, b, c);
          s[0] += v * g.v(a);
          s[1] += v * g.v(b);
          s[2] += v * g.v(c);
        }
    m[i] = {static_cast<double>(s[0] * g.dv3()), static_cast<double>(s[1] * g.dv3()),
            static_cast<double>(s[2] * g.dv3())};
  }
  return m;
}

inline long double kinetic_energy(const hv::DistributionFunction& f) {
  const hv::PhaseSpaceGrid& g = f.grid();
  long double s = 0.0L;
  for (int i = 0; i < g.Nx(); ++i)
    for (int a = 0; a < g.Nv(); ++a)
      for (int b = 0; b < g.Nv(); ++b)
        for (int c = 0; c < g.Nv(); ++c) {
          const long double v2 = g.v(a) * g.v(a) + g.v(b) * g.v(b) + g.v(c) * g.v(c);
          s += f(i, a, b, c) * v2;
        }
  return 0.5L * s * g.dx() * g.dv3();
}

/// 1/2 sum over faces (walls at half weight) of |B_t - B0_t|^2 dx + (Bx0 - B0x)^2 L / 2.
inline long double magnetic_energy(const std::vector<double>& By, const std::vector<double>& Bz, double Bx0,
                                   double dx, const std::vector<double>* By0 = nullptr,
                                   const std::vector<double>* Bz0 = nullptr, double Bx00 = 0.0) {
  const std::size_t n = By.size();
  long double s = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    const long double y = By[k] - (By0 ? (*By0)[k] : 0.0);
    const long double z = Bz[k] - (Bz0 ? (*Bz0)[k] : 0.0);
    s += ((k == 0 || k + 1 == n) ? 0.5L : 1.0L) * (y * y + z * z);
  }
  const long double L = dx * static_cast<double>(n - 1);
  const long double bx = Bx0 - Bx00;
  return 0.5L * s * dx + 0.5L * bx * bx * L;
}

/// lambda^2 / 2 sum over interior faces of ((u_{i+1} - u_i) / dx)^2 dx.
inline long double electrostatic_energy(const std::vector<double>& u, double lambda, double dx) {
  long double s = 0.0L;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const long double d = (static_cast<long double>(u[i + 1]) - u[i]) / dx;
    s += d * d;
  }
  return 0.5L * lambda * lambda * s * dx;
}

/// sum (n ln n - n + 1) dx with n = e^u.
inline long double free_energy(const std::vector<double>& u, double dx) {
  long double s = 0.0L;
  for (double x : u) {
    const long double n = std::exp(static_cast<long double>(x));
    s += n * x - n + 1.0L;
  }
  return s * dx;
}

/// Total energy with the electron terms weighted by T_e; with `imposed`
/// the magnetic part is measured against the background.
inline long double total_energy(const hv::SimulationState& s, const hv::RunConfig& c, bool perturbed = false) {
  const double dx = c.grid.dx();
  const long double Em =
      perturbed ? magnetic_energy(s.fields.By, s.fields.Bz, s.fields.Bx0, dx, &c.imposed.By, &c.imposed.Bz,
                                  c.imposed.Bx0)
                : magnetic_energy(s.fields.By, s.fields.Bz, s.fields.Bx0, dx);
  return kinetic_energy(s.f) + Em +
         c.T_e * (electrostatic_energy(s.fields.log_ne, c.lambda, dx) + free_energy(s.fields.log_ne, dx));
}

/// Closed forms of the interpolation constants.
inline double C53() {
  const double pi = std::numbers::pi;
  return std::pow(4.0 * pi / 3.0, 0.4) * (std::pow(2.0 / 3.0, 0.6) + std::pow(1.5, 0.4));
}
inline double C54() {
  const double pi = std::numbers::pi;
  return std::pow(pi, 0.2) * (std::pow(4.0, -0.8) + std::pow(4.0, 0.2));
}

/// Both sides of ||n||_{5/3} <= C ||f||_inf^{2/5} (int f |v|^2)^{3/5} and
/// ||nu||_{5/4} <= C' ||f||_inf^{1/5} (int f |v|^2)^{4/5}.
struct InequalitySides {
  double lhs53, rhs53, lhs54, rhs54;
};

inline InequalitySides inequality_sides(const hv::DistributionFunction& f) {
  const hv::PhaseSpaceGrid& g = f.grid();
  const std::vector<double> n = density(f);
  const std::vector<hv::Vec3> nu = momentum(f);
  long double s53 = 0.0L, s54 = 0.0L, w = 0.0L, fmax = 0.0L;
  for (int i = 0; i < g.Nx(); ++i) {
    s53 += std::pow(static_cast<long double>(n[i]), 5.0L / 3.0L);
    s54 += std::pow(static_cast<long double>(hv::norm(nu[i])), 1.25L);
  }
  for (double v : f.values()) fmax = std::max<long double>(fmax, v);
  w = 2.0L * kinetic_energy(f);
  const double dx = g.dx();
  InequalitySides r;
  r.lhs53 = static_cast<double>(std::pow(s53 * dx, 0.6L));
  r.lhs54 = static_cast<double>(std::pow(s54 * dx, 0.8L));
  r.rhs53 = C53() * static_cast<double>(std::pow(fmax, 0.4L) * std::pow(w, 0.6L));
  r.rhs54 = C54() * static_cast<double>(std::pow(fmax, 0.2L) * std::pow(w, 0.8L));
  return r;
}

}  // namespace oracle
