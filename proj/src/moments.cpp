#include "hallvlasov/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hallvlasov/errors.hpp"
#include "hallvlasov/summation.hpp"

namespace hv {

double MomentSet::kinetic_energy(double dx) const { return compensated_sum(E_I_density) * dx; }
double MomentSet::mass(double dx) const { return compensated_sum(n_I) * dx; }

MomentSet compute_moments(const DistributionFunction& f) {
  const PhaseSpaceGrid& g = f.grid();
  const int Nx = g.Nx(), Nv = g.Nv();
  std::vector<double> v(Nv), v2(Nv);
  for (int a = 0; a < Nv; ++a) {
    v[a] = g.v(a);
    v2[a] = v[a] * v[a];
  }
  MomentSet m;
  m.n_I.resize(Nx);
  m.nu_I.resize(Nx);
  m.E_I_density.resize(Nx);
  const double w = g.dv3();
  for (int i = 0; i < Nx; ++i) {
    CompensatedSum n, px, py, pz, e;
    for (int a = 0; a < Nv; ++a) {
      for (int b = 0; b < Nv; ++b) {
        const double* row = f.values().data() + g.index(i, a, b, 0);
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (int c = 0; c < Nv; ++c) {
          s0 += row[c];
          s1 += row[c] * v[c];
          s2 += row[c] * v2[c];
        }
        n.add(s0);
        px.add(v[a] * s0);
        py.add(v[b] * s0);
        pz.add(s1);
        e.add((v2[a] + v2[b]) * s0 + s2);
      }
    }
    m.n_I[i] = n.value() * w;
    m.nu_I[i] = {px.value() * w, py.value() * w, pz.value() * w};
    m.E_I_density[i] = 0.5 * e.value() * w;
  }
  return m;
}

double lp_norm(const DistributionFunction& f, double p) {
  if (!(p >= 1.0)) throw InvalidInput("lp_norm: p must be >= 1");
  const auto vals = f.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : vals) m = std::max(m, std::abs(x));
    return m;
  }
  const PhaseSpaceGrid& g = f.grid();
  CompensatedSum s;
  if (p == 1.0) {
    for (double x : vals) s.add(std::abs(x));
    return s.value() * g.dx() * g.dv3();
  }
  // Scale by the largest entry so tiny or huge values neither underflow nor overflow.
  double m = 0.0;
  for (double x : vals) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  for (double x : vals) s.add(std::pow(std::abs(x) / m, p));
  return m * std::pow(s.value() * g.dx() * g.dv3(), 1.0 / p);
}

double profile_lp_norm(std::span<const double> values, double dx, double p) {
  if (!(p >= 1.0)) throw InvalidInput("profile_lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : values) m = std::max(m, std::abs(x));
    return m;
  }
  CompensatedSum s;
  for (double x : values) s.add(std::pow(std::abs(x), p));
  return std::pow(s.value() * dx, 1.0 / p);
}

MomentBoundConstants moment_bound_constants() {
  const double pi = std::numbers::pi;
  const double C = std::pow(4.0 * pi / 3.0, 0.4) * (std::pow(2.0 / 3.0, 0.6) + std::pow(1.5, 0.4));
  const double Cp = std::pow(pi, 0.2) * (std::pow(4.0, -0.8) + std::pow(4.0, 0.2));
  return {C, Cp};
}

MomentInequalityReport check_moment_inequalities(const DistributionFunction& f) {
  const PhaseSpaceGrid& g = f.grid();
  const MomentSet m = compute_moments(f);
  const auto [C, Cp] = moment_bound_constants();
  const double finf = lp_norm(f, std::numeric_limits<double>::infinity());
  // int int f |v|^2 = 2 E_I
  const double w = 2.0 * m.kinetic_energy(g.dx());

  std::vector<double> flux(g.Nx());
  for (int i = 0; i < g.Nx(); ++i) flux[i] = norm(m.nu_I[i]);

  MomentInequalityReport r;
  r.lhs53 = profile_lp_norm(m.n_I, g.dx(), 5.0 / 3.0);
  r.rhs53 = C * std::pow(finf, 0.4) * std::pow(w, 0.6);
  r.lhs54 = profile_lp_norm(flux, g.dx(), 1.25);
  r.rhs54 = Cp * std::pow(finf, 0.2) * std::pow(w, 0.8);
  r.pass = r.lhs53 <= r.rhs53 * (1.0 + 1e-12) && r.lhs54 <= r.rhs54 * (1.0 + 1e-12);
  return r;
}

}  // namespace hv
