#include "hallvlasov/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "hallvlasov/errors.hpp"
#include "hallvlasov/poisson.hpp"
#include "hallvlasov/summation.hpp"

namespace hv {

namespace {

double face_energy(std::span<const double> By, std::span<const double> Bz, std::span<const double> y0,
                   std::span<const double> z0, double dx) {
  const std::size_t n = By.size();
  CompensatedSum s;
  for (std::size_t f = 0; f < n; ++f) {
    const double y = By[f] - (y0.empty() ? 0.0 : y0[f]);
    const double z = Bz[f] - (z0.empty() ? 0.0 : z0[f]);
    const double w = (f == 0 || f + 1 == n) ? 0.5 : 1.0;
    s.add(w * (y * y + z * z));
  }
  return 0.5 * s.value() * dx;
}

/// Centred derivative with reflected ghosts; `odd` flips the ghost sign.
double centred_derivative(std::span<const double> q, std::size_t i, double dx, bool odd) {
  const std::size_t n = q.size();
  const double s = odd ? -1.0 : 1.0;
  const double left = i == 0 ? s * q[0] : q[i - 1];
  const double right = i + 1 == n ? s * q[n - 1] : q[i + 1];
  return (right - left) / (2.0 * dx);
}

/// Spatial part of the momentum balance at every centre.
std::vector<Vec3> momentum_forces(const SimulationState& s, const RunConfig& config, const MomentSet& m) {
  const PhaseSpaceGrid& g = s.f.grid();
  const int Nx = g.Nx(), Nv = g.Nv();
  std::vector<double> pxx(Nx), pxy(Nx), pxz(Nx);
  const double w = g.dv3();
  for (int i = 0; i < Nx; ++i) {
    CompensatedSum sxx, sxy, sxz;
    for (int a = 0; a < Nv; ++a) {
      const double vx = g.v(a);
      for (int b = 0; b < Nv; ++b) {
        const double vy = g.v(b);
        double r0 = 0.0, r1 = 0.0;
        for (int c = 0; c < Nv; ++c) {
          const double fv = s.f(i, a, b, c);
          r0 += fv;
          r1 += fv * g.v(c);
        }
        sxx.add(vx * vx * r0);
        sxy.add(vx * vy * r0);
        sxz.add(vx * r1);
      }
    }
    pxx[i] = sxx.value() * w;
    pxy[i] = sxy.value() * w;
    pxz[i] = sxz.value() * w;
  }
  const std::vector<Vec3> B = s.fields.centered_B();
  const double T_e = config.T_e;
  std::vector<Vec3> G(Nx);
  for (int i = 0; i < Nx; ++i) {
    const double ne = s.fields.n_e[i];
    const Vec3 flux{centred_derivative(pxx, i, g.dx(), false), centred_derivative(pxy, i, g.dx(), true),
                    centred_derivative(pxz, i, g.dx(), true)};
    const Vec3 grad{T_e * centred_derivative(s.fields.n_e, i, g.dx(), false), 0.0, 0.0};
    const Vec3 J{0.0, s.fields.J_y[i], s.fields.J_z[i]};
    const Vec3 lhs = flux + grad - cross(J, B[i]);
    const Vec3 rhs = ((ne - m.n_I[i]) / ne) * (grad + cross(m.nu_I[i] - J, B[i]));
    G[i] = lhs - rhs;
  }
  return G;
}

}  // namespace

double magnetic_energy(const FieldState& fields, double dx) {
  const double L = dx * static_cast<double>(fields.By.size() - 1);
  return face_energy(fields.By, fields.Bz, {}, {}, dx) + 0.5 * fields.Bx0 * fields.Bx0 * L;
}

double perturbed_magnetic_energy(const FieldState& fields, const ImposedField& imposed, double dx) {
  if (!imposed.active) return magnetic_energy(fields, dx);
  const double L = dx * static_cast<double>(fields.By.size() - 1);
  const double bx = fields.Bx0 - imposed.Bx0;
  return face_energy(fields.By, fields.Bz, imposed.By, imposed.Bz, dx) + 0.5 * bx * bx * L;
}

EnergyTerms compute_energy(const SimulationState& state, const RunConfig& config, const MomentSet& moments) {
  const double dx = state.f.grid().dx();
  EnergyTerms e;
  e.E_I = moments.kinetic_energy(dx);
  e.E_m = magnetic_energy(state.fields, dx);
  e.E_es = electrostatic_energy(state.fields.log_ne, config.lambda, dx);
  e.E_free = free_energy(state.fields.log_ne, dx);
  const double electron = config.T_e * (e.E_es + e.E_free);
  e.E_tot = e.E_I + e.E_m + electron;
  e.E_m_pert = perturbed_magnetic_energy(state.fields, config.imposed, dx);
  e.E_tot_pert = e.E_I + e.E_m_pert + electron;
  return e;
}

EnergyTerms compute_energy(const SimulationState& state, const RunConfig& config) {
  return compute_energy(state, config, compute_moments(state.f));
}

const LedgerRow& compute_ledger(SimulationState& state, const RunConfig& config, const StepBalance& balance) {
  const EnergyTerms e = compute_energy(state, config);
  LedgerRow row;
  row.t = state.t;
  row.E_I = e.E_I;
  row.E_m = e.E_m;
  row.E_es = e.E_es;
  row.E_free = e.E_free;
  row.E_tot = e.E_tot;
  row.E_m_pert = config.imposed.active ? e.E_m_pert : 0.0;
  row.E_tot_pert = config.imposed.active ? e.E_tot_pert : 0.0;
  EnergyLedger& ledger = state.ledger;
  if (!ledger.empty()) {
    const LedgerRow& prev = ledger.last();
    row.dissipation_step = balance.dissipation;
    row.truncation_step = balance.truncation;
    row.residual = dissipation_residual(prev, row);
    ledger.D_cum += balance.dissipation;
    if (config.imposed.active && balance.dt > 0.0) {
      row.S = balance.source / balance.dt;
      row.balance_residual =
          (row.E_tot_pert - prev.E_tot_pert + balance.dissipation + balance.truncation) / balance.dt - row.S;
    }
  }
  ledger.history.push_back(row);
  return ledger.last();
}

double dissipation_residual(const LedgerRow& previous, const LedgerRow& next) {
  return (next.E_tot - previous.E_tot) + next.dissipation_step + next.truncation_step;
}

PerturbedLedger compute_perturbed_source(const SimulationState& state, const RunConfig& config) {
  const PhaseSpaceGrid& g = state.f.grid();
  const ImposedField& imp = config.imposed;
  const EnergyTerms e = compute_energy(state, config);
  PerturbedLedger p;
  p.E_m_pert = e.E_m_pert;
  p.E_tot_pert = e.E_tot_pert;
  if (!imp.active) return p;
  p.J_imp_inf = imp.J_inf();

  bool any = false;
  for (int i = 0; i < g.Nx(); ++i) any = any || imp.J_y[i] != 0.0 || imp.J_z[i] != 0.0;
  if (!any) return p;

  const MomentSet m = compute_moments(state.f);
  const std::vector<Vec3> B = state.fields.centered_B();
  CompensatedSum s1, s2, s3;
  for (int i = 0; i < g.Nx(); ++i) {
    const Vec3 Ji{0.0, imp.J_y[i], imp.J_z[i]};
    const Vec3 Jp = Vec3{0.0, state.fields.J_y[i], state.fields.J_z[i]} - Ji;
    const Vec3 jb = cross(Ji, B[i]) / state.fields.n_e[i];
    s1.add(-config.eta[i] * dot(Ji, Jp));
    s2.add(-dot(jb, Jp));
    s3.add(dot(jb, m.nu_I[i]));
  }
  p.S_resistive = s1.value() * g.dx();
  p.S_hall = s2.value() * g.dx();
  p.S_flow = s3.value() * g.dx();
  p.S = p.S_resistive + p.S_hall + p.S_flow;
  return p;
}

double horizon_estimate(double J_imp_inf, double C_data) {
  if (!(C_data > 0.0)) throw InvalidInput("horizon_estimate: C_data must be > 0");
  if (!(J_imp_inf >= 0.0)) throw InvalidInput("horizon_estimate: ||J_imp||_inf must be >= 0");
  if (J_imp_inf == 0.0) return std::numeric_limits<double>::infinity();
  return std::log1p(C_data / J_imp_inf);
}

double horizon_proof_form(double J_imp_inf, double sigma, double tau) {
  if (!(sigma > 0.0) || !(tau > 0.0)) throw InvalidInput("horizon_proof_form: sigma and tau must be > 0");
  if (!(J_imp_inf >= 0.0)) throw InvalidInput("horizon_proof_form: ||J_imp||_inf must be >= 0");
  if (J_imp_inf == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 / (3.0 * sigma) * std::log1p(3.0 * tau / (10.0 * J_imp_inf));
}

Mat3 pressure_tensor(const DistributionFunction& f, int i, const MomentSet& moments) {
  const PhaseSpaceGrid& g = f.grid();
  const int Nv = g.Nv();
  const double n = moments.n_I[i];
  const Vec3 u = n > 0.0 ? moments.nu_I[i] / n : Vec3{0.0, 0.0, 0.0};
  std::array<std::array<CompensatedSum, 3>, 3> acc{};
  for (int a = 0; a < Nv; ++a)
    for (int b = 0; b < Nv; ++b)
      for (int c = 0; c < Nv; ++c) {
        const double fv = f(i, a, b, c);
        if (fv == 0.0) continue;
        const Vec3 w{g.v(a) - u[0], g.v(b) - u[1], g.v(c) - u[2]};
        for (int p = 0; p < 3; ++p)
          for (int q = p; q < 3; ++q) acc[p][q].add(fv * w[p] * w[q]);
      }
  Mat3 P{};
  for (int p = 0; p < 3; ++p)
    for (int q = p; q < 3; ++q) P[p][q] = P[q][p] = acc[p][q].value() * g.dv3();
  return P;
}

std::vector<Vec3> momentum_residual(const SimulationState& before, const SimulationState& after,
                                    const RunConfig& config, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("momentum_residual: dt must be > 0");
  const MomentSet m0 = compute_moments(before.f);
  const MomentSet m1 = compute_moments(after.f);
  const std::vector<Vec3> G0 = momentum_forces(before, config, m0);
  const std::vector<Vec3> G1 = momentum_forces(after, config, m1);
  std::vector<Vec3> r(G0.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (m1.nu_I[i] - m0.nu_I[i]) / dt + 0.5 * (G0[i] + G1[i]);
  return r;
}

}  // namespace hv
