#include "hallvlasov/splitting.hpp"

#include <chrono>
#include <cmath>

#include "hallvlasov/errors.hpp"
#include "hallvlasov/moments.hpp"
#include "hallvlasov/poisson.hpp"
#include "hallvlasov/vlasov.hpp"

namespace hv {

namespace {

RemapKernel kernel_for(const DistributionFunction& f, const RunConfig& config) {
  RemapKernel k = config.remap;
  if (k.limiter == Limiter::Bounded && std::isinf(k.upper_bound)) k.upper_bound = f.max();
  return k;
}

void add_loss(StageReport& r, const TransportReport& t) {
  r.lost_mass += t.lost_mass;
  r.lost_energy += t.lost_energy;
}

void solve_electrons(SimulationState& state, const RunConfig& config, std::span<const double> n_I,
                     StageReport& report) {
  const PoissonSolution sol = solve_log_ne(n_I, state.f.grid().dx(), config.lambda, config.newton_tol,
                                           std::span<const double>(state.fields.log_ne));
  state.fields.log_ne = sol.log_ne;
  state.fields.n_e = sol.n_e;
  report.newton_iters += sol.newton_iters;
}

/// Times a stage and records its energy change when tracing.
template <class Fn>
StageReport traced(const char* name, SimulationState& state, const RunConfig& config, StageTrace* trace, Fn fn) {
  if (trace == nullptr) return fn();
  StageRecord rec;
  rec.name = name;
  rec.before = compute_energy(state, config);
  const auto start = std::chrono::steady_clock::now();
  StageReport r = fn();
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.after = compute_energy(state, config);
  trace->stages.push_back(rec);
  return r;
}

void accumulate(StageReport& total, const StageReport& part) {
  total.dissipation += part.dissipation;
  total.source += part.source;
  total.lost_mass += part.lost_mass;
  total.lost_energy += part.lost_energy;
  total.newton_iters += part.newton_iters;
}

}  // namespace

std::vector<double> transport_dual_gradient(std::span<const double> u, double dx) {
  const int n = static_cast<int>(u.size());
  std::vector<double> G(n, 0.0);
  // Cell j of the unfolded ring and the sign nu_x picks up there.
  auto cell = [n](int j) -> std::pair<int, double> {
    if (j < 0) return {-1 - j, -1.0};
    if (j >= n) return {2 * n - 1 - j, -1.0};
    return {j, 1.0};
  };
  constexpr double w[4] = {-1.0 / 12.0, 7.0 / 12.0, 7.0 / 12.0, -1.0 / 12.0};
  for (int f = 1; f < n; ++f) {
    const double delta = (u[f] - u[f - 1]) / dx;
    for (int k = 0; k < 4; ++k) {
      const auto [i, s] = cell(f - 2 + k);
      G[i] += s * w[k] * delta;
    }
  }
  return G;
}

SimulationState initialize_state(const RunConfig& config, DistributionFunction f, FieldState fields) {
  config.validate();
  const PhaseSpaceGrid& g = config.grid;
  if (!(f.grid() == g)) throw InvalidInput("initialize_state: distribution grid differs from the config grid");
  if (static_cast<int>(fields.By.size()) != g.Nx() + 1 || static_cast<int>(fields.Bz.size()) != g.Nx() + 1)
    throw InvalidInput("initialize_state: By and Bz need Nx + 1 face values");
  // Tangential wall values are boundary data.
  const int Nx = g.Nx();
  const bool imp = config.imposed.active;
  fields.By[0] = imp ? config.imposed.By[0] : 0.0;
  fields.By[Nx] = imp ? config.imposed.By[Nx] : 0.0;
  fields.Bz[0] = imp ? config.imposed.Bz[0] : 0.0;
  fields.Bz[Nx] = imp ? config.imposed.Bz[Nx] : 0.0;
  fields.update_current(g.dx());

  SimulationState s;
  s.f = std::move(f);
  s.fields = std::move(fields);
  const MomentSet m = compute_moments(s.f);
  const PoissonSolution sol = solve_log_ne(m.n_I, g.dx(), config.lambda, config.newton_tol);
  s.fields.log_ne = sol.log_ne;
  s.fields.n_e = sol.n_e;
  s.M.assign(Nx, Vec3{0.0, 0.0, 0.0});
  s.nuI = m.nu_I;
  compute_ledger(s, config);
  return s;
}

StageReport stage_vlasov_poisson(SimulationState& state, const RunConfig& config, double dt) {
  StageReport report;
  const PhaseSpaceGrid& g = state.f.grid();
  const int Nx = g.Nx();
  advect_x(state.f, 0.5 * dt, kernel_for(state.f, config));

  MomentSet m = compute_moments(state.f);
  solve_electrons(state, config, m.n_I, report);
  const std::vector<double> G = transport_dual_gradient(state.fields.log_ne, g.dx());
  std::vector<Vec3> kick(Nx);
  for (int i = 0; i < Nx; ++i) kick[i] = {-config.T_e * G[i] * dt, 0.0, 0.0};
  add_loss(report, shift_v(state.f, kick, kernel_for(state.f, config)));

  advect_x(state.f, 0.5 * dt, kernel_for(state.f, config));
  m = compute_moments(state.f);
  solve_electrons(state, config, m.n_I, report);
  state.nuI = m.nu_I;
  return report;
}

StageReport stage_magnetic_1(SimulationState& state, const RunConfig& config, double dt, Stage1Result* detail,
                             StageTrace* trace) {
  StageReport report;
  const PhaseSpaceGrid& g = state.f.grid();
  const MomentSet m = compute_moments(state.f);
  std::vector<Vec3> B_frozen = state.fields.centered_B();
  const std::vector<double> n_e = state.fields.n_e;

  Stage1Input in;
  in.dx = g.dx();
  in.dt = dt;
  in.theta = config.theta;
  in.linear_tol = config.linear_tol;
  in.By = state.fields.By;
  in.Bz = state.fields.Bz;
  in.imposed = config.imposed.active ? &config.imposed : nullptr;
  in.n_I = m.n_I;
  in.n_e = n_e;
  in.eta = config.eta;
  in.nu_k = m.nu_I;
  in.B_frozen = B_frozen;
  Stage1Result r = solve_stage1(in);
  if (config.splitting == SplittingOrder::Strang) {
    // Freezing B at the stage start makes the Hall term first order; for the
    // symmetric splitting re-solve with B frozen at the predicted midpoint.
    FieldState predicted = state.fields;
    predicted.By = r.By;
    predicted.Bz = r.Bz;
    const std::vector<Vec3> B_end = predicted.centered_B();
    for (int i = 0; i < g.Nx(); ++i) B_frozen[i] = 0.5 * (B_frozen[i] + B_end[i]);
    in.B_frozen = B_frozen;
    r = solve_stage1(in);
  }

  state.fields.By = r.By;
  state.fields.Bz = r.Bz;
  state.fields.update_current(g.dx());
  const std::vector<Vec3> dv = stage1_velocity_shift(r.M, n_e, B_frozen);
  add_loss(report, shift_v(state.f, dv, kernel_for(state.f, config)));
  state.M = r.M;
  state.nuI = r.nu;
  report.dissipation = dt * r.dissipation_rate;
  report.source = dt * r.source;
  if (trace != nullptr) {
    trace->B_frozen = B_frozen;
    trace->n_I_frozen = m.n_I;
    trace->n_e_frozen = n_e;
  }
  if (detail != nullptr) *detail = std::move(r);
  return report;
}

StageReport stage_magnetic_2(SimulationState& state, const RunConfig& config, double dt, StageTrace* trace) {
  StageReport report;
  const PhaseSpaceGrid& g = state.f.grid();
  const MomentSet m = compute_moments(state.f);
  const std::vector<Vec3> B = state.fields.centered_B();
  std::vector<RotationData> rot(g.Nx());
  std::vector<Vec3> nu(g.Nx());
  for (int i = 0; i < g.Nx(); ++i) {
    const double n = m.n_I[i];
    const double kappa = 1.0 - n / state.fields.n_e[i];
    rot[i].B = B[i];
    rot[i].kappa = kappa;
    rot[i].u = n > 0.0 ? m.nu_I[i] / n : Vec3{0.0, 0.0, 0.0};
    nu[i] = ion_momentum_rotation(m.nu_I[i], kappa * B[i], dt);
  }
  add_loss(report, rotate_v(state.f, rot, dt, kernel_for(state.f, config)));
  state.nuI = nu;
  if (trace != nullptr) {
    trace->B_frozen = B;
    trace->n_I_frozen = m.n_I;
    trace->n_e_frozen = state.fields.n_e;
  }
  return report;
}

const LedgerRow& step(SimulationState& state, const RunConfig& config, StageTrace* trace) {
  const double dt = config.dt;
  StageReport total;
  auto vp = [&](double h) {
    return traced("vlasov_poisson", state, config, trace, [&] { return stage_vlasov_poisson(state, config, h); });
  };
  auto m1 = [&](double h) {
    return traced("magnetic_1", state, config, trace, [&] { return stage_magnetic_1(state, config, h, nullptr, trace); });
  };
  auto m2 = [&](double h) {
    return traced("magnetic_2", state, config, trace, [&] { return stage_magnetic_2(state, config, h, trace); });
  };
  if (config.splitting == SplittingOrder::Lie) {
    accumulate(total, vp(dt));
    accumulate(total, m1(dt));
    accumulate(total, m2(dt));
  } else {
    accumulate(total, vp(0.5 * dt));
    accumulate(total, m2(0.5 * dt));
    accumulate(total, m1(dt));
    accumulate(total, m2(0.5 * dt));
    accumulate(total, vp(0.5 * dt));
  }
  state.lost_mass += total.lost_mass;
  state.t += dt;
  ++state.step;
  return compute_ledger(state, config, {dt, total.dissipation, total.source, total.lost_energy});
}

}  // namespace hv
