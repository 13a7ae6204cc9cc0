#include "hallvlasov/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "hallvlasov/diagnostics.hpp"
#include "hallvlasov/errors.hpp"
#include "hallvlasov/induction.hpp"
#include "hallvlasov/moments.hpp"
#include "hallvlasov/poisson.hpp"
#include "hallvlasov/splitting.hpp"
#include "hallvlasov/vlasov.hpp"

namespace hv {

namespace {

using Rows = std::vector<CheckRow>;

void at_most(Rows& rows, const char* suite, std::string name, double value, double tol) {
  rows.push_back({suite, std::move(name), value, "<=", 0.0, tol, value <= tol});
}

void at_least(Rows& rows, const char* suite, std::string name, double value, double tol) {
  rows.push_back({suite, std::move(name), value, ">=", tol, 0.0, value >= tol});
}

void within(Rows& rows, const char* suite, std::string name, double value, double lo, double hi) {
  rows.push_back({suite, std::move(name), value, "in", lo, hi, value >= lo && value <= hi});
}

RunConfig small_config(int Nx, int Nv, double dt, double v_max = 6.0) {
  RunConfig c;
  c.grid = PhaseSpaceGrid(1.0, Nx, v_max, Nv);
  c.lambda = 0.5;
  c.T_e = 1.0;
  c.eta.assign(Nx, 0.1);
  c.imposed = ImposedField::none(c.grid);
  c.dt = dt;
  c.t_end = 1.0;
  return c;
}

SimulationState sine_state(const RunConfig& c, double amplitude) {
  const PhaseSpaceGrid& g = c.grid;
  FieldState fields = FieldState::zeros(g, c.imposed.Bx0);
  for (int k = 0; k <= g.Nx(); ++k) {
    const double s = amplitude * std::sin(std::numbers::pi * g.x_face(k) / g.L());
    fields.By[k] = c.imposed.By[k] + s;
    fields.Bz[k] = c.imposed.Bz[k];
  }
  return initialize_state(c, make_maxwellian(g, 1.0, 1.0), std::move(fields));
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// ---------------------------------------------------------------- moments

void suite_moments(Rows& rows, std::uint64_t seed) {
  const char* s = "moments";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const PhaseSpaceGrid g(1.0, 2, 4.0, 8);
  double worst53 = 0.0, worst54 = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    DistributionFunction f(g);
    const double sparsity = U(rng);
    const double power = 1.0 + 4.0 * U(rng);
    for (double& v : f.values()) v = U(rng) < sparsity ? std::pow(U(rng), power) : 0.0;
    if (f.max() == 0.0) f(0, 0, 0, 0) = 1.0;
    const MomentInequalityReport r = check_moment_inequalities(f);
    worst53 = std::max(worst53, r.ratio53());
    worst54 = std::max(worst54, r.ratio54());
  }
  at_most(rows, s, "worst ||n||_{5/3} ratio over 1000 random f", worst53, 1.0);
  at_most(rows, s, "worst ||nu||_{5/4} ratio over 1000 random f", worst54, 1.0);

  const MomentBoundConstants k = moment_bound_constants();
  const double pi = std::numbers::pi;
  const double C = std::pow(4.0 * pi / 3.0, 0.4) * (std::pow(2.0 / 3.0, 0.6) + std::pow(1.5, 0.4));
  const double Cp = std::pow(pi, 0.2) * (std::pow(4.0, -0.8) + std::pow(4.0, 0.2));
  at_most(rows, s, "|C - closed form|", std::abs(k.C - C), 1e-12);
  at_most(rows, s, "|C' - closed form|", std::abs(k.C_prime - Cp), 1e-12);
}

// ---------------------------------------------------------------- poisson

double manufactured_error(int Nx, double lambda) {
  const double L = 1.0, dx = L / Nx, a = 0.3, k = std::numbers::pi / L;
  std::vector<double> n_I(Nx), exact(Nx);
  for (int i = 0; i < Nx; ++i) {
    const double x = (i + 0.5) * dx;
    exact[i] = a * std::cos(k * x);
    n_I[i] = lambda * lambda * k * k * exact[i] + std::exp(exact[i]);
  }
  const PoissonSolution sol = solve_log_ne(n_I, dx, lambda, 1e-12);
  double err = 0.0;
  for (int i = 0; i < Nx; ++i) err = std::max(err, std::abs(sol.log_ne[i] - exact[i]));
  return err;
}

void suite_poisson(Rows& rows, std::uint64_t seed) {
  const char* s = "poisson";
  const double e1 = manufactured_error(32, 0.5), e2 = manufactured_error(64, 0.5), e3 = manufactured_error(128, 0.5);
  within(rows, s, "manufactured error ratio 32 -> 64", e1 / e2, 3.5, 4.5);
  within(rows, s, "manufactured error ratio 64 -> 128", e2 / e3, 3.5, 4.5);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int Nx = 48;
  const double dx = 1.0 / Nx;
  double worst_neutral = 0.0, min_ne = std::numeric_limits<double>::infinity(), worst_ratio = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> n_I(Nx);
    const double base = 0.05 + U(rng);
    for (double& v : n_I) v = base + 2.0 * U(rng) * U(rng);
    const double lambda = 0.1 + U(rng);
    const PoissonSolution sol = solve_log_ne(n_I, dx, lambda, 1e-12);
    double sI = 0.0, se = 0.0;
    for (int i = 0; i < Nx; ++i) {
      sI += n_I[i] * dx;
      se += sol.n_e[i] * dx;
    }
    worst_neutral = std::max(worst_neutral, std::abs(se - sI));
    const TwoSidedBound b = check_two_sided_bound(sol, n_I, dx);
    min_ne = std::min(min_ne, b.min_ne);
    worst_ratio = std::max(worst_ratio, b.norm53_ne / b.norm53_nI);
  }
  at_most(rows, s, "max |sum n_e dx - sum n_I dx| over 50 profiles", worst_neutral, 1e-10);
  at_least(rows, s, "min n_e over 50 profiles (> 0)", min_ne, std::numeric_limits<double>::min());
  at_most(rows, s, "max ||n_e||_{5/3} / ||n_I||_{5/3}", worst_ratio, 1.0 + 1e-10);
}

// ---------------------------------------------------------------- induction

struct Stage1Data {
  std::vector<double> By, Bz, n_I, n_e, eta;
  std::vector<Vec3> nu, B_frozen;
};

Stage1Result solve(const Stage1Data& d, double dx, double dt, double theta) {
  Stage1Input in;
  in.dx = dx;
  in.dt = dt;
  in.theta = theta;
  in.linear_tol = 1e-12;
  in.By = d.By;
  in.Bz = d.Bz;
  in.n_I = d.n_I;
  in.n_e = d.n_e;
  in.eta = d.eta;
  in.nu_k = d.nu;
  in.B_frozen = d.B_frozen;
  return solve_stage1(in);
}

Stage1Data random_stage1(std::mt19937_64& rng, int Nx, bool hall) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Stage1Data d;
  d.By.assign(Nx + 1, 0.0);
  d.Bz.assign(Nx + 1, 0.0);
  for (int k = 1; k < Nx; ++k) {
    d.By[k] = 0.2 * U(rng);
    d.Bz[k] = 0.2 * U(rng);
  }
  d.n_I.resize(Nx);
  d.n_e.resize(Nx);
  d.eta.resize(Nx);
  d.nu.resize(Nx);
  d.B_frozen.resize(Nx);
  for (int i = 0; i < Nx; ++i) {
    d.n_I[i] = 1.0 + 0.3 * U(rng);
    d.n_e[i] = 1.0 + 0.3 * U(rng);
    d.eta[i] = 0.1 + 0.05 * U(rng);
    d.nu[i] = {0.1 * U(rng), 0.1 * U(rng), 0.1 * U(rng)};
    d.B_frozen[i] = hall ? Vec3{0.5 * U(rng), 0.5 * U(rng), 0.5 * U(rng)} : Vec3{0.0, 0.0, 0.0};
  }
  return d;
}

void suite_induction(Rows& rows, std::uint64_t seed) {
  const char* s = "induction";
  std::mt19937_64 rng(seed);
  const int Nx = 32;
  const double dx = 1.0 / Nx, dt = 0.01;

  Stage1Data a = random_stage1(rng, Nx, true);
  Stage1Data b = random_stage1(rng, Nx, true);
  b.n_I = a.n_I;
  b.n_e = a.n_e;
  b.eta = a.eta;
  b.B_frozen = a.B_frozen;
  Stage1Data ab = a;
  for (int k = 0; k <= Nx; ++k) {
    ab.By[k] += b.By[k];
    ab.Bz[k] += b.Bz[k];
  }
  for (int i = 0; i < Nx; ++i) ab.nu[i] = a.nu[i] + b.nu[i];
  double worst = 0.0;
  for (double theta : {0.5, 1.0}) {
    const Stage1Result ra = solve(a, dx, dt, theta), rb = solve(b, dx, dt, theta), rab = solve(ab, dx, dt, theta);
    for (int k = 0; k <= Nx; ++k) {
      worst = std::max(worst, std::abs(ra.By[k] + rb.By[k] - rab.By[k]));
      worst = std::max(worst, std::abs(ra.Bz[k] + rb.Bz[k] - rab.Bz[k]));
    }
    for (int i = 0; i < Nx; ++i)
      for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(ra.nu[i][c] + rb.nu[i][c] - rab.nu[i][c]));
  }
  at_most(rows, s, "superposition defect of the stage-1 solve", worst, 1e-10);

  // Resistive only: backward Euler gives dE = -dt sum eta |J+|^2 dx - |dB|^2 / 2.
  Stage1Data r = random_stage1(rng, Nx, false);
  for (auto& v : r.nu) v = {0.0, 0.0, 0.0};
  const Stage1Result res = solve(r, dx, dt, 1.0);
  auto energy = [&](const std::vector<double>& By, const std::vector<double>& Bz) {
    double e = 0.0;
    for (int k = 0; k <= Nx; ++k) e += (k == 0 || k == Nx ? 0.5 : 1.0) * (By[k] * By[k] + Bz[k] * Bz[k]);
    return 0.5 * e * dx;
  };
  std::vector<double> dBy(Nx + 1), dBz(Nx + 1);
  for (int k = 0; k <= Nx; ++k) {
    dBy[k] = res.By[k] - r.By[k];
    dBz[k] = res.Bz[k] - r.Bz[k];
  }
  const Current J = compute_current(res.By, res.Bz, dx);
  double diss = 0.0;
  for (int i = 0; i < Nx; ++i) diss += r.eta[i] * (J.J_y[i] * J.J_y[i] + J.J_z[i] * J.J_z[i]) * dx;
  const double lhs = energy(res.By, res.Bz) - energy(r.By, r.Bz);
  const double rhs = -dt * diss - energy(dBy, dBz);
  at_most(rows, s, "resistive backward-Euler energy identity defect", std::abs(lhs - rhs) / (dt * diss), 1e-10);
}

// ---------------------------------------------------------------- vlasov

void suite_vlasov(Rows& rows, std::uint64_t seed) {
  const char* s = "vlasov";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const PhaseSpaceGrid g(1.0, 16, 6.0, 16);
  std::vector<double> n(g.Nx());
  std::vector<Vec3> u(g.Nx());
  for (int i = 0; i < g.Nx(); ++i) {
    n[i] = 1.0 + 0.3 * std::cos(std::numbers::pi * g.x_center(i));
    u[i] = {0.0, 0.3 * U(rng), 0.3 * U(rng)};
  }
  const DistributionFunction f0 = make_maxwellian(g, n, 1.0, u);
  const MomentSet m0 = compute_moments(f0);

  DistributionFunction f = f0;
  advect_x(f, 0.137, RemapKernel{});
  const MomentSet m1 = compute_moments(f);
  at_most(rows, s, "free streaming: relative mass change", rel(m1.mass(g.dx()), m0.mass(g.dx())), 1e-12);
  at_most(rows, s, "free streaming: relative kinetic energy change",
          rel(m1.kinetic_energy(g.dx()), m0.kinetic_energy(g.dx())), 1e-12);
  const auto wall = wall_normal_velocity(f);
  at_most(rows, s, "free streaming: max |u_I . n| at the walls", std::max(std::abs(wall[0]), std::abs(wall[1])), 1e-10);
  at_least(rows, s, "free streaming: min f", f.min(), 0.0);

  DistributionFunction h = f0;
  const std::vector<Vec3> dv(g.Nx(), Vec3{1.0 * g.dv(), -1.0 * g.dv(), 0.0});
  shift_v(h, dv, RemapKernel{});
  double defect = 0.0;
  for (int i = 0; i < g.Nx(); ++i)
    for (int a = 0; a < g.Nv(); ++a)
      for (int b = 0; b < g.Nv(); ++b)
        for (int c = 0; c < g.Nv(); ++c) {
          const int sa = a - 1, sb = b + 1;
          const double expect = (sa >= 0 && sb < g.Nv()) ? f0(i, sa, sb, c) : 0.0;
          defect = std::max(defect, std::abs(h(i, a, b, c) - expect));
        }
  at_most(rows, s, "integer velocity shift: max |defect|", defect, 0.0);

  double worst_norm = 0.0, worst_par = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 nu{U(rng), U(rng), U(rng)}, d{2.0 * U(rng), 2.0 * U(rng), 2.0 * U(rng)};
    const Vec3 r = ion_momentum_rotation(nu, d, 0.37);
    worst_norm = std::max(worst_norm, std::abs(norm(r) - norm(nu)) / norm(nu));
    worst_par = std::max(worst_par, std::abs(dot(r, d) - dot(nu, d)) / (norm(nu) * norm(d)));
  }
  at_most(rows, s, "exact rotation: relative |nu| drift", worst_norm, 1e-14);
  at_most(rows, s, "exact rotation: relative drift of nu . d", worst_par, 1e-14);
}

// ---------------------------------------------------------------- splitting

void suite_splitting(Rows& rows, std::uint64_t) {
  const char* s = "splitting";
  RunConfig c = small_config(8, 12, 0.01);
  SimulationState eq = initialize_state(c, make_maxwellian(c.grid, 1.0, 1.0), FieldState::zeros(c.grid));
  const LedgerRow r0 = eq.ledger.last();
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const LedgerRow& r = step(eq, c);
    for (double d : {rel(r.E_I, r0.E_I), rel(r.E_m, r0.E_m), rel(r.E_es, r0.E_es), rel(r.E_free, r0.E_free),
                     rel(r.E_tot, r0.E_tot), std::abs(r.dissipation_step), std::abs(r.residual)})
      worst = std::max(worst, d);
  }
  at_most(rows, s, "equilibrium: max ledger drift over 20 steps", worst, 1e-12);

  // A box wide enough that no tail mass leaves during the stage.
  const RunConfig wide = small_config(8, 16, 0.01, 10.0);
  SimulationState st = sine_state(wide, 0.3);
  const MomentSet before = compute_moments(st.f);
  stage_magnetic_1(st, wide, wide.dt);
  const MomentSet after = compute_moments(st.f);
  double dn = 0.0;
  for (int i = 0; i < wide.grid.Nx(); ++i) dn = std::max(dn, std::abs(after.n_I[i] - before.n_I[i]) / before.n_I[i]);
  at_most(rows, s, "magnetic stage 1: relative n_I change", dn, 1e-12);

  const std::vector<double> By = st.fields.By, Bz = st.fields.Bz;
  stage_magnetic_2(st, wide, wide.dt);
  const bool same = By == st.fields.By && Bz == st.fields.Bz;
  at_most(rows, s, "magnetic stage 2: B changed (0 = bit-identical)", same ? 0.0 : 1.0, 0.0);

  for (SplittingOrder order : {SplittingOrder::Lie, SplittingOrder::Strang}) {
    RunConfig oc = c;
    oc.splitting = order;
    SimulationState os = sine_state(oc, 0.3);
    const double m0 = os.f.total_mass();
    double worst_mass = 0.0, min_f = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 10; ++k) {
      step(os, oc);
      worst_mass = std::max(worst_mass, std::abs(os.f.total_mass() + os.lost_mass - m0) / m0);
      min_f = std::min(min_f, os.f.min());
    }
    const char* tag = order == SplittingOrder::Lie ? "lie" : "strang";
    at_most(rows, s, std::string(tag) + ": relative mass defect (loss credited)", worst_mass, 1e-12);
    at_most(rows, s, std::string(tag) + ": relative v-box loss", os.lost_mass / m0, 1e-8);
    at_least(rows, s, std::string(tag) + ": min f", min_f, 0.0);
  }
}

// ---------------------------------------------------------------- energy

void suite_energy(Rows& rows, std::uint64_t) {
  const char* s = "energy";
  RunConfig c = small_config(16, 16, 0.01);
  SimulationState st = sine_state(c, 0.1);
  double worst_rise = -std::numeric_limits<double>::infinity(), worst_wall = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double E = st.ledger.last().E_tot;
    const LedgerRow& r = step(st, c);
    worst_rise = std::max(worst_rise, r.E_tot - E);
    const auto w = wall_normal_velocity(st.f);
    worst_wall = std::max({worst_wall, std::abs(w[0]), std::abs(w[1])});
  }
  at_most(rows, s, "max E_tot(t_k+1) - E_tot(t_k) over 50 steps", worst_rise, 1e-10);
  at_most(rows, s, "max |u_I . n| at the walls", worst_wall, 1e-10);

  // The refinement runs need dx fine enough that the O(dt^3) splitting
  // error dominates the spatial part.
  auto worst_residual = [&](double dt, int steps) {
    RunConfig h = small_config(64, 16, dt, 10.0);
    h.dt = dt;
    h.theta = 0.5;
    SimulationState x = sine_state(h, 0.1);
    double w = 0.0;
    for (int k = 0; k < steps; ++k) w = std::max(w, std::abs(step(x, h).residual));
    return w;
  };
  const double r1 = worst_residual(0.02, 10), r2 = worst_residual(0.01, 20);
  at_least(rows, s, "theta = 1/2 residual ratio under dt halving", r1 / r2, 3.5);
}

// ---------------------------------------------------------------- perturbed

ImposedField imposed_field(const PhaseSpaceGrid& g, double Bx0, double By0, double amplitude) {
  ImposedField imp = ImposedField::none(g);
  imp.active = true;
  imp.Bx0 = Bx0;
  for (int k = 0; k <= g.Nx(); ++k) {
    const double x = g.x_face(k);
    imp.By[k] = By0 + amplitude * std::sin(std::numbers::pi * x / g.L());
    imp.Bz[k] = amplitude * std::cos(std::numbers::pi * x / g.L());
  }
  for (int i = 0; i < g.Nx(); ++i) {
    imp.J_y[i] = -(imp.Bz[i + 1] - imp.Bz[i]) / g.dx();
    imp.J_z[i] = (imp.By[i + 1] - imp.By[i]) / g.dx();
  }
  return imp;
}

void suite_perturbed(Rows& rows, std::uint64_t) {
  const char* s = "perturbed";
  RunConfig c = small_config(16, 16, 0.01);
  c.imposed = imposed_field(c.grid, 0.2, 0.3, 0.0);
  SimulationState st = sine_state(c, 0.1);
  double worst_S = 0.0, worst_rise = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 30; ++k) {
    const double E = st.ledger.last().E_tot_pert;
    const LedgerRow& r = step(st, c);
    worst_S = std::max(worst_S, std::abs(r.S));
    worst_S = std::max(worst_S, std::abs(compute_perturbed_source(st, c).S));
    worst_rise = std::max(worst_rise, r.E_tot_pert - E);
  }
  at_most(rows, s, "uniform B_imp: max |S|", worst_S, 0.0);
  at_most(rows, s, "uniform B_imp: max E_tot_pert rise per step", worst_rise, 1e-10);

  auto worst_balance = [&](double dt, int steps) {
    RunConfig h = small_config(64, 16, dt, 10.0);
    h.imposed = imposed_field(h.grid, 0.2, 0.0, 0.2);
    h.dt = dt;
    h.theta = 0.5;
    SimulationState x = sine_state(h, 0.1);
    double w = 0.0;
    for (int k = 0; k < steps; ++k) w = std::max(w, std::abs(step(x, h).balance_residual));
    return w;
  };
  const double b1 = worst_balance(0.02, 10), b2 = worst_balance(0.01, 20);
  at_least(rows, s, "J_imp != 0: balance residual ratio under dt halving", b1 / b2, 3.5);
  at_most(rows, s, "|horizon_estimate(1, 1) - ln 2|", std::abs(horizon_estimate(1.0, 1.0) - std::numbers::ln2), 1e-14);
}

}  // namespace

const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names{"moments", "poisson", "induction", "vlasov",
                                              "splitting", "energy", "perturbed"};
  return names;
}

std::vector<CheckRow> run_check_suite(const std::string& suite, std::uint64_t seed) {
  Rows rows;
  if (suite == "all") {
    for (const std::string& name : check_suite_names()) {
      Rows part = run_check_suite(name, seed);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
  }
  if (suite == "moments") suite_moments(rows, seed);
  else if (suite == "poisson") suite_poisson(rows, seed);
  else if (suite == "induction") suite_induction(rows, seed);
  else if (suite == "vlasov") suite_vlasov(rows, seed);
  else if (suite == "splitting") suite_splitting(rows, seed);
  else if (suite == "energy") suite_energy(rows, seed);
  else if (suite == "perturbed") suite_perturbed(rows, seed);
  else throw InvalidInput("unknown check suite '" + suite + "'");
  return rows;
}

bool print_check_table(std::ostream& out, const std::vector<CheckRow>& rows) {
  bool all = true;
  char buf[512];
  for (const CheckRow& r : rows) {
    char bound[96];
    if (r.relation == "in") std::snprintf(bound, sizeof bound, "in [%.3g, %.3g]", r.lo, r.hi);
    else if (r.relation == ">=") std::snprintf(bound, sizeof bound, ">= %.3g", r.lo);
    else std::snprintf(bound, sizeof bound, "<= %.3g", r.hi);
    std::snprintf(buf, sizeof buf, "%-4s  %-10s  %-58s  %13.6e  %s\n", r.pass ? "PASS" : "FAIL", r.suite.c_str(),
                  r.name.c_str(), r.measured, bound);
    out << buf;
    all = all && r.pass;
  }
  out << (all ? "all checks passed" : "some checks FAILED") << " (" << rows.size() << " rows)\n";
  return all;
}

void print_derived_constants(std::ostream& out) {
  const MomentBoundConstants k = moment_bound_constants();
  char buf[256];
  out << "Moment interpolation constants (minimisation over the split radius R in 3 velocity dimensions)\n";
  std::snprintf(buf, sizeof buf, "  C  = (4 pi/3)^(2/5) [(2/3)^(3/5) + (3/2)^(2/5)] = %.15f  (~%.4f)\n", k.C, k.C);
  out << buf;
  out << "       ||n||_{5/3} <= C ||f||_inf^(2/5) (int f |v|^2)^(3/5)\n";
  std::snprintf(buf, sizeof buf, "  C' = pi^(1/5) [4^(-4/5) + 4^(1/5)]             = %.15f  (~%.4f)\n", k.C_prime,
                k.C_prime);
  out << buf;
  out << "       ||n u||_{5/4} <= C' ||f||_inf^(1/5) (int f |v|^2)^(4/5)\n";
  out << "Growth horizon T*(J, C_data) = ln(1 + C_data / J), J = ||J_imp||_inf\n";
  const std::pair<double, double> samples[] = {{1.0, 1.0}, {0.1, 1.0}, {1.0, 0.1}, {0.01, 2.0}, {10.0, 1.0}};
  for (const auto& [J, Cd] : samples) {
    std::snprintf(buf, sizeof buf, "  T*(%g, %g) = %.15f\n", J, Cd, horizon_estimate(J, Cd));
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "  T*(1, 1) - ln 2 = %.3e\n", horizon_estimate(1.0, 1.0) - std::numbers::ln2);
  out << buf;
  out << "  T*(0, C) = inf (no imposed current)\n";
  out << "Gronwall form 10/(3 sigma) ln(1 + 3 tau / (10 J)), shown for comparison only:\n";
  std::snprintf(buf, sizeof buf, "  sigma = tau = 1, J = 1: %.15f\n", horizon_proof_form(1.0, 1.0, 1.0));
  out << buf;
}

}  // namespace hv
