#include "hallvlasov/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hallvlasov/errors.hpp"
#include "hallvlasov/summation.hpp"

namespace hv {

PhaseSpaceGrid::PhaseSpaceGrid(double L, int Nx, double v_max, int Nv)
    : L_(L), Nx_(Nx), v_max_(v_max), Nv_(Nv), dx_(L / Nx), dv_(2.0 * v_max / Nv) {
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidInput("grid: L must be > 0");
  if (Nx < 2) throw InvalidInput("grid: Nx must be >= 2");
  if (!(v_max > 0.0) || !std::isfinite(v_max)) throw InvalidInput("grid: v_max must be > 0");
  if (Nv < 4 || Nv % 2 != 0) throw InvalidInput("grid: Nv must be even and >= 4 (v_x -> -v_x must map the grid onto itself)");
}

std::vector<double> PhaseSpaceGrid::x_centers() const {
  std::vector<double> x(Nx_);
  for (int i = 0; i < Nx_; ++i) x[i] = x_center(i);
  return x;
}

std::vector<double> PhaseSpaceGrid::x_faces() const {
  std::vector<double> x(Nx_ + 1);
  for (int i = 0; i <= Nx_; ++i) x[i] = x_face(i);
  return x;
}

double DistributionFunction::total_mass() const {
  CompensatedSum s;
  for (int i = 0; i < grid_.Nx(); ++i) s.add(compensated_sum(slab(i)));
  return s.value() * grid_.dx() * grid_.dv3();
}

double DistributionFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double DistributionFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

FieldState FieldState::zeros(const PhaseSpaceGrid& grid, double Bx0) {
  FieldState s;
  s.Bx0 = Bx0;
  s.By.assign(grid.Nx() + 1, 0.0);
  s.Bz.assign(grid.Nx() + 1, 0.0);
  s.n_e.assign(grid.Nx(), 1.0);
  s.log_ne.assign(grid.Nx(), 0.0);
  s.J_y.assign(grid.Nx(), 0.0);
  s.J_z.assign(grid.Nx(), 0.0);
  return s;
}

std::vector<Vec3> FieldState::centered_B() const {
  const std::size_t n = n_e.size();
  std::vector<Vec3> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = {Bx0, 0.5 * (By[i] + By[i + 1]), 0.5 * (Bz[i] + Bz[i + 1])};
  return b;
}

void FieldState::update_current(double dx) {
  const std::size_t n = By.size() - 1;
  J_y.resize(n);
  J_z.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    J_y[i] = -(Bz[i + 1] - Bz[i]) / dx;
    J_z[i] = (By[i + 1] - By[i]) / dx;
  }
}

ImposedField ImposedField::none(const PhaseSpaceGrid& grid) {
  ImposedField f;
  f.By.assign(grid.Nx() + 1, 0.0);
  f.Bz.assign(grid.Nx() + 1, 0.0);
  f.J_y.assign(grid.Nx(), 0.0);
  f.J_z.assign(grid.Nx(), 0.0);
  return f;
}

double ImposedField::J_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < J_y.size(); ++i) m = std::max(m, std::hypot(J_y[i], J_z[i]));
  return m;
}

double ImposedField::w1inf_norm() const {
  double m = J_inf();
  for (std::size_t i = 0; i < By.size(); ++i) m = std::max(m, std::sqrt(Bx0 * Bx0 + By[i] * By[i] + Bz[i] * Bz[i]));
  return m;
}

double RunConfig::eta_min() const { return eta.empty() ? 0.0 : *std::min_element(eta.begin(), eta.end()); }
double RunConfig::eta_max() const { return eta.empty() ? 0.0 : *std::max_element(eta.begin(), eta.end()); }

void RunConfig::validate() const {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be > 0");
  if (!(T_e > 0.0)) throw ValidationError("T_e must be > 0");
  if (static_cast<int>(eta.size()) != grid.Nx()) throw ValidationError("eta profile must have Nx entries");
  for (double e : eta)
    if (!std::isfinite(e)) throw ValidationError("eta must be finite");
  if (!(eta_min() > 0.0)) throw ValidationError("eta_min must be > 0 (resistivity bounded away from zero)");
  if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
  if (!(t_end >= 0.0)) throw ValidationError("t_end must be >= 0");
  if (!(newton_tol > 0.0 && newton_tol < 1.0)) throw ValidationError("newton_tol must lie in (0, 1)");
  if (!(linear_tol > 0.0 && linear_tol < 1.0)) throw ValidationError("linear_tol must lie in (0, 1)");
  if (!(theta >= 0.5 && theta <= 1.0)) throw ValidationError("theta must lie in [1/2, 1]");
  if (remap.order != 1 && remap.order != 2) throw ValidationError("remap_order must be 1 or 2");
  if (output_cadence < 0 || checkpoint_cadence < 0) throw ValidationError("output cadences must be >= 0");
  if (imposed.active) {
    if (static_cast<int>(imposed.By.size()) != grid.Nx() + 1 || static_cast<int>(imposed.Bz.size()) != grid.Nx() + 1)
      throw ValidationError("imposed field profiles must live on the Nx + 1 faces");
    if (!std::isfinite(imposed.w1inf_norm())) throw ValidationError("imposed field must satisfy ||B_imp||_{1,inf} < inf");
  }
}

namespace {

/// Probability mass of N(mean, sigma^2) outside [-a, a].
double gaussian_outside(double mean, double sigma, double a) {
  const double s = sigma * std::numbers::sqrt2;
  return 0.5 * std::erfc((a - mean) / s) + 0.5 * std::erfc((a + mean) / s);
}

}  // namespace

DistributionFunction make_maxwellian(const PhaseSpaceGrid& grid, std::span<const double> density, double temperature,
                                     std::span<const Vec3> drift) {
  if (static_cast<int>(density.size()) != grid.Nx() || static_cast<int>(drift.size()) != grid.Nx())
    throw InvalidInput("make_maxwellian: density and drift need Nx entries");
  if (!(temperature > 0.0)) throw InvalidInput("make_maxwellian: temperature must be > 0");
  const double sigma = std::sqrt(temperature);
  DistributionFunction f(grid);
  CompensatedSum total, outside;
  for (int i = 0; i < grid.Nx(); ++i) {
    if (!(density[i] >= 0.0)) throw InvalidInput("make_maxwellian: density must be >= 0");
    if (norm(drift[i]) + 4.0 * sigma >= grid.v_max())
      throw InvalidInput("make_maxwellian: |drift| + 4 sqrt(T) must stay below v_max");
    double inside = 1.0;
    for (int k = 0; k < 3; ++k) inside *= 1.0 - gaussian_outside(drift[i][k], sigma, grid.v_max());
    total.add(density[i]);
    outside.add(density[i] * (1.0 - inside));
  }
  if (total.value() > 0.0 && outside.value() > 1e-8 * total.value())
    throw TailTruncation("make_maxwellian: mass outside the velocity box exceeds 1e-8 of the total; raise v_max");

  const double norm_factor = std::pow(2.0 * std::numbers::pi * temperature, -1.5);
  const int Nv = grid.Nv();
  std::vector<double> gx(Nv), gy(Nv), gz(Nv);
  for (int i = 0; i < grid.Nx(); ++i) {
    if (density[i] == 0.0) continue;
    for (int a = 0; a < Nv; ++a) {
      const double v = grid.v(a);
      gx[a] = std::exp(-(v - drift[i][0]) * (v - drift[i][0]) / (2.0 * temperature));
      gy[a] = std::exp(-(v - drift[i][1]) * (v - drift[i][1]) / (2.0 * temperature));
      gz[a] = std::exp(-(v - drift[i][2]) * (v - drift[i][2]) / (2.0 * temperature));
    }
    const double amp = density[i] * norm_factor;
    for (int a = 0; a < Nv; ++a)
      for (int b = 0; b < Nv; ++b) {
        const double ab = amp * gx[a] * gy[b];
        double* row = &f(i, a, b, 0);
        for (int c = 0; c < Nv; ++c) row[c] = ab * gz[c];
      }
  }
  return f;
}

DistributionFunction make_maxwellian(const PhaseSpaceGrid& grid, double density, double temperature) {
  const std::vector<double> n(grid.Nx(), density);
  const std::vector<Vec3> u(grid.Nx(), Vec3{0.0, 0.0, 0.0});
  return make_maxwellian(grid, n, temperature, u);
}

std::vector<Violation> validate_state(const SimulationState& state) {
  std::vector<Violation> out;
  const auto values = state.f.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (std::isnan(values[k]) || std::isinf(values[k])) {
      out.push_back({"f is not finite", k});
    } else if (values[k] < 0.0) {
      out.push_back({"f is negative", k});
    }
  }
  const FieldState& fs = state.fields;
  for (std::size_t i = 0; i < fs.n_e.size(); ++i) {
    if (!std::isfinite(fs.n_e[i])) {
      out.push_back({"n_e is not finite", i});
    } else if (!(fs.n_e[i] > 0.0)) {
      out.push_back({"n_e is not positive", i});
    } else if (i < fs.log_ne.size() && std::abs(std::log(fs.n_e[i]) - fs.log_ne[i]) > 1e-12 * (1.0 + std::abs(fs.log_ne[i]))) {
      out.push_back({"log_ne inconsistent with n_e", i});
    }
  }
  for (std::size_t i = 0; i < fs.By.size(); ++i)
    if (!std::isfinite(fs.By[i]) || !std::isfinite(fs.Bz[i])) out.push_back({"B is not finite", i});
  if (!fs.By.empty() && fs.J_y.size() + 1 == fs.By.size()) {
    const double dx = state.f.grid().dx();
    for (std::size_t i = 0; i < fs.J_y.size(); ++i) {
      const double jy = -(fs.Bz[i + 1] - fs.Bz[i]) / dx;
      const double jz = (fs.By[i + 1] - fs.By[i]) / dx;
      const double scale = 1.0 + std::abs(jy) + std::abs(jz);
      if (std::abs(jy - fs.J_y[i]) > 1e-12 * scale || std::abs(jz - fs.J_z[i]) > 1e-12 * scale)
        out.push_back({"J inconsistent with curl B", i});
    }
  } else {
    out.push_back({"field arrays have inconsistent sizes", 0});
  }
  if (!std::isfinite(state.t) || state.t < 0.0) out.push_back({"time is negative or not finite", 0});
  return out;
}

}  // namespace hv
