#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hallvlasov/ledger.hpp"
#include "hallvlasov/remap.hpp"
#include "hallvlasov/vec3.hpp"

namespace hv {

/// Uniform cell-centred x grid on [0, L] times a cell-centred velocity cube
/// [-v_max, v_max]^3 with Nv points per component.
///
/// Nv is even so v = 0 is a cell face and v_x -> -v_x maps the grid onto
/// itself (index a -> Nv - 1 - a).
class PhaseSpaceGrid {
 public:
  PhaseSpaceGrid() = default;
  /// Throws InvalidInput on L <= 0, Nx < 2, v_max <= 0 or odd/too-small Nv.
  PhaseSpaceGrid(double L, int Nx, double v_max, int Nv);

  double L() const { return L_; }
  int Nx() const { return Nx_; }
  double v_max() const { return v_max_; }
  int Nv() const { return Nv_; }
  double dx() const { return dx_; }
  double dv() const { return dv_; }
  double dv3() const { return dv_ * dv_ * dv_; }

  double x_center(int i) const { return (i + 0.5) * dx_; }
  double x_face(int i) const { return i * dx_; }
  double v(int a) const { return -v_max_ + (a + 0.5) * dv_; }
  int mirror(int a) const { return Nv_ - 1 - a; }

  std::vector<double> x_centers() const;
  std::vector<double> x_faces() const;

  std::size_t velocity_size() const { return static_cast<std::size_t>(Nv_) * Nv_ * Nv_; }
  std::size_t size() const { return velocity_size() * Nx_; }
  std::size_t index(int i, int a, int b, int c) const {
    return ((static_cast<std::size_t>(i) * Nv_ + a) * Nv_ + b) * Nv_ + c;
  }

  bool operator==(const PhaseSpaceGrid&) const = default;

 private:
  double L_ = 1.0;
  int Nx_ = 2;
  double v_max_ = 1.0;
  int Nv_ = 2;
  double dx_ = 0.5;
  double dv_ = 1.0;
};

/// Ion density f(x_i, v_a, v_b, v_c), treated as cell averages. Layout is
/// [x][v_x][v_y][v_z] with v_z fastest.
class DistributionFunction {
 public:
  DistributionFunction() = default;
  explicit DistributionFunction(const PhaseSpaceGrid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

  const PhaseSpaceGrid& grid() const { return grid_; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> slab(int i) { return {values_.data() + grid_.index(i, 0, 0, 0), grid_.velocity_size()}; }
  std::span<const double> slab(int i) const {
    return {values_.data() + grid_.index(i, 0, 0, 0), grid_.velocity_size()};
  }
  double& operator()(int i, int a, int b, int c) { return values_[grid_.index(i, a, b, c)]; }
  double operator()(int i, int a, int b, int c) const { return values_[grid_.index(i, a, b, c)]; }

  /// Sum f dx dv^3.
  double total_mass() const;
  double min() const;
  double max() const;

  bool operator==(const DistributionFunction&) const = default;

 private:
  PhaseSpaceGrid grid_;
  std::vector<double> values_;
};

/// Magnetic field, current and electron density on the x grid.
///
/// Tangential components live on the Nx + 1 cell faces (walls included),
/// currents and electron density on the Nx cell centres. J is the compact
/// difference of B across each cell, so J = curl B holds at every centre.
struct FieldState {
  double Bx0 = 0.0;
  std::vector<double> By, Bz;      // faces
  std::vector<double> n_e, log_ne;  // centres
  std::vector<double> J_y, J_z;    // centres

  static FieldState zeros(const PhaseSpaceGrid& grid, double Bx0 = 0.0);
  /// Frozen B averaged onto cell centres, Bx included.
  std::vector<Vec3> centered_B() const;
  /// Recomputes J from B.
  void update_current(double dx);

  bool operator==(const FieldState&) const = default;
};

/// Background field B_imp; its tangential wall values are the boundary data
/// of the total field. `active == false` is the homogeneous problem.
struct ImposedField {
  bool active = false;
  double Bx0 = 0.0;
  std::vector<double> By, Bz;    // faces
  std::vector<double> J_y, J_z;  // centres, curl of B_imp

  static ImposedField none(const PhaseSpaceGrid& grid);
  /// ||B_imp||_{1,inf}: max of |B_imp| and |J_imp| over the grid.
  double w1inf_norm() const;
  double J_inf() const;
};

enum class SplittingOrder { Lie, Strang };

struct RunConfig {
  PhaseSpaceGrid grid;
  double lambda = 1.0;
  double T_e = 1.0;
  /// Resistivity at cell centres.
  std::vector<double> eta;
  ImposedField imposed;
  double dt = 0.01;
  double t_end = 1.0;
  SplittingOrder splitting = SplittingOrder::Lie;
  double newton_tol = 1e-12;
  double linear_tol = 1e-10;
  /// theta-scheme parameter of the magnetic solve, in [1/2, 1].
  double theta = 1.0;
  RemapKernel remap;
  /// Steps between field snapshots / checkpoints (0 disables).
  int output_cadence = 0;
  int checkpoint_cadence = 0;
  std::string output_directory = "out";

  double eta_min() const;
  double eta_max() const;
  /// Throws ValidationError naming the first violated constraint.
  void validate() const;
};

struct SimulationState {
  double t = 0.0;
  long step = 0;
  DistributionFunction f;
  FieldState fields;
  /// Time-integrated current of the last magnetic stage, per centre.
  std::vector<Vec3> M;
  /// Ion momentum density per centre after the last stage.
  std::vector<Vec3> nuI;
  EnergyLedger ledger;
  /// Mass removed at the velocity-box edge since t = 0.
  double lost_mass = 0.0;
};

/// Samples density(x) (2 pi T)^{-3/2} exp(-|v - drift(x)|^2 / (2T)) at the
/// grid nodes. Throws InvalidInput on negative density, T <= 0 or a drift
/// that puts |drift| + 4 sqrt(T) beyond v_max; TailTruncation when the
/// analytic mass outside the box exceeds 1e-8 of the total.
DistributionFunction make_maxwellian(const PhaseSpaceGrid& grid, std::span<const double> density, double temperature,
                                     std::span<const Vec3> drift);

/// Convenience overload: uniform density, zero drift.
DistributionFunction make_maxwellian(const PhaseSpaceGrid& grid, double density, double temperature);

struct Violation {
  std::string what;
  std::size_t index = 0;
};

/// Lists violated state invariants; empty when the state is valid.
std::vector<Violation> validate_state(const SimulationState& state);

}  // namespace hv
