#pragma once

#include <span>
#include <vector>

#include "hallvlasov/grid.hpp"
#include "hallvlasov/moments.hpp"
#include "hallvlasov/vec3.hpp"

namespace hv {

struct Current {
  std::vector<double> J_y, J_z;  // centres
};

/// J = curl B in the slab reduction: J_y = -d_x Bz, J_z = d_x By, each the
/// centred difference of the two faces bounding a cell.
Current compute_current(std::span<const double> By, std::span<const double> Bz, double dx);

/// Generalised Ohm law at the cell centres:
/// E = -T_e (D1 n_e)/n_e - (nu/n_e) x B + (J x B)/n_e + eta J.
std::vector<Vec3> assemble_electric_field(const FieldState& fields, const MomentSet& moments,
                                          std::span<const double> eta, double T_e, double dx);

/// Frozen-Hall transport curl(-(J/n_e) x B_frozen) at the interior faces as
/// (y, z) pairs; the wall entries are zero. Its pairing with B vanishes
/// identically for fields with zero tangential wall values.
std::vector<std::array<double, 2>> hall_transport(std::span<const double> By, std::span<const double> Bz,
                                                  std::span<const Vec3> B_frozen, std::span<const double> n_e,
                                                  double dx);

struct Stage1Input {
  double dx = 0.0;
  double dt = 0.0;
  double theta = 1.0;
  double linear_tol = 1e-10;
  /// Total field at stage start (faces). Wall values must equal the imposed
  /// field's (zero in homogeneous mode).
  std::span<const double> By, Bz;
  /// Imposed background; ignored when inactive.
  const ImposedField* imposed = nullptr;
  /// Frozen coefficients at cell centres.
  std::span<const double> n_I, n_e, eta;
  std::span<const Vec3> nu_k;
  std::span<const Vec3> B_frozen;
};

struct Stage1Result {
  std::vector<double> By, Bz;  // faces, total field
  std::vector<Vec3> M;         // dt * J^theta, centres
  std::vector<Vec3> nu;        // nu_k + M x d
  std::vector<Vec3> d;         // n_I B_frozen / n_e
  std::vector<Vec3> J_theta;   // total current at the theta level
  /// sum eta |J^theta - J_imp|^2 dx
  double dissipation_rate = 0.0;
  /// Perturbed-energy source at the theta level (zero without J_imp).
  double source = 0.0;
  double linear_residual = 0.0;
};

/// Magnetic stage with frozen n_I, n_e and B_frozen.
///
/// Integrates
///   dB/dt = curl[ (nu/n_e) x B_frozen - (J/n_e) x B_frozen - eta J ],
///   dnu/dt = J x d,  d = n_I B_frozen / n_e,
/// with the theta-scheme. The time-integrated current M = int J ds starts at
/// zero, so M^+ = dt J^theta and M is eliminated; what remains is one banded
/// solve for the interior-face perturbation field (2 (Nx - 1) unknowns,
/// bandwidth 3). With homogeneous walls the scheme satisfies
///   dE = -dt sum eta |J^theta|^2 dx - (theta - 1/2) |Delta Y|^2
/// for E = sum |B|^2/2 dx + sum |nu|^2 / (2 n_I) dx.
///
/// Throws SingularSystem when the factorisation fails or the solve misses
/// `linear_tol`.
Stage1Result solve_stage1(const Stage1Input& in);

/// Per-centre velocity translation (M / n_e) x B_frozen carried by f during
/// the stage. The force does not depend on v, so n_I is untouched.
std::vector<Vec3> stage1_velocity_shift(std::span<const Vec3> M, std::span<const double> n_e,
                                        std::span<const Vec3> B_frozen);

}  // namespace hv
