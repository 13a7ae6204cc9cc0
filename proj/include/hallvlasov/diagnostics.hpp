#pragma once

#include <vector>

#include "hallvlasov/grid.hpp"
#include "hallvlasov/ledger.hpp"
#include "hallvlasov/moments.hpp"
#include "hallvlasov/vec3.hpp"

namespace hv {

struct EnergyTerms {
  double E_I = 0.0;
  double E_m = 0.0;
  double E_es = 0.0;
  double E_free = 0.0;
  double E_tot = 0.0;
  double E_m_pert = 0.0;
  double E_tot_pert = 0.0;
};

/// 1/2 sum |B_t|^2 dx over the faces (walls weighted by 1/2) plus Bx0^2 L / 2.
double magnetic_energy(const FieldState& fields, double dx);

/// Same quadrature applied to B - B_imp.
double perturbed_magnetic_energy(const FieldState& fields, const ImposedField& imposed, double dx);

/// E_tot = E_I + E_m + T_e (E_es + E_free). The electron terms carry T_e so
/// that resistive dissipation is the only sink for every T_e > 0.
EnergyTerms compute_energy(const SimulationState& state, const RunConfig& config);
EnergyTerms compute_energy(const SimulationState& state, const RunConfig& config, const MomentSet& moments);

/// Energy flows of one step that close the balance between two rows.
struct StepBalance {
  double dt = 0.0;
  /// dt sum eta |J^theta - J_imp|^2 dx
  double dissipation = 0.0;
  /// dt S^theta
  double source = 0.0;
  /// Kinetic energy that left the velocity box.
  double truncation = 0.0;
};

/// Appends the row for the current state. The step columns are left at zero
/// for a first row; otherwise `balance` closes it against the previous row.
const LedgerRow& compute_ledger(SimulationState& state, const RunConfig& config, const StepBalance& balance = {});

/// E_tot(t_k+1) - E_tot(t_k) + dt sum eta |J^theta|^2 dx, plus the energy
/// reported lost at the velocity-box edge.
double dissipation_residual(const LedgerRow& previous, const LedgerRow& next);

struct PerturbedLedger {
  double E_m_pert = 0.0;
  double E_tot_pert = 0.0;
  /// S = S_resistive + S_hall + S_flow.
  double S = 0.0;
  double S_resistive = 0.0;  ///< -sum eta J_imp . J_pert dx
  double S_hall = 0.0;       ///< -sum (J_imp x B / n_e) . J_pert dx
  double S_flow = 0.0;       ///< +sum (J_imp x B / n_e) . n_I u_I dx
  double J_imp_inf = 0.0;
};

/// Source of the perturbed energy balance at the current state. Exactly zero
/// when the J_imp arrays are identically zero.
PerturbedLedger compute_perturbed_source(const SimulationState& state, const RunConfig& config);

/// Growth horizon T* = ln(1 + C_data / ||J_imp||_inf); +inf when J_imp = 0.
/// Throws InvalidInput when C_data <= 0 or J_imp_inf < 0.
double horizon_estimate(double J_imp_inf, double C_data);

/// The horizon as it comes out of the Gronwall argument,
///   T* = 10 / (3 sigma) ln(1 + 3 tau / (10 ||J_imp||_inf)).
/// Reported next to horizon_estimate for comparison only.
double horizon_proof_form(double J_imp_inf, double sigma, double tau);

/// Ion pressure tensor sum f (v - u)(v - u)^T dv^3 at one x cell.
Mat3 pressure_tensor(const DistributionFunction& f, int i, const MomentSet& moments);

/// Residual of the ion momentum balance
///   d_t(nu) + d_x(n u u_x + P_x.) + T_e d_x n_e e_x - J x B
///     - (n_e - n_I)/n_e [T_e d_x n_e e_x + (nu - J) x B]
/// between two states dt apart; the time derivative is a forward
/// difference, everything else is averaged over both states. Spatial
/// derivatives are centred with ghost reflection (even for P_xx, n_e; odd
/// for the off-diagonal fluxes).
std::vector<Vec3> momentum_residual(const SimulationState& before, const SimulationState& after,
                                    const RunConfig& config, double dt);

}  // namespace hv
