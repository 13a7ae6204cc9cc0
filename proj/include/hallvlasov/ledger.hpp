#pragma once

#include <vector>

namespace hv {

/// One row of the energy account. Electron terms (E_es, E_free) are stored
/// unweighted; E_tot weights them by T_e.
struct LedgerRow {
  double t = 0.0;
  double E_I = 0.0;
  double E_m = 0.0;
  double E_es = 0.0;
  double E_free = 0.0;
  double E_tot = 0.0;
  /// dt * sum eta |J^theta|^2 dx of the step that produced this row.
  double dissipation_step = 0.0;
  /// Kinetic energy carried out of the velocity box during the step.
  double truncation_step = 0.0;
  /// E_tot(t_k+1) - E_tot(t_k) + dissipation_step + truncation_step.
  double residual = 0.0;

  // Imposed-field bookkeeping; zero in homogeneous mode.
  double E_m_pert = 0.0;
  double E_tot_pert = 0.0;
  /// Source of the perturbed balance, time-averaged over the step.
  double S = 0.0;
  /// dE_tot_pert/dt + sum eta |J_pert|^2 dx - S (truncation credited as in
  /// `residual`).
  double balance_residual = 0.0;
};

struct EnergyLedger {
  /// Cumulative resistive dissipation.
  double D_cum = 0.0;
  std::vector<LedgerRow> history;

  const LedgerRow& last() const { return history.back(); }
  bool empty() const { return history.empty(); }
};

}  // namespace hv
