#pragma once

#include <string>
#include <vector>

#include "hallvlasov/diagnostics.hpp"
#include "hallvlasov/grid.hpp"
#include "hallvlasov/induction.hpp"

namespace hv {

struct StageRecord {
  std::string name;
  EnergyTerms before, after;
  double seconds = 0.0;
};

/// Optional per-stage bookkeeping of one step.
struct StageTrace {
  std::vector<StageRecord> stages;
  /// Frozen coefficients of the last magnetic stages.
  std::vector<Vec3> B_frozen;
  std::vector<double> n_I_frozen, n_e_frozen;
};

/// What a stage contributes to the step's energy account.
struct StageReport {
  /// dt sum eta |J^theta - J_imp|^2 dx (magnetic stage 1 only).
  double dissipation = 0.0;
  /// dt S^theta (magnetic stage 1 only, imposed mode).
  double source = 0.0;
  double lost_mass = 0.0;
  double lost_energy = 0.0;
  int newton_iters = 0;
};

/// Builds the initial state: solves for n_e, derives J, records the ion
/// momentum and the first ledger row.
SimulationState initialize_state(const RunConfig& config, DistributionFunction f, FieldState fields);

/// Gradient of a centre profile paired with the free-streaming flux: the
/// transpose of the fourth-order face interpolation (7, 7, -1, -1)/12
/// applied to the face differences, with the odd reflection nu_x has on the
/// unfolded ring. sum_i nu_i G_i dx then equals the sum over faces of the
/// interpolated flux times the face difference of u, which is what free
/// streaming does to the electron energy. Second-order accurate.
std::vector<double> transport_dual_gradient(std::span<const double> u, double dx);

/// Vlasov-Poisson stage, Strang sub-split: half free streaming, Poisson
/// solve, kick by -T_e G(ln n_e) dt with G = transport_dual_gradient, half
/// free streaming, then a final Poisson solve so n_e matches the new n_I.
/// B is untouched.
StageReport stage_vlasov_poisson(SimulationState& state, const RunConfig& config, double dt);

/// Magnetic stage 1 with (n_I, n_e, B) frozen at entry: implicit linear
/// field solve, then the v-translation (M / n_e) x B_frozen of f. Under
/// Strang splitting the solve is repeated once with B frozen at the mean of
/// the entry and predicted exit fields, which keeps the stage second order.
StageReport stage_magnetic_1(SimulationState& state, const RunConfig& config, double dt,
                             Stage1Result* detail = nullptr, StageTrace* trace = nullptr);

/// Magnetic stage 2 with (B, n_I, n_e) frozen: exact rotation of the ion
/// momentum about d = (1 - n_I/n_e) B and the matching phase-space flow.
StageReport stage_magnetic_2(SimulationState& state, const RunConfig& config, double dt,
                             StageTrace* trace = nullptr);

/// One step of size config.dt. Lie: VP, M1, M2. Strang: VP/2, M2/2, M1,
/// M2/2, VP/2. Appends one ledger row and returns it.
const LedgerRow& step(SimulationState& state, const RunConfig& config, StageTrace* trace = nullptr);

}  // namespace hv
