#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hallvlasov/grid.hpp"

namespace hv {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvariant = 2,
  kExitSolver = 3,
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string message;
  long steps_taken = 0;
};

/// Advances `state` to config.t_end, writing into `out_dir`:
///   energy.csv             one row per step (plus the starting row)
///   fields_<step>.csv      every output_cadence steps
///   checkpoint_<step>.bin  every checkpoint_cadence steps and at the end
///
/// After every step the state is checked: f >= 0, n_e > 0 and, in
/// homogeneous mode, E_tot(t_k+1) <= E_tot(t_k) + 1e-10. A violation stops
/// the run with kExitInvariant; a solver error (non-convergence, singular
/// solve, excessive truncation) with kExitSolver. Both write
/// checkpoint_failure.bin with the last good state.
RunOutcome run_simulation(SimulationState& state, const RunConfig& config, const std::filesystem::path& out_dir,
                          std::ostream& log);

}  // namespace hv
