#include "hallvlasov/driver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "hallvlasov/errors.hpp"
#include "hallvlasov/io.hpp"
#include "hallvlasov/splitting.hpp"

namespace hv {

namespace {

std::filesystem::path numbered(const std::filesystem::path& dir, const char* stem, long step, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06ld.%s", stem, step, ext);
  return dir / buf;
}

/// First violated invariant after a step, empty when all hold.
std::string check_invariants(const SimulationState& state, const RunConfig& config, double E_prev) {
  const auto v = validate_state(state);
  if (!v.empty()) return v.front().what + " at index " + std::to_string(v.front().index);
  if (!config.imposed.active && state.ledger.last().E_tot > E_prev + 1e-10) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "E_tot increased by %.3e", state.ledger.last().E_tot - E_prev);
    return buf;
  }
  return {};
}

}  // namespace

RunOutcome run_simulation(SimulationState& state, const RunConfig& config, const std::filesystem::path& out_dir,
                          std::ostream& log) {
  RunOutcome outcome;
  std::filesystem::create_directories(out_dir);
  const bool imposed = config.imposed.active;
  std::ofstream energy(out_dir / "energy.csv", std::ios::trunc);
  if (!energy) throw CheckpointError("cannot write energy.csv in '" + out_dir.string() + "'");
  write_energy_header(energy, imposed);
  write_energy_row(energy, state.ledger.last(), imposed);
  if (config.output_cadence > 0) write_fields_csv(numbered(out_dir, "fields", state.step, "csv"), state);

  const long total = std::lround(config.t_end / config.dt);
  SimulationState good = state;
  auto fail = [&](int code, const std::string& what) {
    outcome.exit_code = code;
    outcome.message = what;
    log << "step " << state.step << ": " << what << "\n";
    write_checkpoint(out_dir / "checkpoint_failure.bin", good);
    return outcome;
  };

  while (state.step < total) {
    const double E_prev = state.ledger.last().E_tot;
    try {
      step(state, config);
    } catch (const NonConvergence& e) {
      return fail(kExitSolver, std::string("solver failure: ") + e.what());
    } catch (const SingularSystem& e) {
      return fail(kExitSolver, std::string("solver failure: ") + e.what());
    } catch (const ExcessiveTruncation& e) {
      return fail(kExitSolver, std::string("solver failure: ") + e.what());
    } catch (const Error& e) {
      // The config was validated up front, so anything else is the solver's.
      return fail(kExitSolver, std::string("solver failure: ") + e.what());
    }
    ++outcome.steps_taken;
    write_energy_row(energy, state.ledger.last(), imposed);
    energy.flush();
    if (const std::string bad = check_invariants(state, config, E_prev); !bad.empty())
      return fail(kExitInvariant, "invariant violated: " + bad);
    good = state;
    if (config.output_cadence > 0 && state.step % config.output_cadence == 0)
      write_fields_csv(numbered(out_dir, "fields", state.step, "csv"), state);
    if (config.checkpoint_cadence > 0 && state.step % config.checkpoint_cadence == 0)
      write_checkpoint(numbered(out_dir, "checkpoint", state.step, "bin"), state);
  }
  write_checkpoint(numbered(out_dir, "checkpoint", state.step, "bin"), state);
  outcome.message = "completed " + std::to_string(outcome.steps_taken) + " steps, t = " + std::to_string(state.t);
  log << outcome.message << "\n";
  return outcome;
}

}  // namespace hv
