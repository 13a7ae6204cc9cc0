#pragma once

#include <filesystem>
#include <ostream>

#include "hallvlasov/grid.hpp"

namespace hv {

inline constexpr int kCheckpointFormatVersion = 1;

/// Checkpoint layout: a text header of `key value` lines (floats as
/// hexfloats, so they round-trip exactly) closed by `end_header\n`, then
/// the arrays f, By, Bz, log_ne, M, nuI as raw little-endian doubles in
/// that order. Each array is announced in the header as `array NAME LEN`.
void write_checkpoint(const std::filesystem::path& path, const SimulationState& state);

/// Restores a checkpoint written for `config`'s grid. n_e and J are rebuilt
/// from log_ne and B; the ledger restarts with one row for the restored
/// state and the saved cumulative dissipation.
///
/// Throws CheckpointError on a bad header, a version or grid mismatch, or
/// a payload whose size disagrees with the header.
SimulationState read_checkpoint(const std::filesystem::path& path, const RunConfig& config);

/// energy.csv: t, E_I, E_m, E_es, E_free, E_tot, dissipation_step, residual,
/// and in imposed mode E_m_pert, S, balance_residual.
void write_energy_header(std::ostream& out, bool imposed);
void write_energy_row(std::ostream& out, const LedgerRow& row, bool imposed);

/// Field snapshot at the cell centres: x, n_I, n_e, uIx, uIy, uIz, By, Bz,
/// Jy, Jz (B averaged from the faces).
void write_fields_csv(const std::filesystem::path& path, const SimulationState& state);

}  // namespace hv
