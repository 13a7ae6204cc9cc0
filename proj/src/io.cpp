#include "hallvlasov/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "hallvlasov/diagnostics.hpp"
#include "hallvlasov/errors.hpp"
#include "hallvlasov/moments.hpp"

namespace hv {

namespace {

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::string decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_array(std::ostream& out, const double* data, std::size_t n) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      const auto bits = __builtin_bswap64(std::bit_cast<std::uint64_t>(data[k]));
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
}

void read_array(std::istream& in, double* data, std::size_t n, const std::string& name) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != n * sizeof(double))
    throw CheckpointError("checkpoint: payload too short in array " + name);
  if constexpr (std::endian::native != std::endian::little) {
    for (std::size_t k = 0; k < n; ++k)
      data[k] = std::bit_cast<double>(__builtin_bswap64(std::bit_cast<std::uint64_t>(data[k])));
  }
}

double parse_hex(const std::string& s, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw CheckpointError("checkpoint: bad value for " + key);
  return v;
}

constexpr const char* kArrays[] = {"f", "By", "Bz", "log_ne", "M", "nuI"};

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const SimulationState& state) {
  const PhaseSpaceGrid& g = state.f.grid();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("checkpoint: cannot open '" + path.string() + "' for writing");
  const std::size_t Nx = static_cast<std::size_t>(g.Nx());
  out << "hallvlasov-checkpoint\n"
      << "format_version " << kCheckpointFormatVersion << "\n"
      << "L " << hex(g.L()) << "\n"
      << "Nx " << g.Nx() << "\n"
      << "v_max " << hex(g.v_max()) << "\n"
      << "Nv " << g.Nv() << "\n"
      << "t " << hex(state.t) << "\n"
      << "step " << state.step << "\n"
      << "D_cum " << hex(state.ledger.D_cum) << "\n"
      << "lost_mass " << hex(state.lost_mass) << "\n"
      << "Bx0 " << hex(state.fields.Bx0) << "\n"
      << "array f " << g.size() << "\n"
      << "array By " << Nx + 1 << "\n"
      << "array Bz " << Nx + 1 << "\n"
      << "array log_ne " << Nx << "\n"
      << "array M " << 3 * Nx << "\n"
      << "array nuI " << 3 * Nx << "\n"
      << "end_header\n";
  write_array(out, state.f.values().data(), g.size());
  write_array(out, state.fields.By.data(), Nx + 1);
  write_array(out, state.fields.Bz.data(), Nx + 1);
  write_array(out, state.fields.log_ne.data(), Nx);
  write_array(out, state.M.data()->data(), 3 * Nx);
  write_array(out, state.nuI.data()->data(), 3 * Nx);
  if (!out) throw CheckpointError("checkpoint: write failed for '" + path.string() + "'");
}

SimulationState read_checkpoint(const std::filesystem::path& path, const RunConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("checkpoint: cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "hallvlasov-checkpoint") throw CheckpointError("checkpoint: bad magic line");

  std::map<std::string, std::string> header;
  std::vector<std::pair<std::string, std::size_t>> arrays;
  bool closed = false;
  while (std::getline(in, line)) {
    if (line == "end_header") {
      closed = true;
      break;
    }
    std::istringstream ls(line);
    std::string key, value;
    ls >> key >> value;
    if (key == "array") {
      std::size_t n = 0;
      if (!(ls >> n)) throw CheckpointError("checkpoint: bad array line '" + line + "'");
      arrays.emplace_back(value, n);
    } else if (!key.empty()) {
      header[key] = value;
    }
  }
  if (!closed) throw CheckpointError("checkpoint: missing end_header");
  auto get = [&](const std::string& k) -> const std::string& {
    const auto it = header.find(k);
    if (it == header.end()) throw CheckpointError("checkpoint: header lacks '" + k + "'");
    return it->second;
  };
  if (get("format_version") != std::to_string(kCheckpointFormatVersion))
    throw CheckpointError("checkpoint: unsupported format_version " + get("format_version"));

  const PhaseSpaceGrid& g = config.grid;
  const bool same_grid = parse_hex(get("L"), "L") == g.L() && get("Nx") == std::to_string(g.Nx()) &&
                         parse_hex(get("v_max"), "v_max") == g.v_max() && get("Nv") == std::to_string(g.Nv());
  if (!same_grid) throw CheckpointError("checkpoint: grid differs from the config grid");

  const std::size_t Nx = static_cast<std::size_t>(g.Nx());
  const std::size_t expected[] = {g.size(), Nx + 1, Nx + 1, Nx, 3 * Nx, 3 * Nx};
  if (arrays.size() != 6) throw CheckpointError("checkpoint: expected 6 arrays");
  for (int k = 0; k < 6; ++k)
    if (arrays[k].first != kArrays[k] || arrays[k].second != expected[k])
      throw CheckpointError("checkpoint: array " + std::to_string(k) + " should be " + kArrays[k] + " of length " +
                            std::to_string(expected[k]));

  SimulationState s;
  s.t = parse_hex(get("t"), "t");
  s.step = std::stol(get("step"));
  s.lost_mass = parse_hex(get("lost_mass"), "lost_mass");
  s.f = DistributionFunction(g);
  s.fields = FieldState::zeros(g, parse_hex(get("Bx0"), "Bx0"));
  s.M.resize(Nx);
  s.nuI.resize(Nx);
  read_array(in, s.f.values().data(), g.size(), "f");
  read_array(in, s.fields.By.data(), Nx + 1, "By");
  read_array(in, s.fields.Bz.data(), Nx + 1, "Bz");
  read_array(in, s.fields.log_ne.data(), Nx, "log_ne");
  read_array(in, s.M.data()->data(), 3 * Nx, "M");
  read_array(in, s.nuI.data()->data(), 3 * Nx, "nuI");
  if (in.peek() != std::char_traits<char>::eof()) throw CheckpointError("checkpoint: trailing bytes after payload");

  for (std::size_t i = 0; i < Nx; ++i) s.fields.n_e[i] = std::exp(s.fields.log_ne[i]);
  s.fields.update_current(g.dx());
  s.ledger.D_cum = parse_hex(get("D_cum"), "D_cum");
  compute_ledger(s, config);
  return s;
}

void write_energy_header(std::ostream& out, bool imposed) {
  out << "t,E_I,E_m,E_es,E_free,E_tot,dissipation_step,residual";
  if (imposed) out << ",E_m_pert,S,balance_residual";
  out << "\n";
}

void write_energy_row(std::ostream& out, const LedgerRow& r, bool imposed) {
  out << decimal(r.t) << ',' << decimal(r.E_I) << ',' << decimal(r.E_m) << ',' << decimal(r.E_es) << ','
      << decimal(r.E_free) << ',' << decimal(r.E_tot) << ',' << decimal(r.dissipation_step) << ','
      << decimal(r.residual);
  if (imposed) out << ',' << decimal(r.E_m_pert) << ',' << decimal(r.S) << ',' << decimal(r.balance_residual);
  out << "\n";
}

void write_fields_csv(const std::filesystem::path& path, const SimulationState& state) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CheckpointError("cannot open '" + path.string() + "' for writing");
  const PhaseSpaceGrid& g = state.f.grid();
  const MomentSet m = compute_moments(state.f);
  const std::vector<Vec3> B = state.fields.centered_B();
  out << "x,n_I,n_e,uIx,uIy,uIz,By,Bz,Jy,Jz\n";
  for (int i = 0; i < g.Nx(); ++i) {
    const double n = m.n_I[i];
    const Vec3 u = n > 0.0 ? m.nu_I[i] / n : Vec3{0.0, 0.0, 0.0};
    out << decimal(g.x_center(i)) << ',' << decimal(n) << ',' << decimal(state.fields.n_e[i]) << ','
        << decimal(u[0]) << ',' << decimal(u[1]) << ',' << decimal(u[2]) << ',' << decimal(B[i][1]) << ','
        << decimal(B[i][2]) << ',' << decimal(state.fields.J_y[i]) << ',' << decimal(state.fields.J_z[i]) << "\n";
  }
}

}  // namespace hv
