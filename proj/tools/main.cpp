#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "hallvlasov/checks.hpp"
#include "hallvlasov/config.hpp"
#include "hallvlasov/driver.hpp"
#include "hallvlasov/errors.hpp"
#include "hallvlasov/io.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out, std::uint64_t seed) {
  const hv::Setup setup = hv::parse_config(config_path);
  const std::filesystem::path dir = out.empty() ? setup.config.output_directory : out;
  std::cout << "config " << config_path << " -> " << dir.string() << " (seed " << seed << ")\n";
  hv::SimulationState state = hv::build_initial_state(setup);
  return hv::run_simulation(state, setup.config, dir, std::cout).exit_code;
}

int resume_command(const std::string& checkpoint, const std::string& config_path, const std::string& out) {
  const hv::Setup setup = hv::parse_config(config_path);
  const std::filesystem::path dir = out.empty() ? setup.config.output_directory : out;
  hv::SimulationState state = hv::read_checkpoint(checkpoint, setup.config);
  std::cout << "resuming " << checkpoint << " at step " << state.step << " -> " << dir.string() << "\n";
  return hv::run_simulation(state, setup.config, dir, std::cout).exit_code;
}

int check_command(const std::string& suite, std::uint64_t seed) {
  std::cout << "check " << suite << " (seed " << seed << ")\n";
  const auto rows = hv::run_check_suite(suite, seed);
  return hv::print_check_table(std::cout, rows) ? hv::kExitOk : hv::kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hall-MHD / kinetic-ion slab solver"};
  app.require_subcommand(1);

  std::string config_path, out, checkpoint, suite;
  std::uint64_t seed = hv::kDefaultSeed;

  auto* run = app.add_subcommand("run", "Run a simulation from a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out, "Output directory (overrides [output] directory)");
  run->add_option("--seed", seed, "Random seed");

  auto* check = app.add_subcommand("check", "Run an invariant suite");
  check->add_option("suite", suite, "moments, poisson, induction, vlasov, splitting, energy, perturbed or all")
      ->required();
  check->add_option("--seed", seed, "Random seed");

  auto* derive = app.add_subcommand("derive-constants", "Print the derived constants");

  auto* resume = app.add_subcommand("resume", "Continue a run from a checkpoint");
  resume->add_option("checkpoint", checkpoint, "Checkpoint file")->required();
  resume->add_option("config", config_path, "Config file of the run")->required();
  resume->add_option("--out", out, "Output directory (overrides [output] directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hv::kExitOk : hv::kExitUsage;
  }

  try {
    if (run->parsed()) return run_command(config_path, out, seed);
    if (resume->parsed()) return resume_command(checkpoint, config_path, out);
    if (check->parsed()) return check_command(suite, seed);
    if (derive->parsed()) {
      hv::print_derived_constants(std::cout);
      return hv::kExitOk;
    }
  } catch (const hv::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return hv::kExitUsage;
  } catch (const hv::ValidationError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return hv::kExitUsage;
  } catch (const hv::CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << "\n";
    return hv::kExitUsage;
  } catch (const hv::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return hv::kExitUsage;
  } catch (const hv::TailTruncation& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return hv::kExitUsage;
  } catch (const hv::Error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return hv::kExitSolver;
  }
  return hv::kExitUsage;
}
