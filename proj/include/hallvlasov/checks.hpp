#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hv {

struct CheckRow {
  std::string suite;
  std::string name;
  double measured = 0.0;
  /// "<=", ">=", "in" (range [lo, hi]) or "==".
  std::string relation;
  double lo = 0.0, hi = 0.0;
  bool pass = false;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// moments, poisson, induction, vlasov, splitting, energy, perturbed.
const std::vector<std::string>& check_suite_names();

/// Runs one suite (or "all"). Throws InvalidInput for an unknown name.
std::vector<CheckRow> run_check_suite(const std::string& suite, std::uint64_t seed = kDefaultSeed);

/// Prints a pass/fail table; returns true iff every row passed.
bool print_check_table(std::ostream& out, const std::vector<CheckRow>& rows);

/// C, C' with their closed forms and sample horizons T*(J, C_data).
void print_derived_constants(std::ostream& out);

}  // namespace hv
