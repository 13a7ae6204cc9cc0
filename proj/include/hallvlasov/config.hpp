#pragma once

#include <filesystem>
#include <string>

#include "hallvlasov/expression.hpp"
#include "hallvlasov/grid.hpp"

namespace hv {

/// How to build the initial state: a Maxwellian with profile density and
/// drift, plus tangential B perturbations sampled on the faces (added to
/// the imposed field when there is one).
struct InitialRecipe {
  Expression density = Expression::constant(1.0);
  double temperature = 1.0;
  Expression drift_x, drift_y, drift_z;
  Expression By, Bz;
};

struct Setup {
  RunConfig config;
  InitialRecipe initial;
};

/// Reads an INI-style config:
///
///   [grid]     L, Nx, Nv, v_max                       (all required)
///   [physics]  lambda, T_e, eta_const | eta_profile, Bx0
///   [initial]  preset, density, temperature, drift_x, drift_y, drift_z, By, Bz
///   [imposed]  By, Bz                                 (section turns it on)
///   [time]     dt, t_end, splitting_order = lie | strang
///   [solver]   newton_tol, linear_tol, theta, remap_order, limiter
///   [output]   cadence, checkpoint_cadence, directory
///
/// Profiles are expressions in x and L. `preset` is `equilibrium`
/// (uniform Maxwellian, B = 0) or `reference` (adds By = 0.1 sin(pi x / L));
/// explicit keys override it. `#` and `;` start comments.
///
/// Throws ParseError (with the line) for syntax errors, unknown sections or
/// keys, duplicates and missing required keys; ValidationError for values
/// that violate a RunConfig constraint.
Setup parse_config_text(const std::string& text);
Setup parse_config(const std::filesystem::path& path);

/// Samples the recipe on the grid and initialises the state (Poisson solve,
/// first ledger row).
SimulationState build_initial_state(const Setup& setup);

}  // namespace hv
