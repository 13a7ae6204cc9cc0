#pragma once

#include <span>
#include <vector>

#include "hallvlasov/grid.hpp"
#include "hallvlasov/vec3.hpp"

namespace hv {

/// Velocity moments per x centre.
struct MomentSet {
  std::vector<double> n_I;
  std::vector<Vec3> nu_I;
  std::vector<double> E_I_density;

  /// Sum E_I_density dx.
  double kinetic_energy(double dx) const;
  double mass(double dx) const;
};

/// Midpoint quadrature: n = sum f dv^3, nu = sum f v dv^3,
/// E = 1/2 sum f |v|^2 dv^3.
MomentSet compute_moments(const DistributionFunction& f);

/// Discrete L^p norm with weights dx dv^3; p = infinity gives max |f|.
double lp_norm(const DistributionFunction& f, double p);

/// Discrete L^p norm of an x profile with weight dx.
double profile_lp_norm(std::span<const double> values, double dx, double p);

struct MomentBoundConstants {
  double C;        ///< ||n||_{5/3} <= C ||f||_inf^{2/5} (int f |v|^2)^{3/5}
  double C_prime;  ///< ||n u||_{5/4} <= C' ||f||_inf^{1/5} (int f |v|^2)^{4/5}
};

/// Sharp constants from minimising the two-region split over the radius R
/// in three velocity dimensions:
///   n(x)  <= (4 pi / 3) |f|_inf R^3 + w / R^2
///         -> C  = (4 pi / 3)^{2/5} [(2/3)^{3/5} + (3/2)^{2/5}]
///   |nu(x)| <= pi |f|_inf R^4 + w / R
///         -> C' = pi^{1/5} [4^{-4/5} + 4^{1/5}]
/// where w = int f |v|^2 dv. They do not depend on f (the bounds are
/// homogeneous of degree one in f).
MomentBoundConstants moment_bound_constants();

struct MomentInequalityReport {
  double lhs53 = 0.0, rhs53 = 0.0;
  double lhs54 = 0.0, rhs54 = 0.0;
  bool pass = true;

  double ratio53() const { return rhs53 > 0.0 ? lhs53 / rhs53 : 0.0; }
  double ratio54() const { return rhs54 > 0.0 ? lhs54 / rhs54 : 0.0; }
};

/// Evaluates both interpolation bounds on f; passes iff lhs <= rhs (1 + 1e-12).
MomentInequalityReport check_moment_inequalities(const DistributionFunction& f);

}  // namespace hv
