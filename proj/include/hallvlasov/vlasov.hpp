#pragma once

#include <span>
#include <vector>

#include "hallvlasov/grid.hpp"
#include "hallvlasov/remap.hpp"
#include "hallvlasov/vec3.hpp"

namespace hv {

/// Mass bookkeeping returned by every phase-space kernel.
struct TransportReport {
  /// Mass (sum f dx dv^3) pushed out of the velocity box.
  double lost_mass = 0.0;
  /// Kinetic energy of that mass, each piece valued at the centre of the
  /// outside cell it was sent to.
  double lost_energy = 0.0;
};

/// Free streaming over dt with specular walls.
///
/// Each (v_x, -v_x) column pair is unfolded onto a periodic ring of 2 Nx
/// cells (the -v_x column mirrored behind the right wall), translated by
/// v_x dt and folded back, which is the exact reflected characteristic flow.
/// Mass per column pair and the kinetic energy are preserved to round-off.
TransportReport advect_x(DistributionFunction& f, double dt, const RemapKernel& kernel);

/// f(x, v) <- f(x, v - dv(x)), one conservative remap per velocity axis.
/// Throws ExcessiveTruncation when more than 1e-6 of the mass leaves the box
/// or a shift spans the whole box.
TransportReport shift_v(DistributionFunction& f, std::span<const Vec3> dv, const RemapKernel& kernel);

/// Exact flow of dv/dt = (v - nu/n_e) x B with n_I, n_e, B frozen.
///
/// With u = nu / n_I and d = kappa B, kappa = 1 - n_I / n_e, the ion mean
/// rotates at rate |d| while the peculiar velocity v - u rotates at the
/// cyclotron rate |B|:
///   v(t) = R(-|B| t, B^)(v0 - u0) + R(-kappa |B| t, B^) u0.
struct RotationData {
  Vec3 B{0.0, 0.0, 0.0};
  Vec3 u{0.0, 0.0, 0.0};
  double kappa = 0.0;
};

/// Applies the map above to every x slab. The rotation part is factored into
/// three planar rotations, each done as three shears (conservative 1D remaps
/// along single axes) after an exact quarter-turn reduction; the translation
/// part is one shift per axis. Each slab first has its best-fitting
/// Maxwellian centred on a fixed point of the map subtracted; the map leaves
/// that Maxwellian invariant, so only the deviation is remapped (unlimited),
/// falling back to remapping the whole slab if the sum would go negative.
TransportReport rotate_v(DistributionFunction& f, std::span<const RotationData> rotation, double dt,
                         const RemapKernel& kernel);

/// nu' = R(-|d| dt, d^) nu, the exact solution of dnu/dt = nu x d.
Vec3 ion_momentum_rotation(const Vec3& nu, const Vec3& d, double dt);

/// Rotation angles (a, b, c) with R = Rx(a) Ry(b) Rz(c).
std::array<double, 3> tait_bryan_xyz(const Mat3& R);

/// Normal ion flux sum v_x f dv^3 evaluated on the wall faces x = 0 and
/// x = L from the same reconstruction advect_x uses, divided by the wall
/// density. Specular reflection makes both vanish.
std::array<double, 2> wall_normal_velocity(const DistributionFunction& f);

}  // namespace hv
