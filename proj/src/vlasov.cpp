#include "hallvlasov/vlasov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hallvlasov/errors.hpp"

namespace hv {

namespace {

constexpr double kTruncationLimit = 1e-6;

/// Mass and kinetic energy (sums of cell values, before dx dv^3 weighting)
/// that left the velocity box.
struct Loss {
  double mass = 0.0;
  double energy = 0.0;
  Loss& operator+=(const Loss& o) {
    mass += o.mass;
    energy += o.energy;
    return *this;
  }
};

/// Kinetic energy of the mass a remap call dropped; lane l has the squared
/// transverse speed w2(l).
template <class W2>
double dropped_energy(const PhaseSpaceGrid& g, const RemapWorkspace& ws, std::size_t lanes, W2 w2) {
  const double a = g.v(0), b = g.dv();
  double e = 0.0;
  for (std::size_t l = 0; l < lanes; ++l) {
    const double m0 = ws.lost0[l];
    if (m0 == 0.0) continue;
    e += a * a * m0 + 2.0 * a * b * ws.lost1[l] + b * b * ws.lost2[l] + w2(l) * m0;
  }
  return 0.5 * e;
}

/// Strides of the three velocity axes inside one x slab.
std::array<std::ptrdiff_t, 3> velocity_strides(int Nv) {
  return {static_cast<std::ptrdiff_t>(Nv) * Nv, Nv, 1};
}

/// Translates every line along `line_axis` of one slab. The shift may depend
/// on the index along `dep_axis` (or be uniform when dep_axis < 0); lines
/// sharing a shift are batched as contiguous lanes.
template <class ShiftFn>
Loss axis_pass(double* slab, const PhaseSpaceGrid& g, int line_axis, int dep_axis, ShiftFn shift_of, const RemapKernel& kernel,
                 std::vector<double>& buf, RemapWorkspace& ws) {
  const int Nv = g.Nv();
  const auto s = velocity_strides(Nv);
  int other_a = -1, other_b = -1;
  for (int ax = 0; ax < 3; ++ax) {
    if (ax == line_axis || ax == dep_axis) continue;
    if (other_a < 0) {
      other_a = ax;
    } else {
      other_b = ax;
    }
  }
  // buf[j_line][j_mid][j_fast]
  const int mid_axis = dep_axis >= 0 ? dep_axis : other_a;
  const int fast_axis = dep_axis >= 0 ? other_a : other_b;
  const std::ptrdiff_t sl = s[line_axis], sm = s[mid_axis], sf = s[fast_axis];
  const std::size_t n2 = static_cast<std::size_t>(Nv) * Nv;
  buf.resize(n2 * Nv);
  for (int jl = 0; jl < Nv; ++jl)
    for (int jm = 0; jm < Nv; ++jm)
      for (int jf = 0; jf < Nv; ++jf) buf[(jl * n2) + jm * Nv + jf] = slab[jl * sl + jm * sm + jf * sf];

  Loss lost;
  if (dep_axis < 0) {
    lost.mass += remap_lines(buf.data(), Nv, static_cast<std::ptrdiff_t>(n2), static_cast<int>(n2), shift_of(0),
                             kernel, LineBoundary::ZeroExtend, ws);
    lost.energy += dropped_energy(g, ws, n2, [&](std::size_t l) {
      const double vm = g.v(static_cast<int>(l) / Nv), vf = g.v(static_cast<int>(l) % Nv);
      return vm * vm + vf * vf;
    });
  } else {
    for (int jm = 0; jm < Nv; ++jm) {
      lost.mass += remap_lines(buf.data() + static_cast<std::size_t>(jm) * Nv, Nv, static_cast<std::ptrdiff_t>(n2),
                               Nv, shift_of(jm), kernel, LineBoundary::ZeroExtend, ws);
      const double vm = g.v(jm);
      lost.energy += dropped_energy(g, ws, Nv, [&](std::size_t l) {
        const double vf = g.v(static_cast<int>(l));
        return vm * vm + vf * vf;
      });
    }
  }

  for (int jl = 0; jl < Nv; ++jl)
    for (int jm = 0; jm < Nv; ++jm)
      for (int jf = 0; jf < Nv; ++jf) slab[jl * sl + jm * sm + jf * sf] = buf[(jl * n2) + jm * Nv + jf];
  return lost;
}

/// Exact rotation by +90 degrees in the (p, q) plane: f'(p, q) = f(q, -p).
void quarter_turn(double* slab, int Nv, int p_axis, int q_axis, std::vector<double>& buf) {
  const auto s = velocity_strides(Nv);
  const int r_axis = 3 - p_axis - q_axis;
  const std::size_t n = static_cast<std::size_t>(Nv) * Nv * Nv;
  buf.assign(slab, slab + n);
  for (int jp = 0; jp < Nv; ++jp)
    for (int jq = 0; jq < Nv; ++jq)
      for (int jr = 0; jr < Nv; ++jr)
        slab[jp * s[p_axis] + jq * s[q_axis] + jr * s[r_axis]] =
            buf[jq * s[p_axis] + (Nv - 1 - jp) * s[q_axis] + jr * s[r_axis]];
}

/// Pushes the slab forward under the rotation (p, q) -> (p cos t - q sin t,
/// p sin t + q cos t).
Loss planar_rotation(double* slab, const PhaseSpaceGrid& g, int p_axis, int q_axis, double angle,
                       const RemapKernel& kernel, std::vector<double>& buf, std::vector<double>& buf2,
                       RemapWorkspace& ws) {
  if (angle == 0.0) return {};
  const int Nv = g.Nv();
  const double half_pi = 0.5 * std::numbers::pi;
  const long turns = std::lround(angle / half_pi);
  const double phi = angle - static_cast<double>(turns) * half_pi;
  for (long k = 0; k < ((turns % 4) + 4) % 4; ++k) quarter_turn(slab, Nv, p_axis, q_axis, buf2);
  if (phi == 0.0) return {};

  const double a = -std::tan(0.5 * phi);
  const double b = std::sin(phi);
  const double dv = g.dv();
  Loss lost;
  auto shear_p = [&](int jq) { return a * g.v(jq) / dv; };
  auto shear_q = [&](int jp) { return b * g.v(jp) / dv; };
  lost += axis_pass(slab, g, p_axis, q_axis, shear_p, kernel, buf, ws);
  lost += axis_pass(slab, g, q_axis, p_axis, shear_q, kernel, buf, ws);
  lost += axis_pass(slab, g, p_axis, q_axis, shear_p, kernel, buf, ws);
  return lost;
}

Loss translate_slab(double* slab, const PhaseSpaceGrid& g, const Vec3& dv, const RemapKernel& kernel,
                    std::vector<double>& buf, RemapWorkspace& ws) {
  Loss lost;
  for (int ax = 0; ax < 3; ++ax) {
    if (dv[ax] == 0.0) continue;
    const double shift = dv[ax] / g.dv();
    lost += axis_pass(slab, g, ax, -1, [shift](int) { return shift; }, kernel, buf, ws);
  }
  return lost;
}

/// Fits M(v) = A exp(-|v - c|^2 / 2T) to one slab, with c a fixed point of
/// v -> R(angle, axis) v + t (the one nearest the slab's mean along the axis)
/// and A, T matching the slab's mass and its second moment about c. The
/// exact flow leaves M invariant, so only f - M needs remapping. Returns
/// false when no such fit exists.
bool fit_invariant_maxwellian(const double* slab, const PhaseSpaceGrid& g, const Vec3& axis, double angle,
                              const Vec3& t, std::vector<double>& M) {
  const int Nv = g.Nv();
  const double half = 0.5 * angle;
  if (std::abs(std::sin(half)) < 1e-8) return false;
  std::array<std::vector<double>, 3> marg;
  for (auto& m : marg) m.assign(Nv, 0.0);
  for (int a = 0; a < Nv; ++a)
    for (int b = 0; b < Nv; ++b)
      for (int c = 0; c < Nv; ++c) {
        const double v = slab[(static_cast<std::size_t>(a) * Nv + b) * Nv + c];
        marg[0][a] += v;
        marg[1][b] += v;
        marg[2][c] += v;
      }
  double S = 0.0;
  for (double v : marg[0]) S += v;
  if (!(S > 0.0)) return false;
  Vec3 mean{0.0, 0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    for (int a = 0; a < Nv; ++a) mean[k] += g.v(a) * marg[k][a];
    mean[k] /= S;
  }
  const Vec3 t_perp = t - dot(t, axis) * axis;
  const Vec3 c = dot(mean, axis) * axis + 0.5 * t_perp + (0.5 * std::cos(half) / std::sin(half)) * cross(axis, t_perp);
  double target = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int a = 0; a < Nv; ++a) target += (g.v(a) - c[k]) * (g.v(a) - c[k]) * marg[k][a];
  target /= S;

  std::array<std::vector<double>, 3> e;
  for (auto& v : e) v.resize(Nv);
  std::array<double, 3> s0{};
  auto spread = [&](double T) {
    double r = 0.0;
    for (int k = 0; k < 3; ++k) {
      double z = 0.0, w = 0.0;
      for (int a = 0; a < Nv; ++a) {
        const double d2 = (g.v(a) - c[k]) * (g.v(a) - c[k]);
        e[k][a] = std::exp(-d2 / (2.0 * T));
        z += e[k][a];
        w += d2 * e[k][a];
      }
      s0[k] = z;
      r += w / z;
    }
    return r;
  };
  // The spread grows monotonically with T; bisect in log T.
  double lo = std::log(1e-3 * g.dv() * g.dv()), hi = std::log(1e3 * g.v_max() * g.v_max());
  if (!(spread(std::exp(lo)) < target && target < spread(std::exp(hi)))) return false;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (spread(std::exp(mid)) < target ? lo : hi) = mid;
  }
  spread(std::exp(0.5 * (lo + hi)));
  const double A = S / (s0[0] * s0[1] * s0[2]);
  M.resize(static_cast<std::size_t>(Nv) * Nv * Nv);
  for (int a = 0; a < Nv; ++a)
    for (int b = 0; b < Nv; ++b) {
      const double ab = A * e[0][a] * e[1][b];
      double* row = M.data() + (static_cast<std::size_t>(a) * Nv + b) * Nv;
      for (int k = 0; k < Nv; ++k) row[k] = ab * e[2][k];
    }
  return true;
}

void check_truncation(double lost, double total, const char* who) {
  if (lost > kTruncationLimit * total) {
    throw ExcessiveTruncation(std::string(who) + ": mass " + std::to_string(lost) + " left the velocity box (total " +
                              std::to_string(total) + "); increase v_max");
  }
}

}  // namespace

TransportReport advect_x(DistributionFunction& f, double dt, const RemapKernel& kernel) {
  TransportReport report;
  if (dt == 0.0) return report;
  const PhaseSpaceGrid& g = f.grid();
  const int Nx = g.Nx(), Nv = g.Nv();
  const std::size_t lanes = static_cast<std::size_t>(Nv) * Nv;
  const std::size_t vs = g.velocity_size();
  double* data = f.values().data();

  std::vector<double> ring(2 * Nx * lanes);
  RemapWorkspace ws;
  for (int a = Nv / 2; a < Nv; ++a) {
    const int m = g.mirror(a);
    // ring cell r < Nx: (x_r, +v); ring cell Nx + r: (x_{Nx-1-r}, -v)
    for (int r = 0; r < Nx; ++r) {
      std::copy_n(data + r * vs + a * lanes, lanes, ring.data() + r * lanes);
      std::copy_n(data + (Nx - 1 - r) * vs + m * lanes, lanes, ring.data() + (Nx + r) * lanes);
    }
    remap_lines(ring.data(), 2 * Nx, static_cast<std::ptrdiff_t>(lanes), static_cast<int>(lanes),
                g.v(a) * dt / g.dx(), kernel, LineBoundary::Periodic, ws);
    for (int r = 0; r < Nx; ++r) {
      std::copy_n(ring.data() + r * lanes, lanes, data + r * vs + a * lanes);
      std::copy_n(ring.data() + (Nx + r) * lanes, lanes, data + (Nx - 1 - r) * vs + m * lanes);
    }
  }
  return report;
}

TransportReport shift_v(DistributionFunction& f, std::span<const Vec3> dv, const RemapKernel& kernel) {
  const PhaseSpaceGrid& g = f.grid();
  if (static_cast<int>(dv.size()) != g.Nx()) throw InvalidInput("shift_v: one shift per x cell expected");
  const double total = f.total_mass();
  std::vector<double> buf;
  RemapWorkspace ws;
  Loss lost;
  for (int i = 0; i < g.Nx(); ++i) {
    for (int ax = 0; ax < 3; ++ax) {
      if (!std::isfinite(dv[i][ax])) throw InvalidInput("shift_v: velocity shift is not finite");
      if (std::abs(dv[i][ax]) >= g.Nv() * g.dv())
        throw ExcessiveTruncation("shift_v: velocity shift exceeds the box; increase v_max or reduce dt");
    }
    lost += translate_slab(f.slab(i).data(), g, dv[i], kernel, buf, ws);
  }
  const TransportReport report{lost.mass * g.dx() * g.dv3(), lost.energy * g.dx() * g.dv3()};
  check_truncation(report.lost_mass, total, "shift_v");
  return report;
}

std::array<double, 3> tait_bryan_xyz(const Mat3& R) {
  const double s = std::clamp(R[0][2], -1.0, 1.0);
  const double b = std::asin(s);
  if (std::abs(s) > 1.0 - 1e-12) return {std::atan2(R[2][1], R[1][1]), b, 0.0};
  return {std::atan2(-R[1][2], R[2][2]), b, std::atan2(-R[0][1], R[0][0])};
}

TransportReport rotate_v(DistributionFunction& f, std::span<const RotationData> rotation, double dt,
                         const RemapKernel& kernel) {
  const PhaseSpaceGrid& g = f.grid();
  if (static_cast<int>(rotation.size()) != g.Nx()) throw InvalidInput("rotate_v: one rotation per x cell expected");
  const double total = f.total_mass();
  std::vector<double> buf, buf2, M, saved;
  RemapWorkspace ws;
  Loss lost;
  const RemapKernel deviation_kernel{kernel.order, Limiter::None, std::numeric_limits<double>::infinity(), false};
  for (int i = 0; i < g.Nx(); ++i) {
    const RotationData& rd = rotation[i];
    const double bn = norm(rd.B);
    if (bn == 0.0 || dt == 0.0) continue;
    const Vec3 axis = rd.B / bn;
    const Mat3 R = rotation_matrix(axis, -bn * dt);
    const auto [ax, by, cz] = tait_bryan_xyz(R);
    double* slab = f.slab(i).data();
    const Vec3 t = rotate(rd.u, axis, -rd.kappa * bn * dt) - apply(R, rd.u);
    auto push = [&](const RemapKernel& k) {
      // R = Rx Ry Rz: z rotation acts first. Planes: z -> (x, y), y -> (z, x), x -> (y, z).
      Loss l = planar_rotation(slab, g, 0, 1, cz, k, buf, buf2, ws);
      l += planar_rotation(slab, g, 2, 0, by, k, buf, buf2, ws);
      l += planar_rotation(slab, g, 1, 2, ax, k, buf, buf2, ws);
      l += translate_slab(slab, g, t, k, buf, ws);
      return l;
    };
    if (fit_invariant_maxwellian(slab, g, axis, -bn * dt, t, M)) {
      // Remap only the deviation from the invariant Maxwellian; keep the
      // result unless it dips below zero.
      saved.assign(slab, slab + M.size());
      for (std::size_t k = 0; k < M.size(); ++k) slab[k] -= M[k];
      const Loss l = push(deviation_kernel);
      bool positive = true;
      for (std::size_t k = 0; k < M.size(); ++k) {
        slab[k] += M[k];
        positive = positive && slab[k] >= 0.0;
      }
      if (positive) {
        lost += l;
        continue;
      }
      std::copy(saved.begin(), saved.end(), slab);
    }
    lost += push(kernel);
  }
  const TransportReport report{lost.mass * g.dx() * g.dv3(), lost.energy * g.dx() * g.dv3()};
  check_truncation(report.lost_mass, total, "rotate_v");
  return report;
}

Vec3 ion_momentum_rotation(const Vec3& nu, const Vec3& d, double dt) { return rotate(nu, d, -norm(d) * dt); }

std::array<double, 2> wall_normal_velocity(const DistributionFunction& f) {
  const PhaseSpaceGrid& g = f.grid();
  const int Nx = g.Nx(), Nv = g.Nv();
  const std::size_t lanes = static_cast<std::size_t>(Nv) * Nv;
  const std::size_t vs = g.velocity_size();
  const double* data = f.values().data();
  auto at = [&](int i, int a, std::size_t l) { return data[i * vs + a * lanes + l]; };
  // Ring neighbours of each wall face, fourth-order face value as in the remap.
  auto face = [](double fm1, double f0, double fp1, double fp2) { return (7.0 * (f0 + fp1) - (fm1 + fp2)) / 12.0; };

  std::array<double, 2> out{0.0, 0.0};
  for (int wall = 0; wall < 2; ++wall) {
    const int i0 = wall == 0 ? 0 : Nx - 1;
    const int i1 = wall == 0 ? std::min(1, Nx - 1) : std::max(Nx - 2, 0);
    double n = 0.0, flux = 0.0;
    for (int a = 0; a < Nv; ++a) {
      const int m = g.mirror(a);
      for (std::size_t l = 0; l < lanes; ++l) {
        // unfolded: ..., (i1, m), (i0, m) | (i0, a), (i1, a), ...
        const double fw = face(at(i1, m, l), at(i0, m, l), at(i0, a, l), at(i1, a, l));
        n += fw;
        flux += g.v(a) * fw;
      }
    }
    out[wall] = n > 0.0 ? flux / n : 0.0;
  }
  return out;
}

}  // namespace hv
