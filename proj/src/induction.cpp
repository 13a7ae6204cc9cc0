#include "hallvlasov/induction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hallvlasov/errors.hpp"
#include "hallvlasov/summation.hpp"
#include "lapack.hpp"

namespace hv {

namespace {

using Block = std::array<std::array<double, 2>, 2>;

// Q maps a face difference (dBy, dBz) to dx * (J_y, J_z) and a centre
// difference (dWy, dWz) to dx * curl(W) at the face.
constexpr Block kQ{{{0.0, -1.0}, {1.0, 0.0}}};

Block mul(const Block& a, const Block& b) {
  Block r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

std::array<double, 2> mul(const Block& a, const std::array<double, 2>& x) {
  return {a[0][0] * x[0] + a[0][1] * x[1], a[1][0] * x[0] + a[1][1] * x[1]};
}

}  // namespace

Current compute_current(std::span<const double> By, std::span<const double> Bz, double dx) {
  const std::size_t n = By.size() - 1;
  Current c;
  c.J_y.resize(n);
  c.J_z.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.J_y[i] = -(Bz[i + 1] - Bz[i]) / dx;
    c.J_z[i] = (By[i + 1] - By[i]) / dx;
  }
  return c;
}

std::vector<Vec3> assemble_electric_field(const FieldState& fields, const MomentSet& moments,
                                          std::span<const double> eta, double T_e, double dx) {
  const std::size_t n = fields.n_e.size();
  const std::vector<Vec3> B = fields.centered_B();
  std::vector<Vec3> E(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i == 0 ? fields.n_e[0] : fields.n_e[i - 1];
    const double right = i + 1 == n ? fields.n_e[n - 1] : fields.n_e[i + 1];
    const double ne = fields.n_e[i];
    const Vec3 J{0.0, fields.J_y[i], fields.J_z[i]};
    const Vec3 grad{-T_e * (right - left) / (2.0 * dx) / ne, 0.0, 0.0};
    E[i] = grad - cross(moments.nu_I[i] / ne, B[i]) + cross(J, B[i]) / ne + eta[i] * J;
  }
  return E;
}

std::vector<std::array<double, 2>> hall_transport(std::span<const double> By, std::span<const double> Bz,
                                                  std::span<const Vec3> B_frozen, std::span<const double> n_e,
                                                  double dx) {
  const Current J = compute_current(By, Bz, dx);
  const std::size_t n = J.J_y.size();
  std::vector<std::array<double, 2>> W(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 w = -1.0 * cross(Vec3{0.0, J.J_y[i], J.J_z[i]}, B_frozen[i]) / n_e[i];
    W[i] = {w[1], w[2]};
  }
  std::vector<std::array<double, 2>> T(n + 1, {0.0, 0.0});
  for (std::size_t f = 1; f < n; ++f) {
    const std::array<double, 2> dW{W[f][0] - W[f - 1][0], W[f][1] - W[f - 1][1]};
    const auto q = mul(kQ, dW);
    T[f] = {q[0] / dx, q[1] / dx};
  }
  return T;
}

Stage1Result solve_stage1(const Stage1Input& in) {
  const int Nx = static_cast<int>(in.n_e.size());
  const double dx = in.dx, dt = in.dt, theta = in.theta;
  if (!(dt > 0.0)) throw SingularSystem("solve_stage1: dt must be > 0");
  const bool imposed = in.imposed != nullptr && in.imposed->active;

  std::vector<double> impY(Nx + 1, 0.0), impZ(Nx + 1, 0.0);
  std::vector<Vec3> J_imp(Nx, Vec3{0.0, 0.0, 0.0});
  if (imposed) {
    impY = in.imposed->By;
    impZ = in.imposed->Bz;
    for (int i = 0; i < Nx; ++i) J_imp[i] = {0.0, in.imposed->J_y[i], in.imposed->J_z[i]};
  }

  const Current J_old = compute_current(in.By, in.Bz, dx);

  // W_i = w0_i + K_i J^theta_pert-part, with K_i the linear map J -> W.
  std::vector<Block> K(Nx);
  std::vector<std::array<double, 2>> w0(Nx);
  std::vector<Vec3> d(Nx);
  for (int i = 0; i < Nx; ++i) {
    const Vec3& B = in.B_frozen[i];
    const double ne = in.n_e[i];
    d[i] = (in.n_I[i] / ne) * B;
    auto L = [&](const Vec3& J) {
      return (theta * dt / ne) * cross(cross(J, d[i]), B) - cross(J, B) / ne - in.eta[i] * J;
    };
    const Vec3 ky = L({0.0, 1.0, 0.0});
    const Vec3 kz = L({0.0, 0.0, 1.0});
    K[i] = {{{ky[1], kz[1]}, {ky[2], kz[2]}}};
    const Vec3 c = cross(in.nu_k[i] / ne, B);
    const std::array<double, 2> Jfix{theta * J_imp[i][1] + (1.0 - theta) * J_old.J_y[i],
                                     theta * J_imp[i][2] + (1.0 - theta) * J_old.J_z[i]};
    const auto kj = mul(K[i], Jfix);
    w0[i] = {c[1] + kj[0], c[2] + kj[1]};
  }

  Stage1Result r;
  r.d = d;
  r.By.assign(impY.begin(), impY.end());
  r.Bz.assign(impZ.begin(), impZ.end());

  const int N = 2 * (Nx - 1);
  if (N > 0) {
    const int kl = 3, ku = 3, ldab = 2 * kl + ku + 1;
    std::vector<double> ab(static_cast<std::size_t>(ldab) * N, 0.0);
    std::vector<double> band(static_cast<std::size_t>(ldab) * N, 0.0);
    auto at = [&](int row, int col) -> double& { return ab[static_cast<std::size_t>(kl + ku + row - col) + col * ldab]; };
    std::vector<double> rhs(N);

    const double c2 = dt * theta / (dx * dx);
    for (int f = 1; f < Nx; ++f) {
      const int row0 = 2 * (f - 1);
      const Block right = mul(mul(kQ, K[f]), kQ);     // centre f, right of face f
      const Block left = mul(mul(kQ, K[f - 1]), kQ);  // centre f - 1
      for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
          at(row0 + p, row0 + q) = (p == q ? 1.0 : 0.0) + c2 * (right[p][q] + left[p][q]);
          if (f + 1 < Nx) at(row0 + p, row0 + 2 + q) = -c2 * right[p][q];
          if (f - 1 >= 1) at(row0 + p, row0 - 2 + q) = -c2 * left[p][q];
        }
      }
      const std::array<double, 2> dw{w0[f][0] - w0[f - 1][0], w0[f][1] - w0[f - 1][1]};
      const auto q = mul(kQ, dw);
      rhs[row0] = (in.By[f] - impY[f]) + dt / dx * q[0];
      rhs[row0 + 1] = (in.Bz[f] - impZ[f]) + dt / dx * q[1];
    }
    band = ab;
    std::vector<double> x = rhs;
    std::vector<int> ipiv(N);
    int nrhs = 1, info = 0;
    dgbsv_(&N, &kl, &ku, &nrhs, ab.data(), &ldab, ipiv.data(), x.data(), &N, &info);
    if (info != 0) throw SingularSystem("solve_stage1: banded factorisation failed (info " + std::to_string(info) + ")");

    // residual of the original system
    double res = 0.0, scale = 0.0;
    for (int row = 0; row < N; ++row) {
      double s = 0.0;
      for (int col = std::max(0, row - kl); col <= std::min(N - 1, row + ku); ++col)
        s += band[static_cast<std::size_t>(kl + ku + row - col) + col * ldab] * x[col];
      res = std::max(res, std::abs(s - rhs[row]));
      scale = std::max(scale, std::abs(rhs[row]));
    }
    r.linear_residual = res;
    if (!std::isfinite(res) || res > in.linear_tol * std::max(scale, 1.0))
      throw SingularSystem("solve_stage1: linear solve residual " + std::to_string(res) + " exceeds linear_tol");

    for (int f = 1; f < Nx; ++f) {
      r.By[f] = impY[f] + x[2 * (f - 1)];
      r.Bz[f] = impZ[f] + x[2 * (f - 1) + 1];
    }
  }

  const Current J_new = compute_current(r.By, r.Bz, dx);
  r.M.resize(Nx);
  r.nu.resize(Nx);
  r.J_theta.resize(Nx);
  CompensatedSum diss, src;
  for (int i = 0; i < Nx; ++i) {
    const Vec3 Jt{0.0, theta * J_new.J_y[i] + (1.0 - theta) * J_old.J_y[i],
                  theta * J_new.J_z[i] + (1.0 - theta) * J_old.J_z[i]};
    r.J_theta[i] = Jt;
    r.M[i] = dt * Jt;
    r.nu[i] = in.nu_k[i] + cross(r.M[i], d[i]);
    const Vec3 Jp = Jt - J_imp[i];
    diss.add(in.eta[i] * dot(Jp, Jp));
    if (imposed) {
      const Vec3 nu_theta = in.nu_k[i] + theta * cross(r.M[i], d[i]);
      const Vec3 jb = cross(J_imp[i], in.B_frozen[i]) / in.n_e[i];
      src.add(-in.eta[i] * dot(J_imp[i], Jp) - dot(jb, Jp) + dot(jb, nu_theta));
    }
  }
  r.dissipation_rate = diss.value() * dx;
  r.source = src.value() * dx;
  return r;
}

std::vector<Vec3> stage1_velocity_shift(std::span<const Vec3> M, std::span<const double> n_e,
                                        std::span<const Vec3> B_frozen) {
  std::vector<Vec3> dv(M.size());
  for (std::size_t i = 0; i < M.size(); ++i) dv[i] = cross(M[i] / n_e[i], B_frozen[i]);
  return dv;
}

}  // namespace hv
