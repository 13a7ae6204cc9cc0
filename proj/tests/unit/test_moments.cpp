#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "common/oracles.hpp"
#include "hallvlasov/moments.hpp"

using namespace hv;

TEST(ComputeMoments, ZeroDistribution) {
  const PhaseSpaceGrid g(1.0, 3, 2.0, 8);
  const MomentSet m = compute_moments(DistributionFunction(g));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(m.n_I[i], 0.0);
    EXPECT_EQ(norm(m.nu_I[i]), 0.0);
    EXPECT_EQ(m.E_I_density[i], 0.0);
  }
}

TEST(ComputeMoments, UnitCubeIndicator) {
  // v_max = 2, Nv = 8: dv = 0.5, so [-1, 1] covers nodes 2..5.
  const PhaseSpaceGrid g(1.0, 2, 2.0, 8);
  DistributionFunction f(g);
  for (int i = 0; i < 2; ++i)
    for (int a = 2; a < 6; ++a)
      for (int b = 2; b < 6; ++b)
        for (int c = 2; c < 6; ++c) f(i, a, b, c) = 1.0;
  const MomentSet m = compute_moments(f);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(m.n_I[i], 8.0);
    EXPECT_EQ(norm(m.nu_I[i]), 0.0);
  }
}

TEST(ComputeMoments, DriftingMaxwellianAgainstAnalyticMoments) {
  const PhaseSpaceGrid g(1.0, 2, 8.0, 48);
  const std::vector<double> n(2, 2.0);
  const std::vector<Vec3> u(2, Vec3{0.3, 0.0, 0.0});
  const MomentSet m = compute_moments(make_maxwellian(g, n, 1.0, u));
  EXPECT_NEAR(m.n_I[0], 2.0, 2e-5);
  EXPECT_NEAR(m.nu_I[0][0], 0.6, 0.6e-5);
  EXPECT_NEAR(m.E_I_density[0], 3.09, 3.09e-5);
}

TEST(ComputeMoments, MatchesLongDoubleOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const PhaseSpaceGrid g(1.0, 4, 3.0, 8);
  DistributionFunction f(g);
  for (double& v : f.values()) v = U(rng);
  const MomentSet m = compute_moments(f);
  const auto n = oracle::density(f);
  const auto nu = oracle::momentum(f);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(m.n_I[i], n[i], 1e-13 * n[i]);
    for (int q = 0; q < 3; ++q) EXPECT_NEAR(m.nu_I[i][q], nu[i][q], 1e-13 * n[i]);
  }
  EXPECT_NEAR(m.kinetic_energy(g.dx()), static_cast<double>(oracle::kinetic_energy(f)), 1e-13);
}

TEST(ComputeMoments, LinearAndScalingCovariant) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const PhaseSpaceGrid g(1.0, 3, 3.0, 6);
  DistributionFunction f(g), h(g), s(g), twice(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    f.values()[k] = U(rng);
    h.values()[k] = U(rng);
    s.values()[k] = f.values()[k] + h.values()[k];
    twice.values()[k] = 2.0 * f.values()[k];
  }
  const MomentSet mf = compute_moments(f), mh = compute_moments(h), ms = compute_moments(s),
                  m2 = compute_moments(twice);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(ms.n_I[i], mf.n_I[i] + mh.n_I[i], 1e-14 * ms.n_I[i]);
    EXPECT_NEAR(ms.E_I_density[i], mf.E_I_density[i] + mh.E_I_density[i], 1e-14 * ms.E_I_density[i]);
    // Scaling by a power of two is exact.
    EXPECT_EQ(m2.n_I[i], 2.0 * mf.n_I[i]);
    EXPECT_EQ(m2.E_I_density[i], 2.0 * mf.E_I_density[i]);
    for (int q = 0; q < 3; ++q) EXPECT_EQ(m2.nu_I[i][q], 2.0 * mf.nu_I[i][q]);
  }
}

TEST(ComputeMoments, CauchySchwarzPerNode) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const PhaseSpaceGrid g(1.0, 8, 3.0, 6);
  for (int trial = 0; trial < 20; ++trial) {
    DistributionFunction f(g);
    for (double& v : f.values()) v = std::pow(U(rng), 4.0);
    const MomentSet m = compute_moments(f);
    for (int i = 0; i < 8; ++i) EXPECT_LE(dot(m.nu_I[i], m.nu_I[i]), 2.0 * m.n_I[i] * m.E_I_density[i] * (1 + 1e-14));
  }
}

TEST(LpNorm, ZeroConstantAndGaussianPeak) {
  const PhaseSpaceGrid g(2.0, 4, 3.0, 6);
  DistributionFunction f(g);
  for (double p : {1.0, 2.0, 5.0 / 3.0, std::numeric_limits<double>::infinity()}) EXPECT_EQ(lp_norm(f, p), 0.0);
  for (double& v : f.values()) v = 0.5;
  const double vol = 2.0 * 216.0;
  for (double p : {1.0, 2.0, 3.0}) EXPECT_NEAR(lp_norm(f, p), 0.5 * std::pow(vol, 1.0 / p), 1e-13);
  EXPECT_EQ(lp_norm(f, std::numeric_limits<double>::infinity()), 0.5);

  const PhaseSpaceGrid h(1.0, 2, 6.0, 12);
  // Nodes sit at half-integers, so sample the peak at v = 0 analytically.
  const double peak = std::pow(2.0 * std::numbers::pi, -1.5);
  EXPECT_NEAR(peak, 0.06349, 1e-5);
  const DistributionFunction m = make_maxwellian(h, 1.0, 1.0);
  EXPECT_NEAR(lp_norm(m, std::numeric_limits<double>::infinity()), peak * std::exp(-3.0 * 0.25 / 2.0), 1e-15);
}

TEST(LpNorm, PositiveIffNonzero) {
  const PhaseSpaceGrid g(1.0, 2, 1.0, 4);
  DistributionFunction f(g);
  f.values()[5] = 1e-200;
  for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) EXPECT_GT(lp_norm(f, p), 0.0);
}

TEST(MomentBoundConstants, ClosedFormsAndMinimisation) {
  const MomentBoundConstants k = moment_bound_constants();
  EXPECT_NEAR(k.C, 3.4763, 5e-5);
  EXPECT_NEAR(k.C_prime, 2.0737, 5e-5);
  EXPECT_NEAR(k.C, oracle::C53(), 1e-13);
  EXPECT_NEAR(k.C_prime, oracle::C54(), 1e-13);
  // Stationary point of a R^3 + R^-2 with a = 4 pi / 3.
  const double a = 4.0 * std::numbers::pi / 3.0;
  const double R = std::pow(2.0 / (3.0 * a), 0.2);
  EXPECT_NEAR(a * R * R * R + 1.0 / (R * R), k.C, 1e-13);
  const double b = std::numbers::pi;
  const double R2 = std::pow(1.0 / (4.0 * b), 0.2);
  EXPECT_NEAR(b * std::pow(R2, 4) + 1.0 / R2, k.C_prime, 1e-13);
}

TEST(MomentInequalities, ZeroPasses) {
  const PhaseSpaceGrid g(1.0, 2, 2.0, 4);
  const MomentInequalityReport r = check_moment_inequalities(DistributionFunction(g));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.lhs53, 0.0);
  EXPECT_EQ(r.rhs53, 0.0);
}

TEST(MomentInequalities, BallIndicatorAgainstOracle) {
  const PhaseSpaceGrid g(1.0, 2, 2.0, 16);
  DistributionFunction f(g);
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 16; ++a)
      for (int b = 0; b < 16; ++b)
        for (int c = 0; c < 16; ++c)
          if (g.v(a) * g.v(a) + g.v(b) * g.v(b) + g.v(c) * g.v(c) <= 1.0) f(i, a, b, c) = 1.0;
  const MomentInequalityReport r = check_moment_inequalities(f);
  const oracle::InequalitySides o = oracle::inequality_sides(f);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.ratio53(), o.lhs53 / o.rhs53, 1e-12);
  EXPECT_NEAR(r.ratio54(), o.lhs54 / o.rhs54, 1e-12);
  EXPECT_LE(o.lhs53 / o.rhs53, 1.0);
}

TEST(MomentInequalities, RandomDistributionsPass) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const PhaseSpaceGrid g(1.0, 3, 3.0, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    DistributionFunction f(g);
    for (double& v : f.values()) v = U(rng);
    const MomentInequalityReport r = check_moment_inequalities(f);
    const oracle::InequalitySides o = oracle::inequality_sides(f);
    ASSERT_TRUE(r.pass) << trial;
    ASSERT_LE(o.lhs53, o.rhs53);
    ASSERT_LE(o.lhs54, o.rhs54);
  }
}

TEST(MomentInequalities, ScaleInvariantRatios) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const PhaseSpaceGrid g(1.0, 3, 3.0, 6);
  DistributionFunction f(g), s(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    f.values()[k] = U(rng);
    s.values()[k] = 7.5 * f.values()[k];
  }
  EXPECT_NEAR(check_moment_inequalities(f).ratio53(), check_moment_inequalities(s).ratio53(), 1e-13);
  EXPECT_NEAR(check_moment_inequalities(f).ratio54(), check_moment_inequalities(s).ratio54(), 1e-13);
}
