// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "sbpgreen/green_second.hpp"
#include "sbpgreen/sat.hpp"

using namespace sbpgreen;

TEST(AssembleFirst, SubtractsPenaltyFromCorner) {
  const SbpFirstOp op = build_first(FirstVariant::D1_21, Grid(8));
  const AssembledFirst sys = assemble_first(op, SatFirst{-0.75});
  DenseMatrix diff = sys.K - op.Q;
  EXPECT_DOUBLE_EQ(diff(0, 0), 0.75);
  diff(0, 0) = 0.0;
  EXPECT_EQ(diff.max_abs(), 0.0);
  const Vector f = sys.forcing(Vector(9, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(f[0], 1.0 + 0.75 * 2.0 / op.H[0]);
  EXPECT_DOUBLE_EQ(f[3], 1.0);
}

// Reference assembly straight from the semi-discrete heat scheme:
// H v_t = -A v + e_R d_R^T v - e_L d_L^T v + (sigma_L e_L - tau_L d_L)(alpha_L e_L^T v - beta_L d_L^T v)
//         + (sigma_R e_R + tau_R d_R)(alpha_R e_R^T v + beta_R d_R^T v), and A~ is minus the v-coefficient.
TEST(AssembleSecond, MatchesSchemeWrittenOut) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (auto variant : {SecondVariant::N20, SecondVariant::N21, SecondVariant::N42, SecondVariant::W20}) {
    const SbpSecondOp op = build_second(variant, Grid(12));
    const SatSecond sat{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const AssembledSecond sys = assemble_second(op, sat);
    const std::size_t N = op.grid.size();
    DenseMatrix ref = op.A;
    const Vector& eL = op.eL;
    const Vector& eR = op.eR;
    const Vector& dL = op.dL;
    const Vector& dR = op.dR;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        double rhs = eR[i] * dR[j] - eL[i] * dL[j];
        rhs += (sat.sigmaL * eL[i] - sat.tauL * dL[i]) * (sat.alphaL * eL[j] - sat.betaL * dL[j]);
        rhs += (sat.sigmaR * eR[i] + sat.tauR * dR[i]) * (sat.alphaR * eR[j] + sat.betaR * dR[j]);
        ref(i, j) -= rhs;
      }
    EXPECT_LE(oracle::max_diff(sys.K, ref), 1e-12 * ref.max_abs()) << variant_name(variant);
  }
}

TEST(StabilityFirst, Threshold) {
  EXPECT_TRUE(stability_first(SatFirst{-0.5}).stable);
  EXPECT_FALSE(stability_first(SatFirst{-0.49}).stable);
  EXPECT_TRUE(stability_first(SatFirst{-1.0}).dual_consistent);
  EXPECT_FALSE(stability_first(SatFirst{-2.0}).dual_consistent);
}

TEST(StabilitySecond, DirichletRegion) {
  const double xiT = 40.0;
  // alpha = 1, beta = 0: stable iff (1 - tau)^2 <= -4 (sigma / xi_T + tau).
  EXPECT_TRUE(stability_second(SatSecond::symmetric(-xiT, 1.0, 1.0, 0.0), xiT).stable);
  EXPECT_TRUE(stability_second(SatSecond::symmetric(-2 * xiT, 1.0, 1.0, 0.0), xiT).stable);
  EXPECT_FALSE(stability_second(SatSecond::symmetric(-0.99 * xiT, 1.0, 1.0, 0.0), xiT).stable);
  EXPECT_FALSE(stability_second(SatSecond::symmetric(1.0, 1.0, 1.0, 0.0), xiT).stable);
  EXPECT_THROW(stability_second(SatSecond::symmetric(-1.0, 1.0, 1.0, 0.0), 0.0), std::exception);
}

TEST(StabilitySecond, BorrowedFormAgreesWithCanonical) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int stable_count = 0;
  for (int k = 0; k < 2000; ++k) {
    const double xiT = 1.0 + 60.0 * u(rng);
    const SatSecond sat = SatSecond::symmetric(-3.0 * xiT * u(rng), 2.0 * u(rng) - 0.5, 2.0 * u(rng),
                                               u(rng) < 0.5 ? 0.0 : u(rng) / xiT);
    const bool a = stability_second(sat, xiT).stable;
    const bool b = stability_second_borrowed(sat, 1.0 / xiT).stable;
    EXPECT_EQ(a, b) << "k=" << k;
    stable_count += a;
  }
  EXPECT_GT(stable_count, 100);
}

TEST(StabilitySecond, StableAndNotDualConsistentIsNeverSingular) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto variant : {SecondVariant::N20, SecondVariant::N21, SecondVariant::N42, SecondVariant::W20}) {
    const SbpSecondOp op = build_second(variant, Grid(12));
    const XiScalars xi = xi_scalars(op);
    const double xiT = xi.total();
    int tested = 0;
    while (tested < 100) {
      const SatSecond sat = SatSecond::symmetric(-4.0 * xiT * u(rng), 2.0 * u(rng) - 0.5, 0.2 + u(rng),
                                                 u(rng) < 0.5 ? 0.0 : u(rng) / xiT);
      const SecondVerdict v = stability_second(sat, xiT);
      if (!v.stable || v.dual_consistent) continue;
      ++tested;
      const SingularityVerdict s = singularity_check(assemble_second(op, sat), xi);
      EXPECT_FALSE(s.singular) << variant_name(variant);
      EXPECT_TRUE(s.agrees());
    }
  }
}
