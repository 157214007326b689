// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "sbpgreen/error.hpp"
#include "sbpgreen/green_second.hpp"
#include "sbpgreen/stability.hpp"

using namespace sbpgreen;

namespace {

const SecondVariant kVariants[] = {SecondVariant::N20, SecondVariant::N21, SecondVariant::N42, SecondVariant::W20};

// A with its first row and column removed, inverted over the rationals and bordered by zeros.
DenseMatrix g2_oracle(const SbpSecondOp& op) {
  const std::size_t N = op.grid.size();
  const DenseMatrix inner = oracle::to_double(oracle::inverse(oracle::to_rat(op.A.block(1, 1, N - 2, N - 2))));
  DenseMatrix g(N, N);
  for (std::size_t i = 1; i + 1 < N; ++i)
    for (std::size_t j = 1; j + 1 < N; ++j) g(i, j) = inner(i - 1, j - 1);
  return g;
}

}  // namespace

TEST(SecondParts, G2MatchesOracle) {
  for (auto v : kVariants) {
    for (int n : {8, 13, 20}) {
      const SbpSecondOp op = build_second(v, Grid(n, 1.5));
      const SecondParts p = second_parts(op);
      const DenseMatrix ref = g2_oracle(op);
      EXPECT_LE(oracle::max_diff(p.G2, ref), 1e-12 * ref.max_abs()) << variant_name(v) << " n=" << n;
    }
  }
}

TEST(SecondParts, ClosedFormsMatchLuParts) {
  for (auto v : kVariants) {
    for (int n : {8, 9, 16, 25}) {
      const SbpSecondOp op = build_second(v, Grid(n, 2.0));
      const SecondParts lu = second_parts(op);
      for (auto prec : {Precision::Exact, Precision::Double}) {
        const SecondParts cf = closed_form_second(v, op.grid, prec);
        const double tol = 1e-10 * lu.G2.max_abs();
        EXPECT_LE(oracle::max_diff(cf.G2, lu.G2), tol) << variant_name(v) << " n=" << n;
        for (std::size_t i = 0; i < op.grid.size(); ++i) {
          EXPECT_NEAR(cf.bL[i], lu.bL[i], 1e-10);
          EXPECT_NEAR(cf.bR[i], lu.bR[i], 1e-10);
        }
        EXPECT_NEAR(cf.xi.xiL * op.grid.h, lu.xi.xiL * op.grid.h, 1e-10);
        EXPECT_NEAR(cf.xi.xiC * op.grid.h, lu.xi.xiC * op.grid.h, 1e-10);
      }
    }
  }
}

TEST(SecondParts, WideGreenFunctionOscillates) {
  const int n = 12;
  const SbpSecondOp op = build_second(SecondVariant::W20, Grid(n));
  const SecondParts p = second_parts(op);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double lo = op.grid.x(std::min(i, j));
      const double hi = op.grid.x(std::max(i, j));
      const double expect = lo * (1.0 - hi) * (1.0 + ((i + j) % 2 == 0 ? 1.0 : -1.0));
      EXPECT_NEAR(p.G2(i, j), expect, 1e-12);
    }
  EXPECT_NEAR(p.xi.xiL * op.grid.h, 2.0 - 1.0 / n, 1e-12);
  EXPECT_NEAR(p.xi.xiC * op.grid.h, -1.0 / n, 1e-12);  // -(-1)^n / n with n even
}

TEST(SecondParts, LowOrderBoundaryVectors) {
  const SecondParts n20 = second_parts(build_second(SecondVariant::N20, Grid(10)));
  const SecondParts n21 = second_parts(build_second(SecondVariant::N21, Grid(10)));
  EXPECT_NEAR(n20.bL[0], 1.0, 1e-13);
  EXPECT_NEAR(n21.bL[0], 1.0, 1e-13);
  EXPECT_NEAR(n21.bL[1], -0.5, 1e-13);
  for (std::size_t i = 2; i < 11; ++i) {
    EXPECT_NEAR(n21.bL[i], 0.0, 1e-13);
    EXPECT_NEAR(n20.bL[i], 0.0, 1e-13);
  }
  EXPECT_NEAR(n20.xi.xiL / 10.0, 1.0, 1e-13);
  EXPECT_NEAR(n21.xi.xiL / 10.0, 2.5, 1e-13);
  EXPECT_NEAR(n21.xi.xiC, 0.0, 1e-12);
}

TEST(XiScalars, ContractionAndAlternativeRoutesAgree) {
  for (auto v : kVariants) {
    const SbpSecondOp op = build_second(v, Grid(14, 3.0));
    const XiScalars a = xi_scalars(op);
    const XiScalars b = xi_scalars_alt(op);
    EXPECT_NEAR(a.xiL, b.xiL, 1e-11 * std::abs(a.xiL));
    EXPECT_NEAR(a.xiR, b.xiR, 1e-11 * std::abs(a.xiR));
    EXPECT_NEAR(a.xiC, b.xiC, 1e-11 * std::abs(a.xiL));
    EXPECT_TRUE(a.centrosymmetric);
  }
}

TEST(N42Sequences, ScaledXiMatchesLu) {
  for (int n = 8; n <= 20; ++n) {
    const SbpSecondOp op = build_second(SecondVariant::N42, Grid(n));
    const XiScalars xi = xi_scalars(op);
    const ScaledXi42 s = n42_scaled_xi(n);
    EXPECT_NEAR(to_double(s.h_xi_lr), op.grid.h * xi.xiL, 1e-12) << n;
    EXPECT_NEAR(to_double(s.h_xi_c), op.grid.h * xi.xiC, 1e-12) << n;
  }
  // psi + 1/psi = 14 gives the recurrence P_{i+1} = 14 P_i - P_{i-1}.
  for (long i = 3; i < 12; ++i) EXPECT_EQ(n42_P(i + 1), 14 * n42_P(i) - n42_P(i - 1));
}

TEST(InverseSecond, RandomStableConfigurationsRoundTrip) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto v : kVariants) {
    for (int n : {8, 16}) {
      const SbpSecondOp op = build_second(v, Grid(n));
      const XiScalars xi = xi_scalars(op);
      for (int k = 0; k < 10; ++k) {
        SatSecond sat;
        do {
          sat = SatSecond{-4 * xi.xiT * u(rng), -4 * xi.xiT * u(rng), u(rng) * 2 - 0.5, u(rng) * 2 - 0.5,
                          0.5 + u(rng), 0.5 + u(rng), u(rng) / xi.xiT, u(rng) / xi.xiT};
        } while (!stability_second(sat, xi.xiT).stable || singularity_check(sat, xi, 1.0).singular);
        const AssembledSecond sys = assemble_second(op, sat);
        const GreenSecond g = invert_general_second(sys);
        EXPECT_LE(oracle::identity_defect(sys.K, g.Kinv), 1e-8) << variant_name(v) << " n=" << n;
        const GreenSecond cf = closed_form_inverse_second(sys);
        EXPECT_LE(oracle::max_diff(cf.Kinv, g.Kinv), 1e-8 * g.Kinv.max_abs());
      }
    }
  }
}

TEST(Singularity, DoubleNeumannIsBoundaryDataSingular) {
  const SbpSecondOp op = build_second(SecondVariant::N20, Grid(8));
  const SatSecond sat = SatSecond::symmetric(-1.0, 0.1, 0.0, 1.0);
  const AssembledSecond sys = assemble_second(op, sat);
  const SingularityVerdict v = singularity_check(sys, xi_scalars(op));
  EXPECT_TRUE(v.singular);
  EXPECT_EQ(v.condition_name(), "BC");
  EXPECT_TRUE(v.agrees());
  try {
    invert_general_second(sys);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularSigma);
    EXPECT_EQ(e.detail(), kSigmaBoundaryData);
  }
}

TEST(Singularity, WitnessIsPenaltySingularWithZetaOne) {
  for (auto v : kVariants) {
    const SbpSecondOp op = build_second(v, Grid(8));
    const XiScalars xi = xi_scalars(op);
    const SatSecond sat = stable_singular_witness(op);
    const SingularityVerdict s = singularity_check(assemble_second(op, sat), xi);
    EXPECT_TRUE(s.singular) << variant_name(v);
    EXPECT_EQ(s.condition, kSigmaPenalty);
    EXPECT_TRUE(s.rank_witness) << variant_name(v);
    if (s.has_zeta) EXPECT_NEAR(s.zeta, 1.0, 1e-9);
  }
}

TEST(Singularity, BothConditionsAreNamed) {
  const SbpSecondOp op = build_second(SecondVariant::N21, Grid(8));
  const XiScalars xi = xi_scalars(op);
  SatSecond sat = stable_singular_witness(xi.xiT, 0.0, 1.0);
  EXPECT_EQ(singularity_check(sat, xi, 1.0).condition_name(), "BC+penalty");
}

TEST(Preliminaries, IdentitiesHold) {
  for (auto v : kVariants) {
    const PreliminaryReport rep = verify_preliminaries(build_second(v, Grid(12)));
    EXPECT_LE(rep.max_residual(), 1e-10) << variant_name(v);
    EXPECT_FALSE(rep.residuals.empty());
  }
}
