// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "oracle.hpp"
#include "sbpgreen/error.hpp"
#include "sbpgreen/operators.hpp"

using namespace sbpgreen;

#ifndef SBPGREEN_TEST_DATA
#define SBPGREEN_TEST_DATA "."
#endif

namespace {

const std::string kData = SBPGREEN_TEST_DATA;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

}  // namespace

TEST(Grid, NodesAndEndpoints) {
  const Grid g(10, 2.0);
  EXPECT_DOUBLE_EQ(g.h, 0.2);
  EXPECT_EQ(g.x(10), 2.0);
  EXPECT_EQ(g.size(), 11u);
  EXPECT_EQ(g.e_left()[0], 1.0);
  EXPECT_EQ(g.e_right()[10], 1.0);
  EXPECT_EQ(code_of([] { Grid(0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Grid(4, -1.0); }), ErrorCode::InvalidArgument);
}

TEST(Variants, ParseRoundTrip) {
  for (auto v : {FirstVariant::D1_21, FirstVariant::D1_42}) {
    FirstVariant out;
    ASSERT_TRUE(parse_variant(variant_name(v), out));
    EXPECT_EQ(out, v);
  }
  for (auto v : {SecondVariant::N20, SecondVariant::N21, SecondVariant::N42, SecondVariant::W20}) {
    SecondVariant out;
    ASSERT_TRUE(parse_variant(variant_name(v), out));
    EXPECT_EQ(out, v);
  }
  FirstVariant f;
  EXPECT_FALSE(parse_variant("n21", f));
}

class FirstOps : public ::testing::TestWithParam<std::tuple<FirstVariant, int>> {};

TEST_P(FirstOps, SbpPropertiesHold) {
  const auto [variant, n] = GetParam();
  const SbpFirstOp op = build_first(variant, Grid(n, 3.0));
  const SbpReport rep = verify_sbp(op);
  EXPECT_TRUE(rep.passed()) << "max residual " << rep.max_residual();
  // Independent check of Q + Q^T = e_R e_R^T - e_L e_L^T.
  const std::size_t N = op.grid.size();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const double expect = (i == N - 1 && j == N - 1) - (i == 0 && j == 0) * 1.0;
      EXPECT_NEAR(op.Q(i, j) + op.Q(j, i), expect, 1e-14);
    }
}

INSTANTIATE_TEST_SUITE_P(Sizes, FirstOps,
                         ::testing::Combine(::testing::Values(FirstVariant::D1_21, FirstVariant::D1_42),
                                            ::testing::Values(8, 9, 16, 33)));

class SecondOps : public ::testing::TestWithParam<std::tuple<SecondVariant, int>> {};

TEST_P(SecondOps, SbpPropertiesHold) {
  const auto [variant, n] = GetParam();
  const SbpSecondOp op = build_second(variant, Grid(n, 2.0));
  const SbpReport rep = verify_sbp(op);
  EXPECT_TRUE(rep.passed()) << "max residual " << rep.max_residual();
  EXPECT_GE(oracle::min_eig(op.A), -1e-10 * op.A.max_abs());
  EXPECT_TRUE(is_centrosymmetric(op));
  // Quadratics are differentiated exactly in the interior. The (2,0) closures
  // have order zero at the boundary nodes, and the wide operator also reaches
  // the one-sided first-derivative rows from nodes 1 and n-1.
  const bool boundary_exact = variant == SecondVariant::N21 || variant == SecondVariant::N42;
  Vector q(op.grid.size());
  for (int i = 0; i <= n; ++i) q[static_cast<std::size_t>(i)] = op.grid.x(i) * op.grid.x(i);
  const Vector d2q = op.D2 * q;
  const int skip = boundary_exact ? 0 : (variant == SecondVariant::W20 ? 2 : 1);
  for (int i = skip; i <= n - skip; ++i) EXPECT_NEAR(d2q[static_cast<std::size_t>(i)], 2.0, 1e-9) << i;
}

INSTANTIATE_TEST_SUITE_P(Sizes, SecondOps,
                         ::testing::Combine(::testing::Values(SecondVariant::N20, SecondVariant::N21,
                                                              SecondVariant::N42, SecondVariant::W20),
                                            ::testing::Values(8, 11, 16, 32)));

TEST(SecondOps, WideOperatorIsFirstDerivativeSquared) {
  const SbpSecondOp w = build_second(SecondVariant::W20, Grid(10));
  const SbpFirstOp d = build_first(FirstVariant::D1_21, Grid(10));
  EXPECT_LE(oracle::max_diff(w.D2, oracle::multiply(d.D1, d.D1)), 1e-10);
  EXPECT_LE(verify_sbp(w).residual("wide_factorization"), 1e-12);
}

TEST(SecondOps, NarrowOrderTwoHasSimpleClosure) {
  const SbpSecondOp op = build_second(SecondVariant::N20, Grid(6, 6.0));
  EXPECT_DOUBLE_EQ(op.H[0], 0.5);
  EXPECT_DOUBLE_EQ(op.A(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(op.A(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(op.dL[0], -1.0);
  EXPECT_DOUBLE_EQ(op.dL[1], 1.0);
}

TEST(Build, TooSmallGridsAreRejected) {
  EXPECT_EQ(code_of([] { build_first(FirstVariant::D1_42, Grid(7)); }), ErrorCode::GridTooSmall);
  EXPECT_EQ(code_of([] { build_second(SecondVariant::N42, Grid(7)); }), ErrorCode::GridTooSmall);
  EXPECT_EQ(code_of([] { build_first(FirstVariant::D1_21, Grid(1)); }), ErrorCode::GridTooSmall);
}

TEST(Loader, HandWrittenFirstOperatorMatchesBuiltIn) {
  const ExternalOperator ext = load_operator_csv(kData + "/d1_21_unit.csv", 4.0);
  ASSERT_FALSE(ext.second);
  const SbpFirstOp builtin = build_first(FirstVariant::D1_21, Grid(4, 4.0));
  EXPECT_EQ(oracle::max_diff(ext.first_op.Q, builtin.Q), 0.0);
  EXPECT_EQ(oracle::max_diff(ext.first_op.D1, builtin.D1), 0.0);
  EXPECT_TRUE(verify_sbp(ext.first_op).passed());
}

TEST(Loader, HandWrittenSecondOperatorMatchesBuiltIn) {
  const ExternalOperator ext = load_operator_csv(kData + "/n20_unit.csv", 1.0);
  ASSERT_TRUE(ext.second);
  const SbpSecondOp builtin = build_second(SecondVariant::N20, Grid(6));
  EXPECT_LE(oracle::max_diff(ext.second_op.A, builtin.A), 1e-15 * builtin.A.max_abs());
  EXPECT_LE(oracle::max_diff(ext.second_op.D2, builtin.D2), 1e-12 * builtin.D2.max_abs());
  EXPECT_EQ(ext.second_op.variant, SecondVariant::External);
  EXPECT_TRUE(verify_sbp(ext.second_op).passed());
}

TEST(Loader, MalformedInputIsAParseError) {
  EXPECT_EQ(code_of([] { load_operator_csv(kData + "/bad_header.csv"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_operator_csv("first,3,3\nQ\n0,0,abc\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_operator_csv("first,3,3\nQ\n0,0,1\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_operator_csv(kData + "/does_not_exist.csv"); }), ErrorCode::IoError);
}

TEST(Loader, AsymmetricOperatorFailsVerification) {
  const ExternalOperator ext = load_operator_csv(kData + "/asymmetric.csv");
  EXPECT_GT(verify_sbp(ext.second_op).residual("A_symmetry"), 1e-3);
}
