// SPDX-License-Identifier: Apache-2.0
// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "sbpgreen/sbpgreen.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  sbpg_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, ErrorsCarryCodeAndMessage) {
  sbpg_operator* op = nullptr;
  EXPECT_EQ(sbpg_operator_create("nope", 8, 1.0, &op), SBPG_INVALID_ARGUMENT);
  EXPECT_EQ(op, nullptr);
  EXPECT_NE(std::string(sbpg_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(sbpg_operator_create("d1_42", 7, 1.0, &op), SBPG_GRID_TOO_SMALL);
  EXPECT_STREQ(sbpg_status_name(SBPG_GRID_TOO_SMALL), "GridTooSmall");
  EXPECT_EQ(sbpg_operator_create(nullptr, 8, 1.0, &op), SBPG_INVALID_ARGUMENT);
  ASSERT_EQ(sbpg_operator_create("n21", 8, 1.0, &op), SBPG_OK);
  EXPECT_STREQ(sbpg_last_error(), "");
  sbpg_operator_free(op);
}

TEST(CApi, OperatorAccessors) {
  sbpg_operator* op = nullptr;
  ASSERT_EQ(sbpg_operator_create("n42", 12, 2.0, &op), SBPG_OK);
  EXPECT_EQ(sbpg_operator_is_second(op), 1);
  EXPECT_EQ(sbpg_operator_intervals(op), 12);
  EXPECT_EQ(sbpg_operator_length(op), 2.0);
  sbpg_matrix* a = nullptr;
  ASSERT_EQ(sbpg_operator_matrix(op, "A", &a), SBPG_OK);
  EXPECT_EQ(sbpg_matrix_rows(a), 13u);
  EXPECT_EQ(sbpg_matrix_cols(a), 13u);
  sbpg_matrix_free(a);
  sbpg_matrix* q = nullptr;
  EXPECT_EQ(sbpg_operator_matrix(op, "Q", &q), SBPG_INVALID_ARGUMENT);
  char* json = nullptr;
  int passed = 0;
  ASSERT_EQ(sbpg_operator_verify_json(op, &json, &passed), SBPG_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_NE(take(json).find("\"min_eig\""), std::string::npos);
  std::vector<double> x(13);
  ASSERT_EQ(sbpg_operator_nodes(op, x.data(), x.size()), SBPG_OK);
  EXPECT_EQ(x.back(), 2.0);
  EXPECT_EQ(sbpg_operator_nodes(op, x.data(), 5), SBPG_INVALID_ARGUMENT);
  sbpg_operator_free(op);
}

TEST(CApi, InvertAndCompareRoutes) {
  sbpg_operator* op = nullptr;
  ASSERT_EQ(sbpg_operator_create("d1_42", 16, 1.0, &op), SBPG_OK);
  sbpg_sat sat{};
  ASSERT_EQ(sbpg_default_sat(op, 1.0, 0.0, &sat), SBPG_OK);
  EXPECT_EQ(sat.sigmaL, -1.0);
  sbpg_system* sys = nullptr;
  ASSERT_EQ(sbpg_system_create(op, &sat, &sys), SBPG_OK);
  sbpg_matrix* lu = nullptr;
  sbpg_matrix* cf = nullptr;
  ASSERT_EQ(sbpg_system_invert(sys, 0, 1, &lu), SBPG_OK);
  ASSERT_EQ(sbpg_system_invert(sys, 1, 1, &cf), SBPG_OK);
  double res = 1.0, dev = 1.0;
  ASSERT_EQ(sbpg_system_inverse_residual(sys, lu, &res), SBPG_OK);
  ASSERT_EQ(sbpg_matrix_max_diff(lu, cf, &dev), SBPG_OK);
  EXPECT_LE(res, 1e-10);
  EXPECT_LE(dev, 1e-10);
  sbpg_matrix_free(lu);
  sbpg_matrix_free(cf);
  sbpg_system_free(sys);
  sbpg_operator_free(op);
}

TEST(CApi, SingularSystemsAreReported) {
  sbpg_operator* op = nullptr;
  ASSERT_EQ(sbpg_operator_create("n21", 16, 1.0, &op), SBPG_OK);
  sbpg_sat sat{};
  ASSERT_EQ(sbpg_witness_sat(op, 1.0, 0.0, &sat), SBPG_OK);
  sbpg_system* sys = nullptr;
  ASSERT_EQ(sbpg_system_create(op, &sat, &sys), SBPG_OK);
  sbpg_matrix* inv = nullptr;
  EXPECT_EQ(sbpg_system_invert(sys, 1, 1, &inv), SBPG_SINGULAR_SYSTEM);
  EXPECT_EQ(inv, nullptr);
  int singular = 0, stable = 0;
  char* json = nullptr;
  ASSERT_EQ(sbpg_system_singularity_json(sys, &json, &singular), SBPG_OK);
  EXPECT_NE(take(json).find("\"penalty\""), std::string::npos);
  ASSERT_EQ(sbpg_system_stability_json(sys, nullptr, &stable), SBPG_OK);
  EXPECT_EQ(singular, 1);
  EXPECT_EQ(stable, 1);
  std::vector<double> f(17, 1.0), v(17);
  EXPECT_EQ(sbpg_solve_steady(sys, f.data(), f.size(), 0.0, 0.0, 0, 1, v.data(), nullptr), SBPG_SINGULAR_SYSTEM);
  sbpg_system_free(sys);
  sbpg_operator_free(op);
}

TEST(CApi, SteadyAndTransient) {
  sbpg_operator* op = nullptr;
  ASSERT_EQ(sbpg_operator_create("d1_21", 8, 1.0, &op), SBPG_OK);
  sbpg_sat sat{};
  sat.sigmaL = -1.0;
  sbpg_system* sys = nullptr;
  ASSERT_EQ(sbpg_system_create(op, &sat, &sys), SBPG_OK);
  std::vector<double> f(9, 1.0), v(9);
  double res = 1.0;
  ASSERT_EQ(sbpg_solve_steady(sys, f.data(), f.size(), 0.0, 0.0, 1, 1, v.data(), &res), SBPG_OK);
  for (int i = 0; i <= 8; ++i) EXPECT_NEAR(v[static_cast<std::size_t>(i)], i / 8.0, 1e-14);
  std::vector<double> v0(9);
  for (int i = 0; i <= 8; ++i) v0[static_cast<std::size_t>(i)] = std::sin(M_PI * i / 8.0);
  sbpg_run* run = nullptr;
  ASSERT_EQ(sbpg_integrate(sys, v0.data(), v0.size(), nullptr, 0.0, 0.0, 0.5, 0.0, 0.0, 4, &run), SBPG_OK);
  const std::size_t count = sbpg_run_energy_count(run);
  const double* e = sbpg_run_energy(run);
  ASSERT_GT(count, 2u);
  for (std::size_t k = 1; k < count; ++k) EXPECT_LE(e[k], e[k - 1] + 1e-12 * e[0]);
  char* csv = nullptr;
  ASSERT_EQ(sbpg_run_csv(run, &csv), SBPG_OK);
  EXPECT_EQ(take(csv).rfind("t,v_0,", 0), 0u);
  sbpg_run_free(run);
  sbpg_system_free(sys);
  sbpg_operator_free(op);
}

TEST(CApi, TablesMatch) {
  int ok = 0;
  char* text = nullptr;
  ASSERT_EQ(sbpg_table1(16, &text, nullptr, nullptr, &ok), SBPG_OK);
  EXPECT_EQ(ok, 1);
  EXPECT_NE(take(text).find("2.5"), std::string::npos);
  ASSERT_EQ(sbpg_qrtab(8, 12, 1, nullptr, nullptr, nullptr, &ok), SBPG_OK);
  EXPECT_EQ(ok, 1);
}

TEST(CApi, ConvergenceCsv) {
  const int sizes[] = {8, 16, 32};
  char* csv = nullptr;
  ASSERT_EQ(sbpg_convergence_csv("heat", "n21", "sin", sizes, 3, 1.0, &csv), SBPG_OK);
  const std::string s = take(csv);
  EXPECT_EQ(s.rfind("n,h,error,rate\n8,", 0), 0u);
  EXPECT_EQ(sbpg_convergence_csv("heat", "d1_21", "sin", sizes, 3, 1.0, &csv), SBPG_INVALID_ARGUMENT);
}
