// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "sbpgreen/error.hpp"
#include "sbpgreen/solver.hpp"
#include "sbpgreen/stability.hpp"

using namespace sbpgreen;

namespace {

Vector sampled(const Grid& g, double (*fn)(double)) {
  Vector v(g.size());
  for (int i = 0; i <= g.n; ++i) v[static_cast<std::size_t>(i)] = fn(g.x(i));
  return v;
}

double one(double) { return 1.0; }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

}  // namespace

TEST(Steady, AdvectionLinearIsExact) {
  for (auto route : {SteadyRoute::Lu, SteadyRoute::ClosedForm}) {
    const AssembledFirst sys = assemble_first(build_first(FirstVariant::D1_21, Grid(32)), SatFirst{-1.0});
    const SteadySolution s = solve_steady(sys, sampled(sys.op.grid, one), 0.0, route);
    for (int i = 0; i <= 32; ++i) EXPECT_NEAR(s.v[static_cast<std::size_t>(i)], sys.op.grid.x(i), 1e-13);
    EXPECT_LE(s.residual, 1e-14);
  }
}

TEST(Steady, HeatOrderZeroClosureIsExactAtInteriorNodes) {
  const SbpSecondOp op = build_second(SecondVariant::N20, Grid(32));
  const AssembledSecond sys = assemble_second(op, default_heat_sat(op));
  const SteadySolution s = solve_steady(sys, sampled(op.grid, one), 0.0, 0.0, SteadyRoute::ClosedForm);
  for (int i = 1; i < 32; ++i) {
    const double x = op.grid.x(i);
    EXPECT_NEAR(s.v[static_cast<std::size_t>(i)], 0.5 * x * (1.0 - x), 1e-13) << i;
  }
  // Boundary rows of D2 vanish, so the penalty alone sets v_0; it lands h^2/2 off.
  EXPECT_NEAR(s.v[0], 0.5 * op.grid.h * op.grid.h, 1e-13);
  // The discrete Green's function G2 (injection limit) is exact everywhere.
  const Vector v = second_parts(op).G2 * Vector(op.H);
  for (int i = 0; i <= 32; ++i) {
    const double x = op.grid.x(i);
    EXPECT_NEAR(v[static_cast<std::size_t>(i)], 0.5 * x * (1.0 - x), 1e-13);
  }
}

TEST(Steady, HeatOrderOneClosureIsExactForQuadratics) {
  const SbpSecondOp op = build_second(SecondVariant::N21, Grid(24));
  const AssembledSecond sys = assemble_second(op, default_heat_sat(op));
  const SteadySolution s = solve_steady(sys, sampled(op.grid, one), 0.0, 0.0, SteadyRoute::Lu);
  for (int i = 0; i <= 24; ++i) {
    const double x = op.grid.x(i);
    EXPECT_NEAR(s.v[static_cast<std::size_t>(i)], 0.5 * x * (1.0 - x), 1e-13);
  }
}

TEST(Steady, DoubleNeumannIsSingular) {
  const SbpSecondOp op = build_second(SecondVariant::N20, Grid(8));
  const AssembledSecond sys = assemble_second(op, default_heat_sat(op, 0.0, 1.0));
  const Vector f = sampled(op.grid, one);
  EXPECT_EQ(code_of([&] { solve_steady(sys, f, 0.0, 0.0, SteadyRoute::Lu); }), ErrorCode::SingularSystem);
  EXPECT_EQ(code_of([&] { solve_steady(sys, f, 0.0, 0.0, SteadyRoute::ClosedForm); }), ErrorCode::SingularSystem);
}

TEST(Steady, RoutesAgreeOnRandomConfigurations) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SecondVariant variants[] = {SecondVariant::N20, SecondVariant::N21, SecondVariant::N42, SecondVariant::W20};
  for (int k = 0; k < 40; ++k) {
    const SbpSecondOp op = build_second(variants[k % 4], Grid(8 + k % 9));
    const XiScalars xi = xi_scalars(op);
    const SatSecond sat{-3 * xi.xiT * u(rng), -3 * xi.xiT * u(rng), u(rng), u(rng), 0.5 + u(rng), 0.5 + u(rng),
                        0.0, 0.0};
    if (singularity_check(sat, xi, 1.0).singular) continue;
    const AssembledSecond sys = assemble_second(op, sat);
    Vector f(op.grid.size());
    for (double& x : f) x = u(rng) - 0.5;
    const double gL = u(rng);
    const double gR = u(rng);
    const SteadySolution a = solve_steady(sys, f, gL, gR, SteadyRoute::Lu);
    const SteadySolution b = solve_steady(sys, f, gL, gR, SteadyRoute::ClosedForm);
    EXPECT_LE(norm_inf(sub(a.v, b.v)), 1e-9 * std::max(1.0, norm_inf(a.v)));
    EXPECT_LE(a.residual, 1e-9);
    EXPECT_LE(b.residual, 1e-9);
  }
  for (int k = 0; k < 20; ++k) {
    const FirstVariant v = k % 2 ? FirstVariant::D1_42 : FirstVariant::D1_21;
    const AssembledFirst sys = assemble_first(build_first(v, Grid(8 + 2 * (k % 5))), SatFirst{-0.5 - 3 * u(rng)});
    Vector f(sys.op.grid.size());
    for (double& x : f) x = u(rng) - 0.5;
    const SteadySolution a = solve_steady(sys, f, 0.4, SteadyRoute::Lu);
    const SteadySolution b = solve_steady(sys, f, 0.4, SteadyRoute::ClosedForm);
    EXPECT_LE(norm_inf(sub(a.v, b.v)), 1e-9 * std::max(1.0, norm_inf(a.v)));
  }
}

TEST(Steady, PointSourcesAreSymmetricForDualConsistentPenalties) {
  const SbpSecondOp op = build_second(SecondVariant::N42, Grid(12));
  const AssembledSecond sys = assemble_second(op, default_heat_sat(op, 1.0, 0.3));
  for (std::size_t i = 0; i < op.grid.size(); i += 3)
    for (std::size_t j = 0; j < op.grid.size(); j += 2) {
      const Vector vi = solve_steady(sys, point_source(op.H, i), 0.0, 0.0, SteadyRoute::Lu).v;
      const Vector vj = solve_steady(sys, point_source(op.H, j), 0.0, 0.0, SteadyRoute::Lu).v;
      EXPECT_NEAR(vi[j], vj[i], 1e-10);
    }
}

TEST(Transient, AdvectionEnergyDecays) {
  const AssembledFirst sys = assemble_first(build_first(FirstVariant::D1_42, Grid(64)), SatFirst{-1.0});
  TransientOptions opts;
  opts.t_end = 1.0;
  const TransientRun run = integrate(sys, TransientData{}, sampled(sys.op.grid, [](double x) { return std::sin(M_PI * x); }), opts);
  for (std::size_t k = 1; k < run.energy.size(); ++k) {
    EXPECT_LE(run.energy[k], run.energy[k - 1] + 1e-12 * run.energy[0]);
  }
  EXPECT_LT(run.energy.back(), run.energy.front());
  EXPECT_EQ(run.times.back(), 1.0);
}

TEST(Transient, PositivePenaltyIsFlagged) {
  const AssembledFirst sys = assemble_first(build_first(FirstVariant::D1_21, Grid(32)), SatFirst{1.0});
  TransientOptions opts;
  EXPECT_EQ(code_of([&] { integrate(sys, TransientData{}, Vector(33, 1.0), opts); }), ErrorCode::UnstableStep);
}

TEST(Transient, WitnessPenaltyIsStableDespiteSingularity) {
  const SbpSecondOp op = build_second(SecondVariant::N21, Grid(16));
  const AssembledSecond sys = assemble_second(op, stable_singular_witness(op));
  ASSERT_TRUE(rank_deficient(sys.K));
  TransientOptions opts;
  opts.t_end = 0.05;
  const TransientRun run = integrate(sys, TransientData{}, sampled(op.grid, [](double x) { return 1.0 + x; }), opts);
  for (std::size_t k = 1; k < run.energy.size(); ++k) {
    EXPECT_LE(run.energy[k], run.energy[k - 1] + 1e-12 * run.energy[0]);
  }
}

TEST(Transient, ForcedHeatApproachesSteadyState) {
  const SbpSecondOp op = build_second(SecondVariant::N21, Grid(16));
  const AssembledSecond sys = assemble_second(op, default_heat_sat(op));
  TransientData data;
  data.f = [](double, double) { return 1.0; };
  TransientOptions opts;
  opts.t_end = 3.0;
  opts.output_every = 1000000;
  const TransientRun run = integrate(sys, data, Vector(17, 0.0), opts);
  const Vector steady = solve_steady(sys, Vector(17, 1.0), 0.0, 0.0, SteadyRoute::Lu).v;
  EXPECT_LE(norm_inf(sub(run.states.back(), steady)), 1e-5);
  EXPECT_EQ(run.states.size(), 2u);
}

TEST(Convergence, HeatSineIsSecondOrder) {
  const ManufacturedSolution ms{[](double x) { return std::sin(M_PI * x); },
                                [](double x) { return M_PI * std::cos(M_PI * x); },
                                [](double x) { return -M_PI * M_PI * std::sin(M_PI * x); }};
  const auto rows = convergence_heat(
      SecondVariant::N20, [](const SbpSecondOp& op) { return default_heat_sat(op); }, ms, {16, 32, 64, 128});
  EXPECT_TRUE(std::isnan(rows[0].rate));
  EXPECT_NEAR(rows.back().rate, 2.0, 0.1);
}

TEST(Convergence, AdvectionFourthOrderInteriorGivesThirdOrderGlobally) {
  const ManufacturedSolution ms{[](double x) { return std::exp(x) * std::sin(3 * x); },
                                [](double x) { return std::exp(x) * (std::sin(3 * x) + 3 * std::cos(3 * x)); },
                                nullptr};
  const auto rows = convergence_advection(FirstVariant::D1_42, SatFirst{-1.0}, ms, {16, 32, 64, 128});
  EXPECT_GE(rows.back().rate, 2.8);
}

TEST(Convergence, RejectsBadSizes) {
  const ManufacturedSolution ms{[](double x) { return x; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
  EXPECT_EQ(code_of([&] { convergence_advection(FirstVariant::D1_21, SatFirst{}, ms, {8, 16}); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { convergence_advection(FirstVariant::D1_21, SatFirst{}, ms, {8, 16, 16}); }),
            ErrorCode::InvalidArgument);
}

TEST(Green, ContinuousHeatFunction) {
  const SatSecond dirichlet = SatSecond::symmetric(0.0, 0.0, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(green_heat(0.25, 0.5, dirichlet, 1.0), 0.25 * 0.5);
  EXPECT_DOUBLE_EQ(green_heat(0.5, 0.25, dirichlet, 1.0), 0.25 * 0.5);
  EXPECT_THROW(green_heat(0.1, 0.2, SatSecond::symmetric(0.0, 0.0, 0.0, 1.0), 1.0), Error);
  // N20 interior columns follow the continuous function up to the boundary correction.
  const SbpSecondOp op = build_second(SecondVariant::N20, Grid(16));
  const AssembledSecond sys = assemble_second(op, default_heat_sat(op));
  const auto samples = green_compare(sys, inverse_by_route(sys, SteadyRoute::Lu));
  EXPECT_EQ(samples.size(), 17u * 17u);
}

TEST(EnergySuite, RandomStableRunsDecay) {
  const EnergySuiteReport rep = energy_suite(2024, 60);
  EXPECT_EQ(rep.runs, 60);
  EXPECT_EQ(rep.violations, 0) << rep.worst_case;
}
