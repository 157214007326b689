// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sbpgreen/green_first.hpp"
#include "sbpgreen/green_second.hpp"
#include "sbpgreen/sat.hpp"

namespace sbpgreen {

enum class SteadyRoute { ClosedForm, Lu };
const char* route_name(SteadyRoute r);

struct SteadySolution {
  Vector v;
  double residual = 0.0;  // ||K v - H f~||_inf / (||K||_inf ||v||_inf + ||H f~||_inf)
  SteadyRoute route = SteadyRoute::Lu;
};

/// Solves K v = H f~ for nodal f. Singular configurations raise SingularSystem.
/// ClosedForm uses the explicit inverse when the variant has one and the
/// structured decomposition otherwise.
SteadySolution solve_steady(const AssembledFirst& sys, const Vector& f, double gL, SteadyRoute route,
                            Precision precision = Precision::Exact);
SteadySolution solve_steady(const AssembledSecond& sys, const Vector& f, double gL, double gR,
                            SteadyRoute route, Precision precision = Precision::Exact);

/// Inverse of K by either route, with the same error mapping as solve_steady.
DenseMatrix inverse_by_route(const AssembledFirst& sys, SteadyRoute route, Precision precision = Precision::Exact);
DenseMatrix inverse_by_route(const AssembledSecond& sys, SteadyRoute route, Precision precision = Precision::Exact);

/// Dual-consistent Robin penalty on both sides: tau = 1/(alpha + 2 xi_T beta), sigma = -2 xi_T tau.
SatSecond default_heat_sat(const SbpSecondOp& op, double alpha = 1.0, double beta = 0.0);

/// f = H^{-1} e_j, so that K^{-1} H f is column j of K^{-1}.
Vector point_source(const Vector& H, std::size_t j);

enum class Scheme { Advection, Heat };

/// Source f(t, x) and boundary data g(t). Empty functions stand for zero.
struct TransientData {
  std::function<double(double, double)> f;
  std::function<double(double)> gL;
  std::function<double(double)> gR;

  bool homogeneous() const { return !f && !gL && !gR; }
};

struct TransientOptions {
  double t_end = 1.0;
  double dt = 0.0;         // 0 selects the capped default
  double cfl = 0.25;       // c in dt <= c h^p (p = 1 advection, 2 heat)
  int output_every = 1;    // states are stored every this many steps and at t_end
  double growth_tol = 1e-6;  // relative one-step energy growth that raises UnstableStep
  bool check_energy = true;  // only applied to homogeneous data
};

struct TransientRun {
  Scheme scheme = Scheme::Advection;
  double dt = 0.0;
  int steps = 0;
  std::vector<double> times;   // output times
  std::vector<Vector> states;  // v at the output times
  std::vector<double> energy;  // ||v||_H^2 after every step, energy[0] at t = 0
  double max_step_growth = 0.0;  // max over steps of (E_{k+1} - E_k) / E_0
};

/// Default step: min(c h^p, 2 / ||H^{-1} K||_inf). The second bound keeps RK4
/// inside its real-axis stability interval when the penalties are stiff.
double default_time_step(const DenseMatrix& K, const Vector& H, double h, int order, double cfl);

/// Classical RK4 on v_t + H^{-1} K v = f~(t).
TransientRun integrate(const AssembledFirst& sys, const TransientData& data, const Vector& v0,
                       const TransientOptions& opts);
TransientRun integrate(const AssembledSecond& sys, const TransientData& data, const Vector& v0,
                       const TransientOptions& opts);

/// Smooth exact solution with its first two derivatives.
struct ManufacturedSolution {
  std::function<double(double)> u;
  std::function<double(double)> du;
  std::function<double(double)> d2u;
};

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  double error = 0.0;  // H-norm of the nodal error
  double rate = 0.0;   // NaN on the first row
};

/// Steady manufactured-solution studies. Sizes must be strictly increasing with
/// at least three entries. The heat study uses -u'' = f with Robin data taken
/// from u; the SAT is rebuilt per grid by `make_sat`.
std::vector<ConvergenceRow> convergence_heat(SecondVariant variant,
                                             const std::function<SatSecond(const SbpSecondOp&)>& make_sat,
                                             const ManufacturedSolution& ms, const std::vector<int>& sizes,
                                             double ell = 1.0);
/// u' = f with inflow data u(0).
std::vector<ConvergenceRow> convergence_advection(FirstVariant variant, const SatFirst& sat,
                                                  const ManufacturedSolution& ms, const std::vector<int>& sizes,
                                                  double ell = 1.0);

/// Green's function of -u'' with alpha_L u - beta_L u' = 0 at 0 and
/// alpha_R u + beta_R u' = 0 at ell. DegenerateBC when a null mode exists.
double green_heat(double x, double y, const SatSecond& bc, double ell);
/// Green's function of u' with u(0) = 0: 1 for y < x, 1/2 at y = x, 0 otherwise.
double green_advection(double x, double y);

struct GreenSample {
  double x = 0.0;
  double y = 0.0;
  double discrete = 0.0;
  double continuous = 0.0;
};

/// All node pairs (x_i, y_j, Kinv_ij, G(x_i, y_j)).
std::vector<GreenSample> green_compare(const AssembledFirst& sys, const DenseMatrix& Kinv);
std::vector<GreenSample> green_compare(const AssembledSecond& sys, const DenseMatrix& Kinv);

struct EnergySuiteReport {
  int runs = 0;
  int advection_runs = 0;
  int heat_runs = 0;
  int violations = 0;            // runs with a step growing more than slack * E_0
  double worst_step_growth = 0.0;
  std::string worst_case;        // description of the worst run
};

/// Random stable SATs with homogeneous data, dt at half the default cap.
EnergySuiteReport energy_suite(std::uint64_t seed, int runs, double slack = 1e-12);

}  // namespace sbpgreen
