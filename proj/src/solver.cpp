// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sbpgreen/error.hpp"
#include "sbpgreen/stability.hpp"

namespace sbpgreen {

namespace {

[[noreturn]] void rethrow_singular(const Error& e) {
  fail(ErrorCode::SingularSystem, std::string("singular system (") + error_code_name(e.code()) + "): " + e.what(),
       e.detail());
}

bool is_singular_code(ErrorCode c) {
  return c == ErrorCode::SingularMatrix || c == ErrorCode::SingularPenalty || c == ErrorCode::SingularQbar ||
         c == ErrorCode::SingularAbar || c == ErrorCode::SingularSigma;
}

template <class F>
auto map_singular(F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (is_singular_code(e.code())) rethrow_singular(e);
    throw;
  }
}

Vector scale_by(const Vector& H, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = H[i] * v[i];
  return out;
}

double steady_residual(const DenseMatrix& K, const Vector& v, const Vector& rhs) {
  const Vector r = sub(K * v, rhs);
  const double scale = K.norm_inf() * norm_inf(v) + norm_inf(rhs);
  return scale > 0.0 ? norm_inf(r) / scale : norm_inf(r);
}

double h_energy(const Vector& H, const Vector& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += H[i] * v[i] * v[i];
  return s;
}

template <class Sys, class Forcing>
TransientRun run_rk4(const Sys& sys, Scheme scheme, int order, const Forcing& forcing, bool homogeneous,
                     const Vector& v0, const TransientOptions& opts) {
  const Vector& H = sys.op.H;
  const std::size_t N = sys.op.grid.size();
  if (v0.size() != N) fail(ErrorCode::InvalidArgument, "initial state has the wrong length");
  if (!(opts.t_end > 0.0)) fail(ErrorCode::InvalidArgument, "t_end must be positive");
  if (opts.dt < 0.0 || opts.cfl <= 0.0 || opts.output_every < 1) {
    fail(ErrorCode::InvalidArgument, "invalid time-stepping options");
  }
  const double dt_req = opts.dt > 0.0 ? opts.dt : default_time_step(sys.K, H, sys.op.grid.h, order, opts.cfl);
  const int steps = static_cast<int>(std::ceil(opts.t_end / dt_req - 1e-12));
  const double dt = opts.t_end / steps;

  // M = H^{-1} K, applied row by row.
  DenseMatrix M = sys.K;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) M(i, j) /= H[i];
  auto rhs = [&](double t, const Vector& v) {
    Vector k = forcing(t);
    const Vector mv = M * v;
    for (std::size_t i = 0; i < N; ++i) k[i] -= mv[i];
    return k;
  };

  TransientRun run;
  run.scheme = scheme;
  run.dt = dt;
  run.steps = steps;
  Vector v = v0;
  run.times.push_back(0.0);
  run.states.push_back(v);
  run.energy.reserve(static_cast<std::size_t>(steps) + 1);
  run.energy.push_back(h_energy(H, v));
  const double e0 = run.energy.front();
  Vector tmp(N);
  for (int s = 0; s < steps; ++s) {
    const double t = s * dt;
    const Vector k1 = rhs(t, v);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = v[i] + 0.5 * dt * k1[i];
    const Vector k2 = rhs(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = v[i] + 0.5 * dt * k2[i];
    const Vector k3 = rhs(t + 0.5 * dt, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = v[i] + dt * k3[i];
    const Vector k4 = rhs(t + dt, tmp);
    for (std::size_t i = 0; i < N; ++i) v[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double e = h_energy(H, v);
    if (!std::isfinite(e)) fail(ErrorCode::UnstableStep, "energy overflowed at step " + std::to_string(s + 1));
    if (e0 > 0.0) {
      const double growth = (e - run.energy.back()) / e0;
      run.max_step_growth = std::max(run.max_step_growth, growth);
      if (homogeneous && opts.check_energy && growth > opts.growth_tol) {
        std::ostringstream msg;
        msg << "energy grew by " << growth << " of its initial value at step " << s + 1;
        fail(ErrorCode::UnstableStep, msg.str());
      }
    }
    run.energy.push_back(e);
    const bool last = s + 1 == steps;
    if (last || (s + 1) % opts.output_every == 0) {
      run.times.push_back(last ? opts.t_end : (s + 1) * dt);
      run.states.push_back(v);
    }
  }
  return run;
}

double eval_or_zero(const std::function<double(double)>& g, double t) { return g ? g(t) : 0.0; }

Vector source_at(const std::function<double(double, double)>& f, const Grid& grid, double t) {
  Vector out(grid.size(), 0.0);
  if (!f) return out;
  for (int i = 0; i <= grid.n; ++i) out[static_cast<std::size_t>(i)] = f(t, grid.x(i));
  return out;
}

void check_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 3) fail(ErrorCode::InvalidArgument, "convergence study needs at least three grids");
  for (std::size_t k = 1; k < sizes.size(); ++k) {
    if (sizes[k] <= sizes[k - 1]) fail(ErrorCode::InvalidArgument, "grid sizes must be strictly increasing");
  }
}

double h_norm_error(const Vector& H, const Vector& v, const Grid& grid, const std::function<double(double)>& u) {
  double s = 0.0;
  for (int i = 0; i <= grid.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double e = v[k] - u(grid.x(i));
    s += H[k] * e * e;
  }
  return std::sqrt(s);
}

void fill_rates(std::vector<ConvergenceRow>& rows) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k == 0) {
      rows[k].rate = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    rows[k].rate = std::log(rows[k - 1].error / rows[k].error) / std::log(rows[k - 1].h / rows[k].h);
  }
}

}  // namespace

const char* route_name(SteadyRoute r) { return r == SteadyRoute::ClosedForm ? "closed_form" : "lu"; }

DenseMatrix inverse_by_route(const AssembledFirst& sys, SteadyRoute route, Precision precision) {
  return map_singular([&] {
    if (route == SteadyRoute::Lu) return lu_inverse(sys.K);
    const Grid& g = sys.op.grid;
    if (sys.op.variant == FirstVariant::D1_21) {
      if (sys.sat.sigmaL == 0.0) fail(ErrorCode::SingularPenalty, "Q~ is singular for sigma_L = 0");
      // The explicit entries are for unit spacing; Q carries no h.
      return closed_form_21(g, sys.sat.sigmaL);
    }
    if (sys.op.variant == FirstVariant::D1_42 && g.n % 2 == 0 && g.n >= 8) {
      return closed_form_42(g, sys.sat.sigmaL, precision);
    }
    return invert_general_first(sys).Kinv;
  });
}

DenseMatrix inverse_by_route(const AssembledSecond& sys, SteadyRoute route, Precision precision) {
  return map_singular([&] {
    if (route == SteadyRoute::Lu) return lu_inverse(sys.K);
    if (sys.op.variant == SecondVariant::External) return invert_general_second(sys).Kinv;
    return closed_form_inverse_second(sys, precision).Kinv;
  });
}

SteadySolution solve_steady(const AssembledFirst& sys, const Vector& f, double gL, SteadyRoute route,
                            Precision precision) {
  if (f.size() != sys.op.grid.size()) fail(ErrorCode::InvalidArgument, "forcing has the wrong length");
  const Vector rhs = scale_by(sys.op.H, sys.forcing(f, gL));
  SteadySolution s;
  s.route = route;
  if (route == SteadyRoute::Lu) {
    s.v = map_singular([&] { return lu_solve(sys.K, rhs); });
  } else {
    s.v = inverse_by_route(sys, route, precision) * rhs;
  }
  s.residual = steady_residual(sys.K, s.v, rhs);
  return s;
}

SteadySolution solve_steady(const AssembledSecond& sys, const Vector& f, double gL, double gR, SteadyRoute route,
                            Precision precision) {
  if (f.size() != sys.op.grid.size()) fail(ErrorCode::InvalidArgument, "forcing has the wrong length");
  const Vector rhs = scale_by(sys.op.H, sys.forcing(f, gL, gR));
  SteadySolution s;
  s.route = route;
  if (route == SteadyRoute::Lu) {
    s.v = map_singular([&] { return lu_solve(sys.K, rhs); });
  } else {
    s.v = inverse_by_route(sys, route, precision) * rhs;
  }
  s.residual = steady_residual(sys.K, s.v, rhs);
  return s;
}

SatSecond default_heat_sat(const SbpSecondOp& op, double alpha, double beta) {
  const double xiT = xi_scalars(op).total();
  const double denom = alpha + 2.0 * xiT * beta;
  if (denom <= 0.0) fail(ErrorCode::DegenerateBC, "alpha + 2 xi_T beta must be positive");
  const double tau = 1.0 / denom;
  return SatSecond::symmetric(-2.0 * xiT * tau, tau, alpha, beta);
}

Vector point_source(const Vector& H, std::size_t j) {
  if (j >= H.size()) fail(ErrorCode::InvalidArgument, "point source index out of range");
  Vector f(H.size(), 0.0);
  f[j] = 1.0 / H[j];
  return f;
}

double default_time_step(const DenseMatrix& K, const Vector& H, double h, int order, double cfl) {
  double norm = 0.0;
  for (std::size_t i = 0; i < K.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < K.cols(); ++j) s += std::abs(K(i, j));
    norm = std::max(norm, s / H[i]);
  }
  double dt = cfl * std::pow(h, order);
  if (norm > 0.0) dt = std::min(dt, 2.0 / norm);
  return dt;
}

TransientRun integrate(const AssembledFirst& sys, const TransientData& data, const Vector& v0,
                       const TransientOptions& opts) {
  auto forcing = [&](double t) { return sys.forcing(source_at(data.f, sys.op.grid, t), eval_or_zero(data.gL, t)); };
  return run_rk4(sys, Scheme::Advection, 1, forcing, data.homogeneous(), v0, opts);
}

TransientRun integrate(const AssembledSecond& sys, const TransientData& data, const Vector& v0,
                       const TransientOptions& opts) {
  auto forcing = [&](double t) {
    return sys.forcing(source_at(data.f, sys.op.grid, t), eval_or_zero(data.gL, t), eval_or_zero(data.gR, t));
  };
  return run_rk4(sys, Scheme::Heat, 2, forcing, data.homogeneous(), v0, opts);
}

std::vector<ConvergenceRow> convergence_heat(SecondVariant variant,
                                             const std::function<SatSecond(const SbpSecondOp&)>& make_sat,
                                             const ManufacturedSolution& ms, const std::vector<int>& sizes,
                                             double ell) {
  check_sizes(sizes);
  std::vector<ConvergenceRow> rows;
  for (int n : sizes) {
    const SbpSecondOp op = build_second(variant, Grid(n, ell));
    const SatSecond sat = make_sat(op);
    const AssembledSecond sys = assemble_second(op, sat);
    Vector f(op.grid.size());
    for (int i = 0; i <= n; ++i) f[static_cast<std::size_t>(i)] = -ms.d2u(op.grid.x(i));
    const double gL = sat.alphaL * ms.u(0.0) - sat.betaL * ms.du(0.0);
    const double gR = sat.alphaR * ms.u(ell) + sat.betaR * ms.du(ell);
    const SteadySolution s = solve_steady(sys, f, gL, gR, SteadyRoute::Lu);
    rows.push_back(ConvergenceRow{n, op.grid.h, h_norm_error(op.H, s.v, op.grid, ms.u), 0.0});
  }
  fill_rates(rows);
  return rows;
}

std::vector<ConvergenceRow> convergence_advection(FirstVariant variant, const SatFirst& sat,
                                                  const ManufacturedSolution& ms, const std::vector<int>& sizes,
                                                  double ell) {
  check_sizes(sizes);
  std::vector<ConvergenceRow> rows;
  for (int n : sizes) {
    const SbpFirstOp op = build_first(variant, Grid(n, ell));
    const AssembledFirst sys = assemble_first(op, sat);
    Vector f(op.grid.size());
    for (int i = 0; i <= n; ++i) f[static_cast<std::size_t>(i)] = ms.du(op.grid.x(i));
    const SteadySolution s = solve_steady(sys, f, ms.u(0.0), SteadyRoute::Lu);
    rows.push_back(ConvergenceRow{n, op.grid.h, h_norm_error(op.H, s.v, op.grid, ms.u), 0.0});
  }
  fill_rates(rows);
  return rows;
}

double green_heat(double x, double y, const SatSecond& bc, double ell) {
  const double w = bc.alphaL * bc.betaR + bc.alphaR * bc.betaL + bc.alphaL * bc.alphaR * ell;
  const double scale = std::abs(bc.alphaL * bc.betaR) + std::abs(bc.alphaR * bc.betaL) +
                       std::abs(bc.alphaL * bc.alphaR * ell);
  if (std::abs(w) <= 1e-14 * scale || scale == 0.0) {
    fail(ErrorCode::DegenerateBC, "Robin data admit a null mode; no Green's function");
  }
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return (bc.betaL + bc.alphaL * lo) * (bc.betaR + bc.alphaR * (ell - hi)) / w;
}

double green_advection(double x, double y) {
  if (y < x) return 1.0;
  return y == x ? 0.5 : 0.0;
}

std::vector<GreenSample> green_compare(const AssembledFirst& sys, const DenseMatrix& Kinv) {
  std::vector<GreenSample> out;
  const Grid& g = sys.op.grid;
  for (int i = 0; i <= g.n; ++i)
    for (int j = 0; j <= g.n; ++j) {
      out.push_back(GreenSample{g.x(i), g.x(j), Kinv(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
                                green_advection(g.x(i), g.x(j))});
    }
  return out;
}

std::vector<GreenSample> green_compare(const AssembledSecond& sys, const DenseMatrix& Kinv) {
  std::vector<GreenSample> out;
  const Grid& g = sys.op.grid;
  for (int i = 0; i <= g.n; ++i)
    for (int j = 0; j <= g.n; ++j) {
      out.push_back(GreenSample{g.x(i), g.x(j), Kinv(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
                                green_heat(g.x(i), g.x(j), sys.sat, g.ell)});
    }
  return out;
}

EnergySuiteReport energy_suite(std::uint64_t seed, int runs, double slack) {
  if (runs < 0) fail(ErrorCode::InvalidArgument, "runs must be non-negative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const FirstVariant firsts[] = {FirstVariant::D1_21, FirstVariant::D1_42};
  const SecondVariant seconds[] = {SecondVariant::N20, SecondVariant::N21, SecondVariant::N42, SecondVariant::W20};
  EnergySuiteReport rep;
  for (int r = 0; r < runs; ++r) {
    const bool heat = r % 2 == 1;
    const int n = 8 + static_cast<int>(unit(rng) * 17.0);
    std::ostringstream desc;
    TransientRun run;
    TransientOptions opts;
    if (!heat) {
      const FirstVariant v = firsts[static_cast<std::size_t>(unit(rng) * 2.0) % 2];
      const SbpFirstOp op = build_first(v, Grid(n));
      const SatFirst sat{-0.5 - 2.5 * unit(rng)};
      const AssembledFirst sys = assemble_first(op, sat);
      Vector v0(op.grid.size());
      for (double& x : v0) x = 2.0 * unit(rng) - 1.0;
      opts.dt = 0.5 * default_time_step(sys.K, op.H, op.grid.h, 1, opts.cfl);
      opts.t_end = 100 * opts.dt;
      run = integrate(sys, TransientData{}, v0, opts);
      desc << "advection " << variant_name(v) << " n=" << n << " sigmaL=" << sat.sigmaL;
      ++rep.advection_runs;
    } else {
      const SecondVariant v = seconds[static_cast<std::size_t>(unit(rng) * 4.0) % 4];
      const SbpSecondOp op = build_second(v, Grid(n));
      const double xiT = xi_scalars(op).total();
      SatSecond sat;
      for (int attempt = 0;; ++attempt) {
        if (attempt > 10000) fail(ErrorCode::InvalidArgument, "energy_suite: no stable SAT sampled");
        const double alpha = unit(rng) < 0.3 ? 1.0 : 0.2 + 1.8 * unit(rng);
        const double beta = unit(rng) < 0.5 ? 0.0 : unit(rng) / xiT * 4.0;
        const double tau = -0.5 + 2.0 * unit(rng);
        const double sigma = -4.0 * xiT * unit(rng);
        sat = SatSecond::symmetric(sigma, tau, alpha, beta);
        if (stability_second(sat, xiT).stable) break;
      }
      const AssembledSecond sys = assemble_second(op, sat);
      Vector v0(op.grid.size());
      for (double& x : v0) x = 2.0 * unit(rng) - 1.0;
      opts.dt = 0.5 * default_time_step(sys.K, op.H, op.grid.h, 2, opts.cfl);
      opts.t_end = 100 * opts.dt;
      run = integrate(sys, TransientData{}, v0, opts);
      desc << "heat " << variant_name(v) << " n=" << n << " sigma=" << sat.sigmaL << " tau=" << sat.tauL
           << " alpha=" << sat.alphaL << " beta=" << sat.betaL;
      ++rep.heat_runs;
    }
    ++rep.runs;
    if (run.max_step_growth > slack) ++rep.violations;
    if (rep.runs == 1 || run.max_step_growth > rep.worst_step_growth) {
      rep.worst_step_growth = run.max_step_growth;
      rep.worst_case = desc.str();
    }
  }
  return rep;
}

}  // namespace sbpgreen
