// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/sbpgreen.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "sbpgreen/error.hpp"
#include "sbpgreen/green_second.hpp"
#include "sbpgreen/io.hpp"
#include "sbpgreen/solver.hpp"
#include "sbpgreen/stability.hpp"

using namespace sbpgreen;

struct sbpg_operator {
  bool second = false;
  SbpFirstOp first_op;
  SbpSecondOp second_op;
  std::string variant;
};

struct sbpg_system {
  bool second = false;
  std::optional<AssembledFirst> first_sys;
  std::optional<AssembledSecond> second_sys;
};

struct sbpg_matrix {
  DenseMatrix m;
};

struct sbpg_run {
  TransientRun run;
  Vector H;
};

namespace {

thread_local std::string g_last_error;

sbpg_status set_error(sbpg_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
sbpg_status guarded(F&& fn) {
  try {
    g_last_error.clear();
    fn();
    return SBPG_OK;
  } catch (const Error& e) {
    return set_error(static_cast<sbpg_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SBPG_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SBPG_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_string(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

sbpg_matrix* wrap(DenseMatrix m) { return new sbpg_matrix{std::move(m)}; }

DenseMatrix column(const Vector& v) { return DenseMatrix(v.size(), 1, v); }

SatSecond to_sat(const sbpg_sat& s) {
  return SatSecond{s.sigmaL, s.sigmaR, s.tauL, s.tauR, s.alphaL, s.alphaR, s.betaL, s.betaR};
}

sbpg_sat from_sat(const SatSecond& s) {
  return sbpg_sat{s.sigmaL, s.sigmaR, s.tauL, s.tauR, s.alphaL, s.alphaR, s.betaL, s.betaR};
}

const Grid& grid_of(const sbpg_operator* op) { return op->second ? op->second_op.grid : op->first_op.grid; }

const Vector& norm_of(const sbpg_system* sys) {
  return sys->second ? sys->second_sys->op.H : sys->first_sys->op.H;
}

Precision precision_of(int exact) { return exact ? Precision::Exact : Precision::Double; }

ManufacturedSolution manufactured(const std::string& name, double ell) {
  const double k = M_PI / ell;
  if (name == "sin") {
    return ManufacturedSolution{[k](double x) { return std::sin(k * x); },
                                [k](double x) { return k * std::cos(k * x); },
                                [k](double x) { return -k * k * std::sin(k * x); }};
  }
  if (name == "quadratic") {
    return ManufacturedSolution{[ell](double x) { return 0.5 * x * (ell - x); },
                                [ell](double x) { return 0.5 * ell - x; }, [](double) { return -1.0; }};
  }
  fail(ErrorCode::InvalidArgument, "unknown manufactured solution '" + name + "'");
}

}  // namespace

extern "C" {

const char* sbpg_last_error(void) { return g_last_error.c_str(); }

const char* sbpg_status_name(sbpg_status status) {
  if (status == SBPG_OK) return "Ok";
  if (status == SBPG_INTERNAL) return "Internal";
  if (status >= 1 && status <= 17) return error_code_name(static_cast<ErrorCode>(status));
  return "Unknown";
}

void sbpg_string_free(char* s) { std::free(s); }

sbpg_status sbpg_operator_create(const char* variant, int n, double ell, sbpg_operator** out) {
  return guarded([&] {
    require(variant && out, "null argument");
    auto op = std::make_unique<sbpg_operator>();
    op->variant = variant;
    FirstVariant fv;
    SecondVariant sv;
    if (parse_variant(variant, fv)) {
      op->first_op = build_first(fv, Grid(n, ell));
    } else if (parse_variant(variant, sv)) {
      op->second = true;
      op->second_op = build_second(sv, Grid(n, ell));
    } else {
      fail(ErrorCode::InvalidArgument, std::string("unknown variant '") + variant + "'");
    }
    *out = op.release();
  });
}

sbpg_status sbpg_operator_load_csv(const char* path, double ell, sbpg_operator** out) {
  return guarded([&] {
    require(path && out, "null argument");
    ExternalOperator ext = load_operator_csv(path, ell);
    auto op = std::make_unique<sbpg_operator>();
    op->second = ext.second;
    op->first_op = std::move(ext.first_op);
    op->second_op = std::move(ext.second_op);
    op->variant = "external";
    *out = op.release();
  });
}

void sbpg_operator_free(sbpg_operator* op) { delete op; }

int sbpg_operator_is_second(const sbpg_operator* op) { return op && op->second ? 1 : 0; }

int sbpg_operator_intervals(const sbpg_operator* op) { return op ? grid_of(op).n : 0; }

double sbpg_operator_length(const sbpg_operator* op) { return op ? grid_of(op).ell : 0.0; }

const char* sbpg_operator_variant(const sbpg_operator* op) { return op ? op->variant.c_str() : ""; }

sbpg_status sbpg_operator_nodes(const sbpg_operator* op, double* out, size_t len) {
  return guarded([&] {
    require(op && out, "null argument");
    const Grid& g = grid_of(op);
    require(len == g.size(), "node buffer must hold n + 1 entries");
    for (int i = 0; i <= g.n; ++i) out[i] = g.x(i);
  });
}

sbpg_status sbpg_operator_matrix(const sbpg_operator* op, const char* name, sbpg_matrix** out) {
  return guarded([&] {
    require(op && name && out, "null argument");
    const std::string k = name;
    if (!op->second) {
      const SbpFirstOp& o = op->first_op;
      if (k == "H") {
        *out = wrap(column(o.H));
      } else if (k == "Q") {
        *out = wrap(o.Q);
      } else if (k == "D1") {
        *out = wrap(o.D1);
      } else {
        fail(ErrorCode::InvalidArgument, "first-derivative operators have H, Q, D1; got '" + k + "'");
      }
      return;
    }
    const SbpSecondOp& o = op->second_op;
    if (k == "H") {
      *out = wrap(column(o.H));
    } else if (k == "A") {
      *out = wrap(o.A);
    } else if (k == "D2") {
      *out = wrap(o.D2);
    } else if (k == "dL") {
      *out = wrap(column(o.dL));
    } else if (k == "dR") {
      *out = wrap(column(o.dR));
    } else {
      fail(ErrorCode::InvalidArgument, "second-derivative operators have H, A, D2, dL, dR; got '" + k + "'");
    }
  });
}

sbpg_status sbpg_operator_verify_json(const sbpg_operator* op, char** json, int* passed) {
  return guarded([&] {
    require(op, "null operator");
    const SbpReport rep = op->second ? verify_sbp(op->second_op) : verify_sbp(op->first_op);
    put_string(json, sbp_report_json(rep, op->variant, grid_of(op).n));
    if (passed) *passed = rep.passed() ? 1 : 0;
  });
}

sbpg_status sbpg_operator_preliminaries_json(const sbpg_operator* op, char** json, double* max_residual) {
  return guarded([&] {
    require(op && op->second, "identity suite needs a second-derivative operator");
    const PreliminaryReport rep = verify_preliminaries(op->second_op);
    SbpReport as_sbp;
    as_sbp.residuals = rep.residuals;
    put_string(json, sbp_report_json(as_sbp, op->variant, grid_of(op).n));
    if (max_residual) *max_residual = rep.max_residual();
  });
}

sbpg_status sbpg_operator_xi_json(const sbpg_operator* op, char** json) {
  return guarded([&] {
    require(op && op->second, "xi scalars need a second-derivative operator");
    put_string(json, xi_json(xi_scalars(op->second_op)));
  });
}

sbpg_status sbpg_operator_theorem3_json(const sbpg_operator* op, char** json, int* passed) {
  return guarded([&] {
    require(op && op->second, "borrowing needs a second-derivative operator");
    const Theorem3Report rep = verify_theorem3(op->second_op);
    put_string(json, theorem3_json(rep, op->variant, grid_of(op).n));
    if (passed) *passed = rep.passed ? 1 : 0;
  });
}

sbpg_status sbpg_default_sat(const sbpg_operator* op, double alpha, double beta, sbpg_sat* out) {
  return guarded([&] {
    require(op && out, "null argument");
    if (!op->second) {
      *out = sbpg_sat{-1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0};
      return;
    }
    *out = from_sat(default_heat_sat(op->second_op, alpha, beta));
  });
}

sbpg_status sbpg_witness_sat(const sbpg_operator* op, double alpha, double beta, sbpg_sat* out) {
  return guarded([&] {
    require(op && out, "null argument");
    require(op->second, "the stable-singular witness exists for second-derivative operators only");
    *out = from_sat(stable_singular_witness(op->second_op, alpha, beta));
  });
}

sbpg_status sbpg_system_create(const sbpg_operator* op, const sbpg_sat* sat, sbpg_system** out) {
  return guarded([&] {
    require(op && sat && out, "null argument");
    auto sys = std::make_unique<sbpg_system>();
    sys->second = op->second;
    if (op->second) {
      sys->second_sys = assemble_second(op->second_op, to_sat(*sat));
    } else {
      sys->first_sys = assemble_first(op->first_op, SatFirst{sat->sigmaL});
    }
    *out = sys.release();
  });
}

void sbpg_system_free(sbpg_system* sys) { delete sys; }

sbpg_status sbpg_system_matrix(const sbpg_system* sys, sbpg_matrix** out) {
  return guarded([&] {
    require(sys && out, "null argument");
    *out = wrap(sys->second ? sys->second_sys->K : sys->first_sys->K);
  });
}

sbpg_status sbpg_system_invert(const sbpg_system* sys, int closed_form, int exact, sbpg_matrix** out) {
  return guarded([&] {
    require(sys && out, "null argument");
    const SteadyRoute route = closed_form ? SteadyRoute::ClosedForm : SteadyRoute::Lu;
    *out = wrap(sys->second ? inverse_by_route(*sys->second_sys, route, precision_of(exact))
                            : inverse_by_route(*sys->first_sys, route, precision_of(exact)));
  });
}

sbpg_status sbpg_system_inverse_residual(const sbpg_system* sys, const sbpg_matrix* inv, double* out) {
  return guarded([&] {
    require(sys && inv && out, "null argument");
    *out = identity_residual(sys->second ? sys->second_sys->K : sys->first_sys->K, inv->m);
  });
}

sbpg_status sbpg_system_singularity_json(const sbpg_system* sys, char** json, int* singular) {
  return guarded([&] {
    require(sys, "null system");
    SingularityVerdict v;
    if (sys->second) {
      v = singularity_check(*sys->second_sys, xi_scalars(sys->second_sys->op));
    } else {
      // Q~ is singular exactly when sigma_L = 0.
      v.singular = sys->first_sys->sat.sigmaL == 0.0;
      v.condition = v.singular ? kSigmaPenalty : kSigmaNone;
      v.rank_witness = rank_deficient(sys->first_sys->K);
      v.witness_checked = true;
    }
    put_string(json, singularity_json(v));
    if (singular) *singular = v.singular ? 1 : 0;
  });
}

sbpg_status sbpg_system_stability_json(const sbpg_system* sys, char** json, int* stable) {
  return guarded([&] {
    require(sys, "null system");
    if (!sys->second) {
      const FirstVerdict v = stability_first(sys->first_sys->sat);
      put_string(json, std::string("{\n  \"stable\": ") + (v.stable ? "true" : "false") +
                           ",\n  \"dual_consistent\": " + (v.dual_consistent ? "true" : "false") + "\n}\n");
      if (stable) *stable = v.stable ? 1 : 0;
      return;
    }
    const SecondVerdict v = stability_second(sys->second_sys->sat, xi_scalars(sys->second_sys->op).total());
    put_string(json, stability_json(v));
    if (stable) *stable = v.stable ? 1 : 0;
  });
}

sbpg_status sbpg_solve_steady(const sbpg_system* sys, const double* f, size_t len, double gL, double gR,
                              int closed_form, int exact, double* v, double* residual) {
  return guarded([&] {
    require(sys && f && v, "null argument");
    const Vector fv(f, f + len);
    const SteadyRoute route = closed_form ? SteadyRoute::ClosedForm : SteadyRoute::Lu;
    const SteadySolution s = sys->second
                                 ? solve_steady(*sys->second_sys, fv, gL, gR, route, precision_of(exact))
                                 : solve_steady(*sys->first_sys, fv, gL, route, precision_of(exact));
    std::copy(s.v.begin(), s.v.end(), v);
    if (residual) *residual = s.residual;
  });
}

sbpg_status sbpg_integrate(const sbpg_system* sys, const double* v0, size_t len, const double* f, double gL,
                           double gR, double t_end, double dt, double cfl, int output_every, sbpg_run** out) {
  return guarded([&] {
    require(sys && v0 && out, "null argument");
    const Vector& H = norm_of(sys);
    require(len == H.size(), "initial state must hold n + 1 entries");
    TransientData data;
    const Grid& grid = sys->second ? sys->second_sys->op.grid : sys->first_sys->op.grid;
    if (f) {
      auto fv = std::make_shared<Vector>(f, f + len);
      const double h = grid.h;
      data.f = [fv, h](double, double x) { return (*fv)[static_cast<std::size_t>(std::lround(x / h))]; };
    }
    if (gL != 0.0) data.gL = [gL](double) { return gL; };
    if (gR != 0.0) data.gR = [gR](double) { return gR; };
    TransientOptions opts;
    opts.t_end = t_end;
    opts.dt = dt;
    if (cfl > 0.0) opts.cfl = cfl;
    opts.output_every = output_every;
    const Vector init(v0, v0 + len);
    auto run = std::make_unique<sbpg_run>();
    run->H = H;
    run->run = sys->second ? integrate(*sys->second_sys, data, init, opts)
                           : integrate(*sys->first_sys, data, init, opts);
    *out = run.release();
  });
}

void sbpg_run_free(sbpg_run* run) { delete run; }

double sbpg_run_dt(const sbpg_run* run) { return run ? run->run.dt : 0.0; }

size_t sbpg_run_energy_count(const sbpg_run* run) { return run ? run->run.energy.size() : 0; }

const double* sbpg_run_energy(const sbpg_run* run) { return run ? run->run.energy.data() : nullptr; }

sbpg_status sbpg_run_csv(const sbpg_run* run, char** csv) {
  return guarded([&] {
    require(run && csv, "null argument");
    put_string(csv, run_csv(run->run, run->H));
  });
}

sbpg_status sbpg_convergence_csv(const char* equation, const char* variant, const char* solution,
                                 const int* sizes, size_t count, double ell, char** csv) {
  return guarded([&] {
    require(equation && variant && solution && sizes && csv, "null argument");
    const std::vector<int> ns(sizes, sizes + count);
    const ManufacturedSolution ms = manufactured(solution, ell);
    const std::string eq = equation;
    std::vector<ConvergenceRow> rows;
    if (eq == "heat") {
      SecondVariant sv;
      require(parse_variant(variant, sv), "heat needs a second-derivative variant");
      rows = convergence_heat(sv, [](const SbpSecondOp& op) { return default_heat_sat(op); }, ms, ns, ell);
    } else if (eq == "advection") {
      FirstVariant fv;
      require(parse_variant(variant, fv), "advection needs a first-derivative variant");
      rows = convergence_advection(fv, SatFirst{-1.0}, ms, ns, ell);
    } else {
      fail(ErrorCode::InvalidArgument, "equation must be heat or advection");
    }
    put_string(csv, convergence_csv(rows));
  });
}

sbpg_status sbpg_green_compare_csv(const sbpg_system* sys, const sbpg_matrix* inv, char** csv) {
  return guarded([&] {
    require(sys && inv && csv, "null argument");
    put_string(csv, green_csv(sys->second ? green_compare(*sys->second_sys, inv->m)
                                          : green_compare(*sys->first_sys, inv->m)));
  });
}

sbpg_status sbpg_table1(int n, char** text, char** csv, char** json, int* all_match) {
  return guarded([&] {
    const std::vector<Table1Row> rows = table1_report(n);
    put_string(text, table1_text(rows));
    put_string(csv, table1_csv(rows));
    put_string(json, table1_json(rows));
    if (all_match) {
      *all_match = 1;
      for (const auto& r : rows) *all_match &= r.matches ? 1 : 0;
    }
  });
}

sbpg_status sbpg_qrtab(int n_from, int n_to, int exact, char** text, char** csv, char** json, int* all_match) {
  return guarded([&] {
    const std::vector<QrRow> rows = qrtab_report(n_from, n_to, precision_of(exact));
    put_string(text, qrtab_text(rows));
    put_string(csv, qrtab_csv(rows));
    put_string(json, qrtab_json(rows));
    if (all_match) {
      *all_match = 1;
      for (const auto& r : rows) *all_match &= r.matches ? 1 : 0;
    }
  });
}

sbpg_status sbpg_energy_suite(uint64_t seed, int runs, char** json, int* violations) {
  return guarded([&] {
    const EnergySuiteReport rep = energy_suite(seed, runs);
    put_string(json, energy_json(rep));
    if (violations) *violations = rep.violations;
  });
}

void sbpg_matrix_free(sbpg_matrix* m) { delete m; }

size_t sbpg_matrix_rows(const sbpg_matrix* m) { return m ? m->m.rows() : 0; }

size_t sbpg_matrix_cols(const sbpg_matrix* m) { return m ? m->m.cols() : 0; }

const double* sbpg_matrix_data(const sbpg_matrix* m) { return m ? m->m.data().data() : nullptr; }

sbpg_status sbpg_matrix_max_diff(const sbpg_matrix* a, const sbpg_matrix* b, double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = max_abs_diff(a->m, b->m);
  });
}

sbpg_status sbpg_matrix_csv(const sbpg_matrix* m, char** csv) {
  return guarded([&] {
    require(m && csv, "null argument");
    put_string(csv, matrix_csv(m->m));
  });
}

}  // extern "C"
