// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Links only the C API.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbpgreen/sbpgreen.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSingular = 3;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(sbpg_status s) {
  switch (s) {
    case SBPG_SINGULAR_MATRIX:
    case SBPG_SINGULAR_PENALTY:
    case SBPG_SINGULAR_QBAR:
    case SBPG_SINGULAR_ABAR:
    case SBPG_SINGULAR_SIGMA:
    case SBPG_SINGULAR_SYSTEM:
      return kExitSingular;
    case SBPG_INVALID_ARGUMENT:
    case SBPG_GRID_TOO_SMALL:
    case SBPG_ODD_N:
    case SBPG_NOT_WIDE_STENCIL:
    case SBPG_NOT_CENTROSYMMETRIC:
    case SBPG_DEGENERATE_BC:
    case SBPG_PARSE_ERROR:
    case SBPG_IO_ERROR:
      return kExitUsage;
    default:
      return kExitMismatch;
  }
}

void check(sbpg_status s) {
  if (s != SBPG_OK) {
    throw Failure{exit_code_for(s), std::string(sbpg_status_name(s)) + ": " + sbpg_last_error()};
  }
}

bool is_singular(sbpg_status s) { return exit_code_for(s) == kExitSingular; }

struct OpDeleter {
  void operator()(sbpg_operator* p) const { sbpg_operator_free(p); }
};
struct SysDeleter {
  void operator()(sbpg_system* p) const { sbpg_system_free(p); }
};
struct MatDeleter {
  void operator()(sbpg_matrix* p) const { sbpg_matrix_free(p); }
};
struct RunDeleter {
  void operator()(sbpg_run* p) const { sbpg_run_free(p); }
};
using OpPtr = std::unique_ptr<sbpg_operator, OpDeleter>;
using SysPtr = std::unique_ptr<sbpg_system, SysDeleter>;
using MatPtr = std::unique_ptr<sbpg_matrix, MatDeleter>;
using RunPtr = std::unique_ptr<sbpg_run, RunDeleter>;

// Takes ownership of a C string from the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  sbpg_string_free(s);
  return out;
}

bool exact_precision() {
  const char* env = std::getenv("SBPGREEN_PRECISION");
  if (!env) return true;
  const std::string v = env;
  if (v == "double") return false;
  if (v == "exact" || v.empty()) return true;
  throw Failure{kExitUsage, "SBPGREEN_PRECISION must be double or exact"};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitUsage, "cannot write " + path};
  out << text;
}

std::string matrix_csv(const sbpg_matrix* m) {
  char* s = nullptr;
  check(sbpg_matrix_csv(m, &s));
  return take(s);
}

std::vector<double> nodes_of(const sbpg_operator* op) {
  std::vector<double> x(static_cast<std::size_t>(sbpg_operator_intervals(op)) + 1);
  check(sbpg_operator_nodes(op, x.data(), x.size()));
  return x;
}

// Options shared by invert and solve.
struct SystemOptions {
  std::string eq = "heat";
  std::string variant;
  std::string operator_file;
  int n = 16;
  double ell = 1.0;
  std::optional<double> sigmaL, sigmaR, tauL, tauR, alphaL, alphaR, betaL, betaR;
  bool witness = false;
};

void add_system_options(CLI::App* cmd, SystemOptions& o) {
  cmd->add_option("--eq", o.eq, "Equation: advection or heat")->check(CLI::IsMember({"advection", "heat"}));
  cmd->add_option("--variant", o.variant, "Operator variant (default d1_21 or n20)");
  cmd->add_option("--operator-file", o.operator_file, "Load operator coefficients from a CSV file");
  cmd->add_option("--n", o.n, "Number of grid intervals");
  cmd->add_option("--ell", o.ell, "Domain length");
  cmd->add_option("--sigmaL", o.sigmaL, "Left Dirichlet-type penalty");
  cmd->add_option("--sigmaR", o.sigmaR, "Right Dirichlet-type penalty");
  cmd->add_option("--tauL", o.tauL, "Left flux penalty");
  cmd->add_option("--tauR", o.tauR, "Right flux penalty");
  cmd->add_option("--alphaL", o.alphaL, "Left Robin coefficient of u");
  cmd->add_option("--alphaR", o.alphaR, "Right Robin coefficient of u");
  cmd->add_option("--betaL", o.betaL, "Left Robin coefficient of u_x");
  cmd->add_option("--betaR", o.betaR, "Right Robin coefficient of u_x");
  cmd->add_flag("--stable-singular-witness", o.witness, "Use the stable, dual-consistent and singular penalties");
}

OpPtr make_operator(const SystemOptions& o) {
  sbpg_operator* op = nullptr;
  if (!o.operator_file.empty()) {
    check(sbpg_operator_load_csv(o.operator_file.c_str(), o.ell, &op));
    return OpPtr(op);
  }
  std::string variant = o.variant;
  if (variant.empty()) variant = o.eq == "advection" ? "d1_21" : "n20";
  check(sbpg_operator_create(variant.c_str(), o.n, o.ell, &op));
  OpPtr out(op);
  const bool second = sbpg_operator_is_second(op) != 0;
  if (second != (o.eq == "heat")) {
    throw Failure{kExitUsage, "variant " + variant + " does not match --eq " + o.eq};
  }
  return out;
}

// Robin data default to Dirichlet; alpha = 0 without beta means Neumann.
void robin_defaults(const std::optional<double>& alpha, const std::optional<double>& beta, double& a, double& b) {
  a = alpha.value_or(1.0);
  b = beta.value_or(a == 0.0 ? 1.0 : 0.0);
}

sbpg_sat make_sat(const sbpg_operator* op, const SystemOptions& o) {
  sbpg_sat sat{};
  if (!sbpg_operator_is_second(op)) {
    sat.sigmaL = o.sigmaL.value_or(-1.0);
    return sat;
  }
  double aL, bL, aR, bR;
  robin_defaults(o.alphaL, o.betaL, aL, bL);
  robin_defaults(o.alphaR, o.betaR, aR, bR);
  sbpg_sat left{}, right{};
  if (o.witness) {
    check(sbpg_witness_sat(op, aL, bL, &left));
    check(sbpg_witness_sat(op, aR, bR, &right));
  } else {
    // Penalties are only needed when the user leaves them out.
    const bool need_left = !o.sigmaL || !o.tauL;
    const bool need_right = !o.sigmaR || !o.tauR;
    if (need_left) check(sbpg_default_sat(op, aL, bL, &left));
    if (need_right) check(sbpg_default_sat(op, aR, bR, &right));
  }
  sat.alphaL = aL;
  sat.betaL = bL;
  sat.alphaR = aR;
  sat.betaR = bR;
  sat.sigmaL = o.witness ? left.sigmaL : o.sigmaL.value_or(left.sigmaL);
  sat.tauL = o.witness ? left.tauL : o.tauL.value_or(left.tauL);
  sat.sigmaR = o.witness ? right.sigmaR : o.sigmaR.value_or(right.sigmaR);
  sat.tauR = o.witness ? right.tauR : o.tauR.value_or(right.tauR);
  return sat;
}

SysPtr make_system(const sbpg_operator* op, const sbpg_sat& sat) {
  sbpg_system* sys = nullptr;
  check(sbpg_system_create(op, &sat, &sys));
  return SysPtr(sys);
}

std::string sat_text(const sbpg_operator* op, const sbpg_sat& s) {
  std::ostringstream os;
  if (!sbpg_operator_is_second(op)) {
    os << "sigmaL=" << fmt(s.sigmaL);
  } else {
    os << "sigmaL=" << fmt(s.sigmaL) << " tauL=" << fmt(s.tauL) << " alphaL=" << fmt(s.alphaL)
       << " betaL=" << fmt(s.betaL) << " sigmaR=" << fmt(s.sigmaR) << " tauR=" << fmt(s.tauR)
       << " alphaR=" << fmt(s.alphaR) << " betaR=" << fmt(s.betaR);
  }
  return os.str();
}

// ---- build -------------------------------------------------------------

struct BuildOptions {
  std::string variant;
  std::string operator_file;
  int n = 16;
  double ell = 1.0;
  std::string out;
  std::string format = "text";
};

int run_build(const BuildOptions& o) {
  sbpg_operator* raw = nullptr;
  if (!o.operator_file.empty()) {
    check(sbpg_operator_load_csv(o.operator_file.c_str(), o.ell, &raw));
  } else {
    if (o.variant.empty()) throw Failure{kExitUsage, "--variant or --operator-file is required"};
    check(sbpg_operator_create(o.variant.c_str(), o.n, o.ell, &raw));
  }
  OpPtr op(raw);
  const bool second = sbpg_operator_is_second(op.get()) != 0;
  const std::vector<std::string> names =
      second ? std::vector<std::string>{"H", "A", "D2", "dL", "dR"} : std::vector<std::string>{"H", "Q", "D1"};
  for (const auto& name : names) {
    sbpg_matrix* m = nullptr;
    check(sbpg_operator_matrix(op.get(), name.c_str(), &m));
    MatPtr mat(m);
    write_file(o.out, name + ".csv", matrix_csv(mat.get()));
  }
  char* json = nullptr;
  int passed = 0;
  check(sbpg_operator_verify_json(op.get(), &json, &passed));
  const std::string report = take(json);
  write_file(o.out, "report.json", report);
  if (o.format == "json") {
    std::cout << report;
  } else {
    std::cout << sbpg_operator_variant(op.get()) << " n=" << sbpg_operator_intervals(op.get())
              << (passed ? " verified" : " FAILED verification") << "\n";
  }
  return passed ? kExitOk : kExitMismatch;
}

// ---- invert ------------------------------------------------------------

struct InvertOptions {
  SystemOptions sys;
  bool closed_form = false;
  bool expect_singular = false;
  std::string out;
};

int run_invert(InvertOptions& o) {
  o.sys.witness = o.sys.witness && o.sys.eq == "heat";
  OpPtr op = make_operator(o.sys);
  const sbpg_sat sat = make_sat(op.get(), o.sys);
  SysPtr sys = make_system(op.get(), sat);
  std::cout << "sat: " << sat_text(op.get(), sat) << "\n";

  char* sing_json = nullptr;
  int singular = 0;
  check(sbpg_system_singularity_json(sys.get(), &sing_json, &singular));
  const std::string sing = take(sing_json);
  char* stab_json = nullptr;
  int stable = 0;
  check(sbpg_system_stability_json(sys.get(), &stab_json, &stable));
  const std::string stab = take(stab_json);
  write_file(o.out, "singularity.json", sing);
  write_file(o.out, "stability.json", stab);
  std::cout << "stable: " << (stable ? "yes" : "no") << "\n";

  const bool exact = exact_precision();
  sbpg_matrix* inv = nullptr;
  const sbpg_status st = sbpg_system_invert(sys.get(), 0, exact, &inv);
  if (is_singular(st)) {
    std::cout << "singular: yes\n" << sing;
    if (o.sys.witness) std::cout << (stable ? "stable AND singular\n" : "singular but NOT stable\n");
    if (o.expect_singular || o.sys.witness) return stable || !o.sys.witness ? kExitOk : kExitMismatch;
    std::cerr << sbpg_last_error() << "\n";
    return kExitSingular;
  }
  check(st);
  MatPtr kinv(inv);
  double residual = 0.0;
  check(sbpg_system_inverse_residual(sys.get(), kinv.get(), &residual));
  std::cout << "singular: " << (singular ? "yes (analytic)" : "no") << "\n";
  std::cout << "inverse residual: " << fmt(residual) << "\n";
  write_file(o.out, "Kinv.csv", matrix_csv(kinv.get()));
  std::ostringstream report;
  report << "{\n  \"inverse_residual\": " << fmt(residual);
  int code = residual <= 1e-8 ? kExitOk : kExitMismatch;
  if (o.closed_form) {
    sbpg_matrix* cf = nullptr;
    check(sbpg_system_invert(sys.get(), 1, exact, &cf));
    MatPtr closed(cf);
    double dev = 0.0;
    check(sbpg_matrix_max_diff(kinv.get(), closed.get(), &dev));
    std::cout << "closed form deviation: " << fmt(dev) << "\n";
    write_file(o.out, "Kinv_closed.csv", matrix_csv(closed.get()));
    report << ",\n  \"closed_form_deviation\": " << fmt(dev);
    if (!(dev <= 1e-8)) code = kExitMismatch;
  }
  report << "\n}\n";
  write_file(o.out, "inverse_report.json", report.str());
  if (o.expect_singular || o.sys.witness) {
    std::cout << "expected a singular system\n";
    return kExitMismatch;
  }
  return code;
}

// ---- report ------------------------------------------------------------

int emit_table(const std::string& out, const std::string& stem, char* text, char* csv, char* json, int ok) {
  std::cout << take(text);
  write_file(out, stem + ".csv", take(csv));
  write_file(out, stem + ".json", take(json));
  return ok ? kExitOk : kExitMismatch;
}

// ---- solve -------------------------------------------------------------

struct SolveOptions {
  SystemOptions sys;
  std::string f = "one";
  double gL = 0.0;
  double gR = 0.0;
  std::string route = "lu";
  bool green_compare = false;
  std::string out;
  // transient
  double t_end = 1.0;
  double dt = 0.0;
  double cfl = 0.25;
  int output_every = 1;
  std::string init = "sin";
};

std::vector<double> profile(const std::string& name, const std::vector<double>& x, double ell,
                            const std::vector<double>& H) {
  std::vector<double> v(x.size(), 0.0);
  if (name == "zero") return v;
  if (name == "one") {
    for (auto& e : v) e = 1.0;
    return v;
  }
  if (name == "sin") {
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = std::sin(M_PI * x[i] / ell);
    return v;
  }
  if (name == "cos") {
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = std::cos(M_PI * x[i] / ell);
    return v;
  }
  if (name.rfind("point:", 0) == 0) {
    const std::size_t j = std::stoul(name.substr(6));
    if (j >= x.size()) throw Failure{kExitUsage, "point source index out of range"};
    v[j] = 1.0 / H[j];
    return v;
  }
  throw Failure{kExitUsage, "unknown profile '" + name + "' (zero, one, sin, cos, point:j)"};
}

std::vector<double> norm_diag(const sbpg_operator* op) {
  sbpg_matrix* m = nullptr;
  check(sbpg_operator_matrix(op, "H", &m));
  MatPtr mat(m);
  const double* d = sbpg_matrix_data(mat.get());
  return std::vector<double>(d, d + sbpg_matrix_rows(mat.get()));
}

int run_solve_steady(SolveOptions& o) {
  OpPtr op = make_operator(o.sys);
  const sbpg_sat sat = make_sat(op.get(), o.sys);
  SysPtr sys = make_system(op.get(), sat);
  const std::vector<double> x = nodes_of(op.get());
  const std::vector<double> H = norm_diag(op.get());
  const std::vector<double> f = profile(o.f, x, o.sys.ell, H);
  std::vector<double> v(x.size());
  double residual = 0.0;
  const bool closed = o.route == "closed";
  const sbpg_status st =
      sbpg_solve_steady(sys.get(), f.data(), f.size(), o.gL, o.gR, closed, exact_precision(), v.data(), &residual);
  if (is_singular(st)) {
    std::cerr << sbpg_status_name(st) << ": " << sbpg_last_error() << "\n";
    return kExitSingular;
  }
  check(st);
  std::string csv = "x,v\n";
  for (std::size_t i = 0; i < x.size(); ++i) csv += fmt(x[i]) + "," + fmt(v[i]) + "\n";
  write_file(o.out, "solution.csv", csv);
  if (o.out.empty()) std::cout << csv;
  std::cout << "residual: " << fmt(residual) << "\n";
  if (o.green_compare) {
    sbpg_matrix* inv = nullptr;
    check(sbpg_system_invert(sys.get(), closed, exact_precision(), &inv));
    MatPtr kinv(inv);
    char* g = nullptr;
    check(sbpg_green_compare_csv(sys.get(), kinv.get(), &g));
    const std::string green = take(g);
    write_file(o.out, "green.csv", green);
    if (o.out.empty()) std::cout << green;
  }
  return residual <= 1e-9 ? kExitOk : kExitMismatch;
}

int run_solve_transient(SolveOptions& o) {
  OpPtr op = make_operator(o.sys);
  const sbpg_sat sat = make_sat(op.get(), o.sys);
  SysPtr sys = make_system(op.get(), sat);
  const std::vector<double> x = nodes_of(op.get());
  const std::vector<double> H = norm_diag(op.get());
  const std::vector<double> v0 = profile(o.init, x, o.sys.ell, H);
  const std::vector<double> f = profile(o.f, x, o.sys.ell, H);
  const bool has_f = o.f != "zero";
  sbpg_run* raw = nullptr;
  const sbpg_status st = sbpg_integrate(sys.get(), v0.data(), v0.size(), has_f ? f.data() : nullptr, o.gL, o.gR,
                                        o.t_end, o.dt, o.cfl, o.output_every, &raw);
  if (st == SBPG_UNSTABLE_STEP) {
    std::cerr << "UnstableStep: " << sbpg_last_error() << "\n";
    return kExitMismatch;
  }
  check(st);
  RunPtr run(raw);
  char* csv = nullptr;
  check(sbpg_run_csv(run.get(), &csv));
  write_file(o.out, "run.csv", take(csv));
  const std::size_t count = sbpg_run_energy_count(run.get());
  const double* e = sbpg_run_energy(run.get());
  const double dt = sbpg_run_dt(run.get());
  std::string energy = "t,energy\n";
  bool monotone = true;
  for (std::size_t k = 0; k < count; ++k) {
    energy += fmt(dt * static_cast<double>(k)) + "," + fmt(e[k]) + "\n";
    if (k > 0 && e[k] > e[k - 1] + 1e-12 * e[0]) monotone = false;
  }
  write_file(o.out, "energy.csv", energy);
  std::cout << "steps: " << count - 1 << " dt: " << fmt(dt) << "\n";
  std::cout << "energy: " << fmt(e[0]) << " -> " << fmt(e[count - 1])
            << (monotone ? " (non-increasing)" : " (increased)") << "\n";
  const bool homogeneous = !has_f && o.gL == 0.0 && o.gR == 0.0;
  return (!homogeneous || monotone) ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Summation-by-parts operators, boundary penalties and discrete Green's functions"};
  app.require_subcommand(1);

  BuildOptions build;
  CLI::App* build_cmd = app.add_subcommand("build", "Build an operator, write its matrices and verify it");
  build_cmd->add_option("--variant", build.variant, "d1_21, d1_42, n20, n21, n42, w20");
  build_cmd->add_option("--operator-file", build.operator_file, "Operator coefficient CSV");
  build_cmd->add_option("--n", build.n, "Number of grid intervals");
  build_cmd->add_option("--ell", build.ell, "Domain length");
  build_cmd->add_option("--out", build.out, "Output directory");
  build_cmd->add_option("--format", build.format, "Report format on stdout")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  InvertOptions invert;
  CLI::App* invert_cmd = app.add_subcommand("invert", "Invert the penalised operator");
  add_system_options(invert_cmd, invert.sys);
  invert_cmd->add_flag("--closed-form", invert.closed_form, "Compare against the explicit inverse");
  invert_cmd->add_flag("--expect-singular", invert.expect_singular, "Succeed only if the system is singular");
  invert_cmd->add_option("--out", invert.out, "Output directory");

  CLI::App* report_cmd = app.add_subcommand("report", "Reproduce published tables and run verification suites");
  report_cmd->require_subcommand(1);
  std::string report_out;
  report_cmd->add_option("--out", report_out, "Output directory");
  int t1_n = 16;
  CLI::App* t1 = report_cmd->add_subcommand("table1", "Quadrature scalars and borrowing capacity");
  t1->add_option("--n", t1_n, "Grid size for the (2,0) and (2,1) rows");
  int qr_from = 8, qr_to = 12;
  CLI::App* qr = report_cmd->add_subcommand("qrtab", "h xi_LR and h xi_C of the (4,2) narrow operator");
  qr->add_option("--n-from", qr_from, "First n");
  qr->add_option("--n-to", qr_to, "Last n");
  std::string t3_variant = "n20";
  int t3_n = 16;
  CLI::App* t3 = report_cmd->add_subcommand("theorem3", "Borrowing bisection versus 1/xi_T");
  t3->add_option("--variant", t3_variant, "n20, n21, n42, w20");
  t3->add_option("--n", t3_n, "Number of grid intervals");
  std::uint64_t seed = 1;
  int runs = 200;
  CLI::App* en = report_cmd->add_subcommand("energy", "Randomised energy-decay suite");
  en->add_option("--seed", seed, "Random seed");
  en->add_option("--runs", runs, "Number of runs");
  std::string cv_eq = "heat", cv_variant, cv_solution = "sin";
  std::vector<int> cv_sizes{8, 16, 32, 64};
  CLI::App* cv = report_cmd->add_subcommand("convergence", "Steady manufactured-solution study");
  cv->add_option("--eq", cv_eq, "heat or advection")->check(CLI::IsMember({"advection", "heat"}));
  cv->add_option("--variant", cv_variant, "Operator variant");
  cv->add_option("--solution", cv_solution, "sin or quadratic");
  cv->add_option("--sizes", cv_sizes, "Strictly increasing grid sizes")->delimiter(',');

  SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Steady and transient solves");
  solve_cmd->require_subcommand(1);
  CLI::App* steady = solve_cmd->add_subcommand("steady", "Solve K v = H f~");
  add_system_options(steady, solve.sys);
  steady->add_option("--f", solve.f, "Source: zero, one, sin, cos, point:j");
  steady->add_option("--gL", solve.gL, "Left boundary data");
  steady->add_option("--gR", solve.gR, "Right boundary data");
  steady->add_option("--route", solve.route, "lu or closed")->check(CLI::IsMember({"lu", "closed"}));
  steady->add_flag("--green-compare", solve.green_compare, "Write discrete and continuous Green's functions");
  steady->add_option("--out", solve.out, "Output directory");
  CLI::App* transient = solve_cmd->add_subcommand("transient", "RK4 in time");
  add_system_options(transient, solve.sys);
  CLI::Option* transient_f = transient->add_option("--f", solve.f, "Source: zero (default), one, sin, cos, point:j");
  transient->add_option("--gL", solve.gL, "Left boundary data");
  transient->add_option("--gR", solve.gR, "Right boundary data");
  transient->add_option("--init", solve.init, "Initial profile: zero, one, sin, cos");
  transient->add_option("--t-end", solve.t_end, "Final time");
  transient->add_option("--dt", solve.dt, "Time step (0 picks the capped default)");
  transient->add_option("--cfl", solve.cfl, "c in dt <= c h^p");
  transient->add_option("--output-every", solve.output_every, "Store every k-th step");
  transient->add_option("--out", solve.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build_cmd->parsed()) return run_build(build);
    if (invert_cmd->parsed()) return run_invert(invert);
    if (report_cmd->parsed()) {
      char *text = nullptr, *csv = nullptr, *json = nullptr;
      int ok = 0;
      if (t1->parsed()) {
        check(sbpg_table1(t1_n, &text, &csv, &json, &ok));
        return emit_table(report_out, "table1", text, csv, json, ok);
      }
      if (qr->parsed()) {
        check(sbpg_qrtab(qr_from, qr_to, exact_precision(), &text, &csv, &json, &ok));
        return emit_table(report_out, "qrtab", text, csv, json, ok);
      }
      if (t3->parsed()) {
        sbpg_operator* raw = nullptr;
        check(sbpg_operator_create(t3_variant.c_str(), t3_n, 1.0, &raw));
        OpPtr op(raw);
        check(sbpg_operator_theorem3_json(op.get(), &json, &ok));
        const std::string j = take(json);
        std::cout << j;
        write_file(report_out, "theorem3.json", j);
        return ok ? kExitOk : kExitMismatch;
      }
      if (en->parsed()) {
        int violations = 0;
        check(sbpg_energy_suite(seed, runs, &json, &violations));
        const std::string j = take(json);
        std::cout << j;
        write_file(report_out, "energy.json", j);
        return violations == 0 ? kExitOk : kExitMismatch;
      }
      if (cv->parsed()) {
        std::string variant = cv_variant.empty() ? (cv_eq == "heat" ? "n20" : "d1_21") : cv_variant;
        check(sbpg_convergence_csv(cv_eq.c_str(), variant.c_str(), cv_solution.c_str(), cv_sizes.data(),
                                   cv_sizes.size(), 1.0, &csv));
        const std::string c = take(csv);
        std::cout << c;
        write_file(report_out, "convergence.csv", c);
        return kExitOk;
      }
    }
    if (steady->parsed()) return run_solve_steady(solve);
    if (transient->parsed()) {
      if (transient_f->count() == 0) solve.f = "zero";
      return run_solve_transient(solve);
    }
  } catch (const Failure& f) {
    std::cerr << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitUsage;
}
