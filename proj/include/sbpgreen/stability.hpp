// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbpgreen/green_second.hpp"
#include "sbpgreen/operators.hpp"
#include "sbpgreen/sat.hpp"

namespace sbpgreen {

/// Largest gamma with A - h gamma (d_L d_L^T + d_R d_R^T) positive semidefinite.
struct BorrowResult {
  double gamma = 0.0;
  double h_gamma = 0.0;
  double min_eig_at_limit = 0.0;
  int iterations = 0;
};

/// Feasibility threshold on the smallest eigenvalue used by the bisection.
inline constexpr double kBorrowEigTolerance = 1e-9;

/// Bisection on gamma to relative bracket width 1e-10.
BorrowResult borrow_gamma(const SbpSecondOp& op);

struct Theorem3Report {
  double h_gamma = 0.0;
  double xiT = 0.0;
  double residual = 0.0;  // |h gamma xi_T - 1|
  bool passed = false;    // residual <= 1e-6
};

/// Compares the bisection gamma with 1/xi_T. Needs a centrosymmetric operator.
Theorem3Report verify_theorem3(const SbpSecondOp& op);

struct QuadratureRoute {
  double qL = 0.0;
  double qR = 0.0;
  double qC = 0.0;
  double qT = 0.0;
};

/// Wide-stencil route with M = H: q = e^T H^{-1} e. NotWideStencil otherwise.
QuadratureRoute q_route_wide(const SbpSecondOp& op);

/// q~ = d^T K0 d with K0 the inverse of A with its first row and column
/// removed, bordered by zeros.
QuadratureRoute qtilde_route(const SbpSecondOp& op);

struct Table1Row {
  SecondVariant variant = SecondVariant::N20;
  int n = 0;
  double h_qtT = 0.0;        // h q~_T computed here
  double inv_gamma = 0.0;    // 1/gamma from the bisection at this n
  std::string reference_h_qtT;    // published value of h q~_T
  std::string reference_inv_gamma;  // published n -> infinity value of 1/gamma, "-" if none
  double theorem3_residual = 0.0;
  bool matches = false;
};

/// Built-in rows: (2,0) and (2,1) at the given n, (4,2) at n = 8.
std::vector<Table1Row> table1_report(int n = 16);

struct QrRow {
  int n = 0;
  double h_xi_lr = 0.0;
  double h_xi_c = 0.0;
  std::optional<double> reference_h_xi_lr;  // published values for n = 8..12
  std::optional<double> reference_h_xi_c;
  bool matches = true;
};

/// h xi_LR and h xi_C for the (4,2) narrow operator, n in [n_from, n_to].
/// Exact evaluates the rational closed form; Double uses LU on the assembled operator.
std::vector<QrRow> qrtab_report(int n_from, int n_to, Precision precision = Precision::Exact);

/// Penalties sigma = -xi_T/(beta xi_T + alpha), tau = 1/(beta xi_T + alpha) on both sides:
/// dual consistent, on the stability boundary, and singular.
SatSecond stable_singular_witness(const SbpSecondOp& op, double alpha = 1.0, double beta = 0.0);
SatSecond stable_singular_witness(double xiT, double alpha, double beta);

}  // namespace sbpgreen
