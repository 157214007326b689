// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/stability.hpp"

#include <cmath>

#include "sbpgreen/error.hpp"

namespace sbpgreen {

namespace {

struct PublishedQr {
  int n;
  double h_xi_lr;
  double h_xi_c;
};

constexpr PublishedQr kPublishedQr[] = {
    {8, 3.986350339808304, 0.000041141179445},
    {9, 3.986350339313381, 0.000002953803786},
    {10, 3.986350339310831, 0.000000212073570},
    {11, 3.986350339310817, 0.000000015226197},
    {12, 3.986350339310817, 0.000000001093192},
};

double borrowed_min_eig(const SbpSecondOp& op, double gamma) {
  DenseMatrix m = op.A;
  const double s = op.grid.h * gamma;
  const std::size_t N = op.grid.size();
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m(i, j) -= s * (op.dL[i] * op.dL[j] + op.dR[i] * op.dR[j]);
  return min_eig_sym(m);
}

QuadratureRoute finish(double qL, double qR, double qC) {
  return QuadratureRoute{qL, qR, qC, qL + std::abs(qC)};
}

}  // namespace

BorrowResult borrow_gamma(const SbpSecondOp& op) {
  BorrowResult r;
  auto feasible = [&](double g) {
    ++r.iterations;
    return borrowed_min_eig(op, g) >= -kBorrowEigTolerance;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) fail(ErrorCode::InvalidArgument, "borrow_gamma: borrowing is unbounded");
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.gamma = lo;
  r.h_gamma = op.grid.h * lo;
  r.min_eig_at_limit = borrowed_min_eig(op, lo);
  return r;
}

Theorem3Report verify_theorem3(const SbpSecondOp& op) {
  Theorem3Report rep;
  rep.xiT = xi_scalars(op).total();
  rep.h_gamma = borrow_gamma(op).h_gamma;
  rep.residual = std::abs(rep.h_gamma * rep.xiT - 1.0);
  rep.passed = rep.residual <= 1e-6;
  return rep;
}

QuadratureRoute q_route_wide(const SbpSecondOp& op) {
  if (op.variant != SecondVariant::W20) {
    fail(ErrorCode::NotWideStencil, "the M = H route applies to wide-stencil operators only");
  }
  const double qL = 1.0 / op.H.front();
  const double qR = 1.0 / op.H.back();
  // H is diagonal, so e_L^T H^{-1} e_R vanishes for n >= 1.
  return finish(qL, qR, 0.0);
}

QuadratureRoute qtilde_route(const SbpSecondOp& op) {
  const std::size_t N = op.grid.size();
  DenseMatrix inner;
  try {
    inner = lu_inverse(op.A.block(1, 1, N - 1, N - 1));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    fail(ErrorCode::SingularAbar, "A without its first row and column is singular");
  }
  auto form = [&](const Vector& u, const Vector& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < N; ++i) {
      if (u[i] == 0.0) continue;
      for (std::size_t j = 1; j < N; ++j) s += u[i] * inner(i - 1, j - 1) * v[j];
    }
    return s;
  };
  return finish(form(op.dL, op.dL), form(op.dR, op.dR), form(op.dL, op.dR));
}

std::vector<Table1Row> table1_report(int n) {
  struct Spec {
    SecondVariant variant;
    int n;
    const char* ref_q;
    double ref_q_value;
    const char* ref_gamma;
  };
  const Spec specs[] = {
      {SecondVariant::N20, n, "1", 1.0, "-"},
      {SecondVariant::N21, n, "2.5", 2.5, "2.5"},
      {SecondVariant::N42, 8, "3.986391480987749", 3.986391480987749, "3.986350339"},
  };
  std::vector<Table1Row> rows;
  for (const Spec& s : specs) {
    const SbpSecondOp op = build_second(s.variant, Grid(s.n));
    Table1Row row;
    row.variant = s.variant;
    row.n = s.n;
    row.h_qtT = op.grid.h * qtilde_route(op).qT;
    const BorrowResult b = borrow_gamma(op);
    row.inv_gamma = 1.0 / b.gamma;
    row.reference_h_qtT = s.ref_q;
    row.reference_inv_gamma = s.ref_gamma;
    const double xiT = xi_scalars(op).total();
    row.theorem3_residual = std::abs(b.h_gamma * xiT - 1.0);
    row.matches = std::abs(row.h_qtT - s.ref_q_value) <= 1e-12 && row.theorem3_residual <= 1e-6;
    rows.push_back(row);
  }
  return rows;
}

std::vector<QrRow> qrtab_report(int n_from, int n_to, Precision precision) {
  if (n_from < min_intervals(SecondVariant::N42) || n_to < n_from) {
    fail(ErrorCode::InvalidArgument, "qrtab_report: need 8 <= n_from <= n_to");
  }
  std::vector<QrRow> rows;
  for (int n = n_from; n <= n_to; ++n) {
    QrRow row;
    row.n = n;
    if (precision == Precision::Exact) {
      const ScaledXi42 s = n42_scaled_xi(n);
      row.h_xi_lr = to_double(s.h_xi_lr);
      row.h_xi_c = to_double(s.h_xi_c);
    } else {
      const SbpSecondOp op = build_second(SecondVariant::N42, Grid(n));
      const XiScalars xi = xi_scalars(op);
      row.h_xi_lr = op.grid.h * xi.xiL;
      row.h_xi_c = op.grid.h * xi.xiC;
    }
    for (const PublishedQr& p : kPublishedQr) {
      if (p.n != n) continue;
      row.reference_h_xi_lr = p.h_xi_lr;
      row.reference_h_xi_c = p.h_xi_c;
      row.matches = std::abs(row.h_xi_lr - p.h_xi_lr) <= 1e-12 && std::abs(row.h_xi_c - p.h_xi_c) <= 1e-12;
    }
    rows.push_back(row);
  }
  return rows;
}

SatSecond stable_singular_witness(double xiT, double alpha, double beta) {
  const double denom = beta * xiT + alpha;
  if (std::abs(denom) <= 1e-14 * std::max(std::abs(beta * xiT), std::abs(alpha))) {
    fail(ErrorCode::DegenerateBC, "beta * xi_T + alpha vanishes");
  }
  const double tau = 1.0 / denom;
  return SatSecond::symmetric(-xiT * tau, tau, alpha, beta);
}

SatSecond stable_singular_witness(const SbpSecondOp& op, double alpha, double beta) {
  return stable_singular_witness(xi_scalars(op).total(), alpha, beta);
}

}  // namespace sbpgreen
