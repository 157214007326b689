// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/sat.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "sbpgreen/error.hpp"

namespace sbpgreen {

namespace {

void require_length(const Vector& v, std::size_t n, const char* what) {
  if (v.size() != n) fail(ErrorCode::InvalidArgument, std::string(what) + ": forcing length mismatch");
}

// a <= b with slack proportional to the magnitudes involved, so that
// configurations sitting exactly on a boundary survive rounding.
bool leq(double a, double b, std::initializer_list<double> terms) {
  double scale = 1.0;
  for (double t : terms) scale = std::max(scale, std::abs(t));
  return a <= b + 1e-12 * scale;
}

// Adds s * u v^T to K.
void add_dyad(DenseMatrix& K, double s, const Vector& u, const Vector& v) {
  if (s == 0.0) return;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) K(i, j) += s * u[i] * v[j];
  }
}

}  // namespace

Vector AssembledFirst::forcing(const Vector& f, double gL) const {
  require_length(f, op.grid.size(), "AssembledFirst::forcing");
  Vector out(f);
  out.front() -= sat.sigmaL * gL / op.H.front();
  return out;
}

Vector AssembledSecond::forcing(const Vector& f, double gL, double gR) const {
  require_length(f, op.grid.size(), "AssembledSecond::forcing");
  Vector out(f);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double left = sat.sigmaL * op.eL[i] - sat.tauL * op.dL[i];
    const double right = sat.sigmaR * op.eR[i] + sat.tauR * op.dR[i];
    out[i] -= (left * gL + right * gR) / op.H[i];
  }
  return out;
}

AssembledFirst assemble_first(const SbpFirstOp& op, const SatFirst& sat) {
  AssembledFirst sys{op, sat, op.Q};
  sys.K(0, 0) -= sat.sigmaL;
  return sys;
}

AssembledSecond assemble_second(const SbpSecondOp& op, const SatSecond& s) {
  AssembledSecond sys{op, s, op.A};
  DenseMatrix& K = sys.K;
  const Vector& eL = op.eL;
  const Vector& eR = op.eR;
  const Vector& dL = op.dL;
  const Vector& dR = op.dR;
  // Left: subtract [e_L, -d_L] [[sa, 1+sb], [ta, tb]] [e_L^T; -d_L^T].
  add_dyad(K, -s.sigmaL * s.alphaL, eL, eL);
  add_dyad(K, 1.0 + s.sigmaL * s.betaL, eL, dL);
  add_dyad(K, s.tauL * s.alphaL, dL, eL);
  add_dyad(K, -s.tauL * s.betaL, dL, dL);
  // Right: subtract [e_R, d_R] [[sa, 1+sb], [ta, tb]] [e_R^T; d_R^T].
  add_dyad(K, -s.sigmaR * s.alphaR, eR, eR);
  add_dyad(K, -(1.0 + s.sigmaR * s.betaR), eR, dR);
  add_dyad(K, -s.tauR * s.alphaR, dR, eR);
  add_dyad(K, -s.tauR * s.betaR, dR, dR);
  return sys;
}

FirstVerdict stability_first(const SatFirst& sat) {
  FirstVerdict v;
  v.stable = sat.sigmaL <= -0.5;
  v.dual_consistent = std::abs(sat.sigmaL + 1.0) <= kDualTolerance;
  return v;
}

namespace {

SideVerdict side_canonical(double sigma, double tau, double alpha, double beta, double delta, double xiT) {
  SideVerdict v;
  v.penalty_sign = leq(sigma * alpha, 0.0, {sigma * alpha});
  v.flux_bound = leq(tau * beta, 1.0 / xiT, {tau * beta, 1.0 / xiT});
  v.defect_lhs = delta * delta;
  v.defect_rhs = -4.0 * alpha * (sigma / xiT + tau);
  v.defect_bound = leq(v.defect_lhs, v.defect_rhs,
                       {v.defect_lhs, 4.0 * alpha * sigma / xiT, 4.0 * alpha * tau});
  return v;
}

SideVerdict side_borrowed(double sigma, double tau, double alpha, double beta, double hg) {
  SideVerdict v;
  v.penalty_sign = leq(2.0 * sigma * alpha, 0.0, {sigma * alpha});
  v.flux_bound = leq(2.0 * (tau * beta - hg), 0.0, {tau * beta, hg});
  const double cross = 1.0 + tau * alpha + sigma * beta;
  v.defect_lhs = cross * cross;
  v.defect_rhs = 4.0 * sigma * alpha * (tau * beta - hg);
  v.defect_bound = leq(v.defect_lhs, v.defect_rhs,
                       {v.defect_lhs, 4.0 * sigma * alpha * tau * beta, 4.0 * sigma * alpha * hg});
  return v;
}

}  // namespace

SecondVerdict stability_second(const SatSecond& s, double xiT) {
  if (!(xiT > 0.0)) fail(ErrorCode::InvalidArgument, "stability_second: xi_T must be positive");
  SecondVerdict v;
  v.left = side_canonical(s.sigmaL, s.tauL, s.alphaL, s.betaL, s.delta_L(), xiT);
  v.right = side_canonical(s.sigmaR, s.tauR, s.alphaR, s.betaR, s.delta_R(), xiT);
  v.stable = v.left.stable() && v.right.stable();
  v.dual_consistent = std::abs(s.delta_L()) <= kDualTolerance && std::abs(s.delta_R()) <= kDualTolerance;
  return v;
}

SecondVerdict stability_second_borrowed(const SatSecond& s, double h_gamma) {
  if (!(h_gamma > 0.0)) fail(ErrorCode::InvalidArgument, "stability_second_borrowed: h*gamma must be positive");
  SecondVerdict v;
  v.left = side_borrowed(s.sigmaL, s.tauL, s.alphaL, s.betaL, h_gamma);
  v.right = side_borrowed(s.sigmaR, s.tauR, s.alphaR, s.betaR, h_gamma);
  v.stable = v.left.stable() && v.right.stable();
  v.dual_consistent = std::abs(s.delta_L()) <= kDualTolerance && std::abs(s.delta_R()) <= kDualTolerance;
  return v;
}

}  // namespace sbpgreen
