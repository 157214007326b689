// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sbpgreen/linalg.hpp"
#include "sbpgreen/operators.hpp"

namespace sbpgreen {

/// Inflow penalty of the advection scheme v_t + D1 v = f + H^{-1} sigma_L e_L (v_0 - g_L).
struct SatFirst {
  double sigmaL = -1.0;
};

/// Robin penalties of the heat scheme. Left data: alpha_L u - beta_L u_x = g_L,
/// right data: alpha_R u + beta_R u_x = g_R.
struct SatSecond {
  double sigmaL = 0.0;
  double sigmaR = 0.0;
  double tauL = 0.0;
  double tauR = 0.0;
  double alphaL = 1.0;
  double alphaR = 1.0;
  double betaL = 0.0;
  double betaR = 0.0;

  /// Duality defects 1 + sigma*beta - tau*alpha; zero for adjoint-consistent penalties.
  double delta_L() const { return 1.0 + sigmaL * betaL - tauL * alphaL; }
  double delta_R() const { return 1.0 + sigmaR * betaR - tauR * alphaR; }

  /// Same Robin data and penalties on both sides.
  static SatSecond symmetric(double sigma, double tau, double alpha, double beta) {
    return SatSecond{sigma, sigma, tau, tau, alpha, alpha, beta, beta};
  }
};

/// Q~ = Q - sigma_L e_L e_L^T together with the operator and penalty.
struct AssembledFirst {
  SbpFirstOp op;
  SatFirst sat;
  DenseMatrix K;

  /// f~ = f - H^{-1} sigma_L e_L g_L.
  Vector forcing(const Vector& f, double gL) const;
};

/// A~ from the operator, the boundary data and the penalties.
struct AssembledSecond {
  SbpSecondOp op;
  SatSecond sat;
  DenseMatrix K;

  /// f~ = f - H^{-1}(sigma_L e_L - tau_L d_L) g_L - H^{-1}(sigma_R e_R + tau_R d_R) g_R.
  Vector forcing(const Vector& f, double gL, double gR) const;
};

AssembledFirst assemble_first(const SbpFirstOp& op, const SatFirst& sat);
AssembledSecond assemble_second(const SbpSecondOp& op, const SatSecond& sat);

struct FirstVerdict {
  bool stable = false;
  bool dual_consistent = false;
};

/// Per-side evaluation of the three stability inequalities.
struct SideVerdict {
  bool penalty_sign = false;   // sigma*alpha <= 0
  bool flux_bound = false;     // tau*beta <= 1/xi_T
  bool defect_bound = false;   // delta^2 <= -4 alpha (sigma/xi_T + tau)
  double defect_lhs = 0.0;
  double defect_rhs = 0.0;
  bool stable() const { return penalty_sign && flux_bound && defect_bound; }
};

struct SecondVerdict {
  SideVerdict left;
  SideVerdict right;
  bool stable = false;
  bool dual_consistent = false;
};

FirstVerdict stability_first(const SatFirst& sat);

/// Canonical form with xi_T (equal to 1/(h gamma)).
SecondVerdict stability_second(const SatSecond& sat, double xiT);

/// Form written with the borrowed amount h*gamma:
/// 2 sigma alpha <= 0, 2 (tau beta - h gamma) <= 0,
/// (1 + tau alpha + sigma beta)^2 <= 4 sigma alpha (tau beta - h gamma).
SecondVerdict stability_second_borrowed(const SatSecond& sat, double h_gamma);

/// Tolerance used for the duality classification |delta| <= 1e-12.
inline constexpr double kDualTolerance = 1e-12;

}  // namespace sbpgreen
