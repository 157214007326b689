// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sbpgreen/green_first.hpp"
#include "sbpgreen/linalg.hpp"
#include "sbpgreen/sat.hpp"

namespace sbpgreen {

/// Boundary scalars xi_L = -d_L^T b_L, xi_R = d_R^T b_R, xi_C = d_L^T b_R
/// and xi_T = xi_L + |xi_C| (defined only for centrosymmetric operators).
struct XiScalars {
  double xiL = 0.0;
  double xiR = 0.0;
  double xiC = 0.0;
  double xiT = 0.0;
  bool centrosymmetric = false;

  /// xi_T, or NotCentrosymmetric when the closures differ.
  double total() const;
};

/// Operator-only parts of the inverse: G2 borders the inverse of the
/// interior block of A with zeros, b_L = 1 - x/ell - G2 d_L, b_R = x/ell + G2 d_R.
struct SecondParts {
  DenseMatrix G2;
  Vector bL;
  Vector bR;
  XiScalars xi;
};

/// Computes G2 by LU on the interior block; SingularAbar if that fails.
SecondParts second_parts(const SbpSecondOp& op);
/// Contraction route (d^T b).
XiScalars xi_scalars(const SbpSecondOp& op);
/// Alternative route xi_LR = 1/ell + d^T G2 d, xi_C = 1/ell + d_L^T G2 d_R.
XiScalars xi_scalars_alt(const SbpSecondOp& op);

/// Bitmask of the two ways the 4x4 system can degenerate.
enum SigmaCondition : int {
  kSigmaNone = 0,
  kSigmaBoundaryData = 1,  // continuous Robin data admit a null mode (e.g. Neumann on both sides)
  kSigmaPenalty = 2,       // penalty choice sits on the singular locus
};

/// Sigma = [[sL + tL xiL, -tR xiC, 0, 0], [-tL xiC, sR + tR xiR, 0, 0],
///          [dL, 0, aL + bL/ell, -bL/ell], [0, dR, -bR/ell, aR + bR/ell]].
DenseMatrix sigma_matrix(const SatSecond& sat, const XiScalars& xi, double ell);

struct SingularityVerdict {
  bool singular = false;
  int condition = kSigmaNone;
  double det_boundary = 0.0;  // determinant of the Robin-data block
  double det_penalty = 0.0;   // determinant of the penalty block
  bool has_zeta = false;      // penalty condition fired with tau_L xi_C != 0
  double zeta = 0.0;          // sigma_L = -(xi_L + zeta |xi_C|) tau_L
  bool rank_witness = false;  // rank_deficient(A~)
  bool witness_checked = false;

  /// "BC", "penalty", "BC+penalty" or "none".
  std::string condition_name() const;
  bool agrees() const { return !witness_checked || singular == rank_witness; }
};

/// Analytic verdict. A block counts as singular when its determinant is below
/// 1e-12 times the square of the largest term entering it.
SingularityVerdict singularity_check(const SatSecond& sat, const XiScalars& xi, double ell);
/// Analytic verdict plus the rank witness on the assembled matrix.
SingularityVerdict singularity_check(const AssembledSecond& sys, const XiScalars& xi);

struct GreenSecond {
  DenseMatrix G2;
  Vector bL;
  Vector bR;
  XiScalars xi;
  DenseMatrix Sigma;
  DenseMatrix Kinv;
};

/// Inverse of A~ from the parts: G2 + W Sigma^{-1} V with
/// W = [-tL bL, -tR bR, 1 - x/ell, x/ell], V = [bL^T; bR^T; betaL (1 - x/ell)^T; betaR x^T/ell].
/// Throws SingularSigma (detail = SigmaCondition mask) when Sigma is singular.
GreenSecond assemble_inverse_second(const SecondParts& parts, const SatSecond& sat, const Grid& grid);

GreenSecond invert_general_second(const AssembledSecond& sys);

/// Explicit G2, b-vectors and xi scalars for N20, N21, N42 and W20.
SecondParts closed_form_second(SecondVariant variant, const Grid& grid,
                               Precision precision = Precision::Exact);

/// Robin inverse assembled from the explicit parts instead of an LU of the interior block.
GreenSecond closed_form_inverse_second(const AssembledSecond& sys, Precision precision = Precision::Exact);

/// Rational sequences of the explicit (4,2) inverse (psi = 7 + 4 sqrt(3)):
/// P_i = ((51 - 2/psi) psi^(i-2) - (51 - 2 psi) psi^(2-i)) / (psi - 1/psi),
/// Q_n = (psi^(n-4) (2/psi - 51)^2 - psi^(4-n) (2 psi - 51)^2) / (psi - 1/psi).
BigRational n42_P(long i);
BigRational n42_Q(long n);

/// h xi_LR and h xi_C of the (4,2) narrow operator, exact.
struct ScaledXi42 {
  BigRational h_xi_lr;
  BigRational h_xi_c;
};
ScaledXi42 n42_scaled_xi(int n);

/// Residuals of the structural identities the inverse relies on.
struct PreliminaryReport {
  std::vector<std::pair<std::string, double>> residuals;
  double max_residual() const;
  double residual(const std::string& name) const;
};

PreliminaryReport verify_preliminaries(const SbpSecondOp& op);

}  // namespace sbpgreen
