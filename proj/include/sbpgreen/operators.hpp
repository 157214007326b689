// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sbpgreen/linalg.hpp"

namespace sbpgreen {

/// Uniform mesh on [0, ell] with n intervals and n + 1 nodes.
struct Grid {
  int n = 0;
  double ell = 1.0;
  double h = 1.0;

  Grid() = default;
  explicit Grid(int n, double ell = 1.0);

  std::size_t size() const { return static_cast<std::size_t>(n) + 1; }
  /// Node i, computed as ell*i/n so that x(n) == ell exactly.
  double x(int i) const { return ell * static_cast<double>(i) / static_cast<double>(n); }
  Vector nodes() const;
  Vector ones() const { return Vector(size(), 1.0); }
  Vector e_left() const;
  Vector e_right() const;
};

enum class FirstVariant { D1_21, D1_42, External };
enum class SecondVariant { N20, N21, N42, W20, External };

const char* variant_name(FirstVariant v);
const char* variant_name(SecondVariant v);
/// Accepts the lower-case CLI spellings: d1_21, d1_42, n20, n21, n42, w20.
bool parse_variant(const std::string& s, FirstVariant& out);
bool parse_variant(const std::string& s, SecondVariant& out);

/// Smallest n for which the two boundary closures do not overlap.
int min_intervals(FirstVariant v);
int min_intervals(SecondVariant v);

/// First-derivative SBP bundle: D1 = H^{-1} Q with Q + Q^T = e_R e_R^T - e_L e_L^T.
struct SbpFirstOp {
  FirstVariant variant = FirstVariant::D1_21;
  Grid grid;
  Vector H;  // diagonal of the norm matrix
  DenseMatrix Q;
  DenseMatrix D1;
  Vector eL;
  Vector eR;

  DenseMatrix H_matrix() const { return DenseMatrix::diagonal(H); }
};

/// Second-derivative SBP bundle: D2 = H^{-1}(-A + e_R d_R^T - e_L d_L^T).
struct SbpSecondOp {
  SecondVariant variant = SecondVariant::N20;
  Grid grid;
  Vector H;
  DenseMatrix A;
  DenseMatrix D2;
  Vector dL;
  Vector dR;
  Vector eL;
  Vector eR;

  DenseMatrix H_matrix() const { return DenseMatrix::diagonal(H); }
};

SbpFirstOp build_first(FirstVariant variant, const Grid& grid);
SbpSecondOp build_second(SecondVariant variant, const Grid& grid);

/// Named residuals of the SBP invariants. Residuals are absolute for
/// dimensionless quantities and relative to the operator norm otherwise.
struct SbpReport {
  std::vector<std::pair<std::string, double>> residuals;
  double min_eig = 0.0;  // smallest eigenvalue of A (second-derivative bundles only)

  double max_residual() const;
  double residual(const std::string& name) const;
  bool passed(double tol = 1e-10) const { return max_residual() <= tol; }
};

SbpReport verify_sbp(const SbpFirstOp& op);
SbpReport verify_sbp(const SbpSecondOp& op);

/// True when A (or Q) and the boundary stencils have equivalent left/right
/// closures to relative tolerance 1e-12.
bool is_centrosymmetric(const SbpSecondOp& op);

/// Operator coefficient file. First line `first,rows,cols` or
/// `second,rows,cols`; then sections introduced by a line holding only a
/// name (H, Q for first; H, A, dL, dR for second), each followed by
/// `i,j,value` triplets. Values are exact decimals or p/q rationals at unit
/// spacing; vectors use i = 0. Grid spacing is ell / (rows - 1).
struct ExternalOperator {
  bool second = false;
  SbpFirstOp first_op;
  SbpSecondOp second_op;
};

ExternalOperator load_operator_csv(const std::string& path, double ell = 1.0);
ExternalOperator parse_operator_csv(const std::string& text, double ell = 1.0);

}  // namespace sbpgreen
