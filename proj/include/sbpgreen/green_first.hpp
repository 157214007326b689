// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "sbpgreen/linalg.hpp"
#include "sbpgreen/quadint.hpp"
#include "sbpgreen/sat.hpp"

namespace sbpgreen {

/// Inverse of Q~ = Q - sigma_L e_L e_L^T written as G1 - (1/sigma_L) 1 b^T,
/// where G1 borders the inverse of the lower-right n-by-n block of Q with a
/// zero first row and column, and b^T = [1, -q^T Qbar^{-1}] with q^T the
/// rest of the first row of Q.
struct GreenFirst {
  DenseMatrix G1;
  Vector b;
  Vector ones;
  double sigmaL = 0.0;
  DenseMatrix Kinv;
};

GreenFirst invert_general_first(const AssembledFirst& sys);

/// Explicit inverse for the (2,1) operator:
/// (i, j) -> 1 - (1 + 1/sigma)(-1)^j for j <= i, (-1)^{i+j} - (1 + 1/sigma)(-1)^j for i <= j.
/// With `injection_limit` the sigma -> -infinity limit G1 is returned and sigma is ignored.
DenseMatrix closed_form_21(const Grid& grid, double sigmaL, bool injection_limit = false);

/// Integer sequences behind the explicit (4,2) inverse, with
/// nu_j = phi^j + phi^-j, phi = 4 + sqrt(15).
struct SeqTables42 {
  int n = 0;
  std::vector<BigInt> nu;  // nu_0 .. nu_n (nu_{-k} = nu_k)
  BigInt D;                // (nu_{n/2-1} + nu_{n/2-2}) / 10
  BigInt C;                // (9 nu_{n/2-1} + 4 nu_{n/2-2}) / 10
  std::vector<BigInt> B;   // B_0 .. B_n
  std::vector<BigInt> A;   // A_0 .. A_n

  const BigInt& nu_at(long j) const { return nu.at(static_cast<std::size_t>(j < 0 ? -j : j)); }
};

/// Requires even n >= 4.
SeqTables42 seq_tables_42(int n);

enum class Precision { Double, Exact };

/// Exact rational entries g_{i,j} (i, j = 1..n) of the inverse of the
/// lower-right block of the (4,2) Q, and the row q^T Qbar^{-1} (index 1..n).
struct ClosedForm42Parts {
  std::vector<BigRational> g;      // n*n, row-major, (i-1, j-1)
  std::vector<BigRational> qTQinv; // n entries
};
ClosedForm42Parts closed_form_42_parts(int n);

/// Explicit inverse of Q~ for the (4,2) operator, even n >= 8.
/// Exact evaluates every entry over the rationals (sigma taken as its exact
/// binary value) and rounds once; Double evaluates the same formulas in
/// floating point.
DenseMatrix closed_form_42(const Grid& grid, double sigmaL, Precision precision = Precision::Exact);

}  // namespace sbpgreen
