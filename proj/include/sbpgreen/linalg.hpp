// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace sbpgreen {

using Vector = std::vector<double>;

/// Row-major dense matrix of doubles. Entries are checked to be finite when
/// the matrix is built from an explicit entry array.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(const Vector& diag);
  static DenseMatrix outer(const Vector& a, const Vector& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;
  Vector diag() const;

  DenseMatrix transpose() const;
  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  DenseMatrix& operator+=(const DenseMatrix& o);
  DenseMatrix& operator-=(const DenseMatrix& o);
  DenseMatrix& operator*=(double s);

  /// Maximum absolute row sum.
  double norm_inf() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(DenseMatrix a, double s);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, const Vector& x);

double norm_inf(const Vector& v);
double dot(const Vector& a, const Vector& b);
Vector axpy(double a, const Vector& x, const Vector& y);  // a*x + y
Vector sub(const Vector& a, const Vector& b);

/// max |a - b| entrywise; matrices must share a shape.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
/// ||A B - I||_inf.
double identity_residual(const DenseMatrix& a, const DenseMatrix& b);
/// max |m - m^T|.
double symmetry_residual(const DenseMatrix& m);

struct LuFactors {
  DenseMatrix lu;                 // unit lower L below the diagonal, U on and above
  std::vector<std::size_t> perm;  // row i of LU is row perm[i] of the input
  double largest_entry = 0.0;     // max |a_ij| of the input
  double smallest_pivot = 0.0;    // min |u_ii|
};

/// Partial-pivoting LU without the singularity check (used by rank tests).
LuFactors lu_decompose(const DenseMatrix& m);
/// Partial-pivoting LU; throws SingularMatrix when a pivot drops below
/// 1e-13 times the largest initial entry.
LuFactors lu_factor(const DenseMatrix& m);
Vector lu_solve(const LuFactors& f, const Vector& rhs);
Vector lu_solve(const DenseMatrix& m, const Vector& rhs);
DenseMatrix lu_inverse(const DenseMatrix& m);

/// Pivot-ratio rank test: smallest pivot below rel_tol times the largest entry.
bool rank_deficient(const DenseMatrix& m, double rel_tol = 1e-10);

/// All eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
/// Throws NotSymmetric if |m - m^T| exceeds 1e-12 * max|m|.
std::vector<double> eigenvalues_sym(const DenseMatrix& m);
double min_eig_sym(const DenseMatrix& m);

}  // namespace sbpgreen
