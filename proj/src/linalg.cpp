// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "sbpgreen/error.hpp"

namespace sbpgreen {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::InvalidArgument, std::string(what) + ": shape mismatch");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    fail(ErrorCode::InvalidArgument, "DenseMatrix: entry count does not match shape");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "DenseMatrix: non-finite entry");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(const Vector& diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

DenseMatrix DenseMatrix::outer(const Vector& a, const Vector& b) {
  DenseMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  }
  return m;
}

Vector DenseMatrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector DenseMatrix::col(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Vector DenseMatrix::diag() const {
  Vector d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i);
  return d;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(ErrorCode::InvalidArgument, "block out of range");
  DenseMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double DenseMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double DenseMatrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(DenseMatrix a, double s) { return a *= s; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::InvalidArgument, "matrix product: shape mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const DenseMatrix& a, const Vector& x) {
  if (a.cols() != x.size()) fail(ErrorCode::InvalidArgument, "matrix-vector product: shape mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double norm_inf(const Vector& v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector axpy(double a, const Vector& x, const Vector& y) {
  if (x.size() != y.size()) fail(ErrorCode::InvalidArgument, "axpy: length mismatch");
  Vector r(y);
  for (std::size_t i = 0; i < x.size(); ++i) r[i] += a * x[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) { return axpy(-1.0, b, a); }

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
  return best;
}

double identity_residual(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix p = a * b;
  if (!p.square()) fail(ErrorCode::InvalidArgument, "identity_residual: product not square");
  return (p - DenseMatrix::identity(p.rows())).norm_inf();
}

double symmetry_residual(const DenseMatrix& m) {
  if (!m.square()) fail(ErrorCode::InvalidArgument, "symmetry_residual: matrix not square");
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) best = std::max(best, std::abs(m(i, j) - m(j, i)));
  return best;
}

LuFactors lu_decompose(const DenseMatrix& m) {
  if (!m.square()) fail(ErrorCode::InvalidArgument, "LU: matrix not square");
  const std::size_t n = m.rows();
  LuFactors f;
  f.lu = m;
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  f.largest_entry = m.max_abs();
  f.smallest_pivot = n == 0 ? 0.0 : INFINITY;
  DenseMatrix& a = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(f.perm[k], f.perm[p]);
    }
    const double piv = a(k, k);
    f.smallest_pivot = std::min(f.smallest_pivot, std::abs(piv));
    if (piv == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = a(i, k) / piv;
      a(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
    }
  }
  return f;
}

LuFactors lu_factor(const DenseMatrix& m) {
  LuFactors f = lu_decompose(m);
  if (m.rows() > 0 && !(f.smallest_pivot >= 1e-13 * f.largest_entry && f.largest_entry > 0.0)) {
    fail(ErrorCode::SingularMatrix, "LU: pivot below 1e-13 of the largest entry");
  }
  return f;
}

Vector lu_solve(const LuFactors& f, const Vector& rhs) {
  const std::size_t n = f.lu.rows();
  if (rhs.size() != n) fail(ErrorCode::InvalidArgument, "lu_solve: rhs length mismatch");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

Vector lu_solve(const DenseMatrix& m, const Vector& rhs) { return lu_solve(lu_factor(m), rhs); }

DenseMatrix lu_inverse(const DenseMatrix& m) {
  const LuFactors f = lu_factor(m);
  const std::size_t n = m.rows();
  DenseMatrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector c = lu_solve(f, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = c[i];
    e[j] = 0.0;
  }
  return inv;
}

bool rank_deficient(const DenseMatrix& m, double rel_tol) {
  if (!m.square()) fail(ErrorCode::InvalidArgument, "rank_deficient: matrix not square");
  if (m.rows() == 0) return false;
  const LuFactors f = lu_decompose(m);
  if (f.largest_entry == 0.0) return true;
  return f.smallest_pivot < rel_tol * f.largest_entry;
}

std::vector<double> eigenvalues_sym(const DenseMatrix& m) {
  if (!m.square()) fail(ErrorCode::InvalidArgument, "eigenvalues_sym: matrix not square");
  const std::size_t n = m.rows();
  const double scale = m.max_abs();
  if (symmetry_residual(m) > 1e-12 * scale) {
    fail(ErrorCode::NotSymmetric, "eigenvalues_sym: matrix is not symmetric within 1e-12");
  }
  DenseMatrix a = m;
  // Symmetrize exactly so rotations stay consistent.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off <= 1e-32 * scale * scale * static_cast<double>(n * n) || off == 0.0) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  std::vector<double> ev = a.diag();
  std::sort(ev.begin(), ev.end());
  return ev;
}

double min_eig_sym(const DenseMatrix& m) {
  if (m.rows() == 0) fail(ErrorCode::InvalidArgument, "min_eig_sym: empty matrix");
  return eigenvalues_sym(m).front();
}

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::SingularPenalty: return "SingularPenalty";
    case ErrorCode::SingularQbar: return "SingularQbar";
    case ErrorCode::SingularAbar: return "SingularAbar";
    case ErrorCode::SingularSigma: return "SingularSigma";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::NonIntegerSequence: return "NonIntegerSequence";
    case ErrorCode::NotWideStencil: return "NotWideStencil";
    case ErrorCode::NotCentrosymmetric: return "NotCentrosymmetric";
    case ErrorCode::DegenerateBC: return "DegenerateBC";
    case ErrorCode::UnstableStep: return "UnstableStep";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sbpgreen
