// SPDX-License-Identifier: Apache-2.0
// Reference computations for the tests. Nothing here calls into the library's
// factorizations, so agreement is a genuine cross-check.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sbpgreen/linalg.hpp"

namespace oracle {

using Rat = boost::multiprecision::cpp_rational;
using RatMatrix = std::vector<std::vector<Rat>>;

inline RatMatrix to_rat(const sbpgreen::DenseMatrix& m) {
  RatMatrix out(m.rows(), std::vector<Rat>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      int e = 0;
      const double frac = std::frexp(m(i, j), &e);
      const auto mant = static_cast<long long>(std::ldexp(frac, 53));
      Rat v(mant);
      const int shift = e - 53;
      if (shift >= 0) {
        v *= Rat(boost::multiprecision::cpp_int(1) << shift);
      } else {
        v /= Rat(boost::multiprecision::cpp_int(1) << -shift);
      }
      out[i][j] = v;
    }
  return out;
}

/// Gauss-Jordan over the rationals. Throws std::domain_error if singular.
inline RatMatrix inverse(RatMatrix a) {
  const std::size_t n = a.size();
  RatMatrix inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::domain_error("singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rat piv = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rat f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

/// Rank over the rationals.
inline std::size_t rank(RatMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Rat f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline sbpgreen::DenseMatrix to_double(const RatMatrix& m) {
  sbpgreen::DenseMatrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = static_cast<double>(m[i][j]);
  return out;
}

/// Naive triple loop, kept separate from the library's operator*.
inline sbpgreen::DenseMatrix multiply(const sbpgreen::DenseMatrix& a, const sbpgreen::DenseMatrix& b) {
  sbpgreen::DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      long double s = 0.0L;
      for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<long double>(a(i, k)) * b(k, j);
      c(i, j) = static_cast<double>(s);
    }
  return c;
}

/// ||a b - I||_inf.
inline double identity_defect(const sbpgreen::DenseMatrix& a, const sbpgreen::DenseMatrix& b) {
  const sbpgreen::DenseMatrix c = multiply(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < c.cols(); ++j) s += std::abs(c(i, j) - (i == j ? 1.0 : 0.0));
    worst = std::max(worst, s);
  }
  return worst;
}

inline double max_diff(const sbpgreen::DenseMatrix& a, const sbpgreen::DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

/// Smallest eigenvalue of a symmetric matrix by bisection on Sturm counts of
/// the LDL^T inertia (Sylvester's law), independent of the Jacobi solver.
inline int negative_count(const sbpgreen::DenseMatrix& m, double shift) {
  const std::size_t n = m.rows();
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j) - (i == j ? shift : 0.0);
  int neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    long double d = a[k][k];
    if (d == 0.0L) d = 1e-300L;
    if (d < 0) ++neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      const long double f = a[i][k] / d;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return neg;
}

inline double min_eig(const sbpgreen::DenseMatrix& m) {
  double bound = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
    bound = std::max(bound, s);
  }
  double lo = -bound - 1.0;
  double hi = bound + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (negative_count(m, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
