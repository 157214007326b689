// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sbpgreen {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact a + b*sqrt(d) with big-integer coefficients. Only the radicands 15
/// and 3 are accepted; they carry phi = 4 + sqrt(15) and psi = 7 + 4 sqrt(3).
class QuadInt {
 public:
  QuadInt(BigInt a, BigInt b, int d);

  static QuadInt phi() { return QuadInt(4, 1, 15); }
  static QuadInt psi() { return QuadInt(7, 4, 3); }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  int d() const { return d_; }

  QuadInt conj() const { return QuadInt(a_, -b_, d_); }
  /// a^2 - d b^2.
  BigInt norm() const { return a_ * a_ - BigInt(d_) * b_ * b_; }
  /// Sign of the exact value: -1, 0 or 1.
  int sign() const;

  /// Integer power. Negative exponents need a unit (norm +-1).
  QuadInt pow(long k) const;

  /// Nearest double to the exact value (evaluated at 100 decimal digits,
  /// using the conjugate to avoid cancellation).
  double to_double() const;

  friend QuadInt operator+(const QuadInt& x, const QuadInt& y);
  friend QuadInt operator-(const QuadInt& x, const QuadInt& y);
  friend QuadInt operator*(const QuadInt& x, const QuadInt& y);
  friend QuadInt operator-(const QuadInt& x) { return QuadInt(-x.a_, -x.b_, x.d_); }
  friend bool operator==(const QuadInt& x, const QuadInt& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator<(const QuadInt& x, const QuadInt& y) { return (x - y).sign() < 0; }

 private:
  BigInt a_;
  BigInt b_;
  int d_;
};

/// Nearest double to an exact rational.
double to_double(const BigRational& r);
/// Exact rational value of a finite double.
BigRational to_rational(double v);

}  // namespace sbpgreen
