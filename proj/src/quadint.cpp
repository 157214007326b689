// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/quadint.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <utility>

#include "sbpgreen/error.hpp"

namespace sbpgreen {

namespace mp = boost::multiprecision;
using Float100 = mp::cpp_bin_float_100;

namespace {

void require_same_radicand(const QuadInt& x, const QuadInt& y) {
  if (x.d() != y.d()) fail(ErrorCode::InvalidArgument, "QuadInt: mixed radicands");
}

int sign_of(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

QuadInt::QuadInt(BigInt a, BigInt b, int d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ != 15 && d_ != 3) fail(ErrorCode::InvalidArgument, "QuadInt: radicand must be 15 or 3");
}

int QuadInt::sign() const {
  const int sa = sign_of(a_);
  const int sb = sign_of(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  // Opposite signs: compare a^2 with d b^2.
  const BigInt diff = a_ * a_ - BigInt(d_) * b_ * b_;
  return sign_of(diff) * sa;
}

QuadInt QuadInt::pow(long k) const {
  QuadInt base = *this;
  if (k < 0) {
    const BigInt nrm = norm();
    if (nrm != 1 && nrm != -1) fail(ErrorCode::InvalidArgument, "QuadInt: negative power of a non-unit");
    base = conj();
    if (nrm == -1) base = -base;
    k = -k;
  }
  QuadInt result(1, 0, d_);
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

double QuadInt::to_double() const {
  const Float100 root = mp::sqrt(Float100(d_));
  const Float100 fa(a_);
  const Float100 fb(b_);
  if (sign_of(a_) * sign_of(b_) >= 0) return static_cast<double>(fa + fb * root);
  // a and b*sqrt(d) cancel; divide the norm by the conjugate instead.
  const Float100 denom = fa - fb * root;
  return static_cast<double>(Float100(norm()) / denom);
}

QuadInt operator+(const QuadInt& x, const QuadInt& y) {
  require_same_radicand(x, y);
  return QuadInt(x.a_ + y.a_, x.b_ + y.b_, x.d_);
}

QuadInt operator-(const QuadInt& x, const QuadInt& y) {
  require_same_radicand(x, y);
  return QuadInt(x.a_ - y.a_, x.b_ - y.b_, x.d_);
}

QuadInt operator*(const QuadInt& x, const QuadInt& y) {
  require_same_radicand(x, y);
  return QuadInt(x.a_ * y.a_ + BigInt(x.d_) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_);
}

double to_double(const BigRational& r) {
  const Float100 num(mp::numerator(r));
  const Float100 den(mp::denominator(r));
  return static_cast<double>(num / den);
}

BigRational to_rational(double v) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "to_rational: non-finite value");
  if (v == 0.0) return BigRational(0);
  int exp = 0;
  const double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  BigRational r(scaled);
  const int shift = exp - 53;
  if (shift >= 0) {
    r *= BigRational(BigInt(1) << shift);
  } else {
    r /= BigRational(BigInt(1) << (-shift));
  }
  return r;
}

}  // namespace sbpgreen
