// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/green_first.hpp"

#include <cmath>
#include <string>

#include "sbpgreen/error.hpp"

namespace sbpgreen {

namespace {

using Rat = BigRational;

void require_nonzero_penalty(double sigmaL) {
  if (sigmaL == 0.0) fail(ErrorCode::SingularPenalty, "Q~ is singular for sigma_L = 0");
  if (!std::isfinite(sigmaL)) fail(ErrorCode::InvalidArgument, "sigma_L must be finite");
}

BigInt exact_div(const BigInt& num, long den, const char* what) {
  if (num % den != 0) {
    fail(ErrorCode::NonIntegerSequence, std::string(what) + " is not divisible by " + std::to_string(den));
  }
  return num / den;
}

int parity_sign(long j) { return (j % 2 == 0) ? 1 : -1; }

}  // namespace

GreenFirst invert_general_first(const AssembledFirst& sys) {
  require_nonzero_penalty(sys.sat.sigmaL);
  const std::size_t N = sys.op.grid.size();
  const std::size_t n = N - 1;
  const DenseMatrix Qbar = sys.op.Q.block(1, 1, n, n);
  DenseMatrix Qbar_inv;
  try {
    Qbar_inv = lu_inverse(Qbar);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    fail(ErrorCode::SingularQbar, "lower-right block of Q is singular");
  }
  GreenFirst g;
  g.sigmaL = sys.sat.sigmaL;
  g.G1 = DenseMatrix(N, N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.G1(i + 1, j + 1) = Qbar_inv(i, j);
  g.b.assign(N, 0.0);
  g.b[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += sys.op.Q(0, k + 1) * Qbar_inv(k, j);
    g.b[j + 1] = -s;
  }
  g.ones.assign(N, 1.0);
  g.Kinv = g.G1;
  const double inv_sigma = 1.0 / g.sigmaL;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) g.Kinv(i, j) -= inv_sigma * g.b[j];
  return g;
}

DenseMatrix closed_form_21(const Grid& grid, double sigmaL, bool injection_limit) {
  if (!injection_limit) require_nonzero_penalty(sigmaL);
  const std::size_t N = grid.size();
  // 1 + 1/sigma -> 1 as sigma -> -infinity.
  const double c = injection_limit ? 1.0 : 1.0 + 1.0 / sigmaL;
  DenseMatrix m(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const double sj = parity_sign(static_cast<long>(j));
      if (j <= i) {
        m(i, j) = 1.0 - c * sj;
      } else {
        m(i, j) = parity_sign(static_cast<long>(i + j)) - c * sj;
      }
    }
  return m;
}

SeqTables42 seq_tables_42(int n) {
  if (n % 2 != 0) fail(ErrorCode::OddN, "(4,2) sequence tables need even n");
  if (n < 4) fail(ErrorCode::GridTooSmall, "(4,2) sequence tables need n >= 4");
  SeqTables42 t;
  t.n = n;
  const QuadInt phi = QuadInt::phi();
  t.nu.reserve(static_cast<std::size_t>(n) + 1);
  QuadInt power(1, 0, 15);
  for (int j = 0; j <= n; ++j) {
    // phi^j + phi^-j = 2 a since phi^-1 is the conjugate of phi.
    t.nu.push_back(2 * power.a());
    power = power * phi;
  }
  const long half = n / 2;
  const BigInt& nu1 = t.nu_at(half - 1);
  const BigInt& nu2 = t.nu_at(half - 2);
  t.D = exact_div(nu1 + nu2, 10, "D_n numerator");
  t.C = exact_div(9 * nu1 + 4 * nu2, 10, "C_n numerator");
  t.B.resize(static_cast<std::size_t>(n) + 1);
  t.A.resize(static_cast<std::size_t>(n) + 1);
  for (long j = 0; j <= n; ++j) {
    const int sj = parity_sign(j);
    t.B[static_cast<std::size_t>(j)] =
        exact_div(t.nu_at(j - 1) - t.nu_at(j - 2) - 6 * sj, 60, "B_j numerator");
    const BigInt odd_part = sj < 0 ? nu1 : BigInt(0);
    const BigInt even_part = sj > 0 ? nu2 : BigInt(0);
    t.A[static_cast<std::size_t>(j)] = exact_div(odd_part + even_part - t.nu_at(half - j), 60, "A_j numerator");
  }
  return t;
}

namespace {

// Entries g_{i,j} of the inverse of the lower-right block of the (4,2) Q and
// the row q^T Qbar^{-1}, evaluated in the number type T.
template <class T>
void fill_42(int n, const SeqTables42& t, std::vector<T>& gv, std::vector<T>& qrow,
             T (*lift)(const BigInt&)) {
  const T D = lift(t.D);
  const T C = lift(t.C);
  auto A = [&](long j) { return lift(t.A.at(static_cast<std::size_t>(j))); };
  auto B = [&](long j) { return lift(t.B.at(static_cast<std::size_t>(j))); };
  auto k = [](long v) { return T(v); };
  const T D2 = D * D;
  const T c12_59 = k(12) / k(59);
  const T g_n1 = k(12) * C / (k(59) * D);

  const std::size_t un = static_cast<std::size_t>(n);
  gv.assign(un * un, k(0));
  auto g = [&](long i, long j) -> T& {
    return gv[static_cast<std::size_t>(i - 1) * un + static_cast<std::size_t>(j - 1)];
  };

  g(1, 1) = k(72) * C * C / (k(59 * 59) * D2);
  g(1, n - 1) = c12_59 * ((k(12) * C * C + k(9)) / (k(59) * D2) - C / D);
  g(1, n) = -g_n1;
  g(n - 1, 1) = c12_59 * (C / D - k(9) / (k(59) * D2));
  g(n - 1, n - 1) = g(1, 1);
  g(n - 1, n) = -g_n1;
  g(n, 1) = g_n1;
  g(n, n - 1) = g_n1;
  g(n, n) = k(0);
  for (long i = 2; i <= n - 2; ++i) {
    g(i, 1) = c12_59 * (C / D - k(3) * B(n - i) / D2);
    g(i, n - 1) = k(36) * (k(4) * C * A(i) + B(i)) / (k(59) * D2) - k(12) * A(i) / D;
    g(i, n) = k(-12) * A(i) / D;
  }
  for (long j = 2; j <= n - 2; ++j) {
    g(1, j) = k(36) * (k(4) * C * A(j) + B(n - j)) / (k(59) * D2) - g_n1;
    g(n - 1, j) = k(12) * A(j) / D - k(36) * B(j) / (k(59) * D2);
    g(n, j) = k(12) * A(j) / D;
  }
  for (long i = 2; i <= n - 2; ++i)
    for (long j = 2; j <= n - 2; ++j) {
      if (i <= j) {
        g(i, j) = k(144) * A(i) * A(j) / D2 - k(12) * (A(i) / D - B(i) * B(n - j) / D2);
      } else {
        g(i, j) = k(12) * (A(j) / D - B(j) * B(n - i) / D2);
      }
    }

  qrow.assign(un, k(0));
  qrow[0] = g_n1 - k(1);
  for (long j = 2; j <= n - 2; ++j) qrow[static_cast<std::size_t>(j - 1)] = k(12) * A(j) / D - k(1);
  qrow[un - 2] = g_n1 - k(1);
  qrow[un - 1] = k(-1);
}

Rat lift_exact(const BigInt& v) { return Rat(v); }
double lift_double(const BigInt& v) { return static_cast<double>(v); }

void require_42_size(int n) {
  if (n % 2 != 0) fail(ErrorCode::OddN, "explicit (4,2) inverse needs even n");
  if (n < 8) fail(ErrorCode::GridTooSmall, "explicit (4,2) inverse needs n >= 8");
}

}  // namespace

ClosedForm42Parts closed_form_42_parts(int n) {
  require_42_size(n);
  ClosedForm42Parts p;
  fill_42<Rat>(n, seq_tables_42(n), p.g, p.qTQinv, &lift_exact);
  return p;
}

DenseMatrix closed_form_42(const Grid& grid, double sigmaL, Precision precision) {
  require_nonzero_penalty(sigmaL);
  const int n = grid.n;
  require_42_size(n);
  const std::size_t N = grid.size();
  const std::size_t un = static_cast<std::size_t>(n);
  DenseMatrix m(N, N);
  if (precision == Precision::Exact) {
    const ClosedForm42Parts parts = closed_form_42_parts(n);
    const Rat inv_sigma = Rat(1) / to_rational(sigmaL);
    // b_0 = 1, b_j = -(q^T Qbar^{-1})_j.
    std::vector<Rat> b(N);
    b[0] = Rat(1);
    for (std::size_t j = 1; j < N; ++j) b[j] = -parts.qTQinv[j - 1];
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        Rat v = -inv_sigma * b[j];
        if (i > 0 && j > 0) v += parts.g[(i - 1) * un + (j - 1)];
        m(i, j) = to_double(v);
      }
    return m;
  }
  std::vector<double> g;
  std::vector<double> qrow;
  fill_42<double>(n, seq_tables_42(n), g, qrow, &lift_double);
  Vector b(N);
  b[0] = 1.0;
  for (std::size_t j = 1; j < N; ++j) b[j] = -qrow[j - 1];
  const double inv_sigma = 1.0 / sigmaL;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      double v = -inv_sigma * b[j];
      if (i > 0 && j > 0) v += g[(i - 1) * un + (j - 1)];
      m(i, j) = v;
    }
  return m;
}

}  // namespace sbpgreen
