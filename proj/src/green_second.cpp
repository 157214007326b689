// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/green_second.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>

#include "sbpgreen/error.hpp"
#include "sbpgreen/quadint.hpp"

namespace sbpgreen {

namespace {

using Rat = BigRational;

double sq(double v) { return v * v; }

Vector one_minus_x_over_ell(const Grid& g) {
  Vector v(g.size());
  for (int i = 0; i <= g.n; ++i) v[static_cast<std::size_t>(i)] = 1.0 - g.x(i) / g.ell;
  return v;
}

Vector x_over_ell(const Grid& g) {
  Vector v(g.size());
  for (int i = 0; i <= g.n; ++i) v[static_cast<std::size_t>(i)] = g.x(i) / g.ell;
  return v;
}

XiScalars finish_xi(double xiL, double xiR, double xiC, bool centro) {
  XiScalars xi;
  xi.xiL = xiL;
  xi.xiR = xiR;
  xi.xiC = xiC;
  xi.centrosymmetric = centro;
  xi.xiT = centro ? xiL + std::abs(xiC) : std::numeric_limits<double>::quiet_NaN();
  return xi;
}

DenseMatrix interior_inverse(const SbpSecondOp& op) {
  const std::size_t n = op.grid.size() - 1;
  if (n < 2) fail(ErrorCode::SingularAbar, "interior block of A is empty");
  try {
    return lu_inverse(op.A.block(1, 1, n - 1, n - 1));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularMatrix) throw;
    fail(ErrorCode::SingularAbar, "interior block of A is singular");
  }
}

DenseMatrix border(const DenseMatrix& inner, std::size_t N) {
  DenseMatrix G(N, N);
  for (std::size_t i = 0; i < inner.rows(); ++i)
    for (std::size_t j = 0; j < inner.cols(); ++j) G(i + 1, j + 1) = inner(i, j);
  return G;
}

void fill_b(SecondParts& p, const SbpSecondOp& op) {
  const Vector G2dL = p.G2 * op.dL;
  const Vector G2dR = p.G2 * op.dR;
  p.bL = sub(one_minus_x_over_ell(op.grid), G2dL);
  p.bR = axpy(1.0, G2dR, x_over_ell(op.grid));
}

double det3(const std::array<double, 9>& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// Inverse of a 4x4 matrix through its adjugate.
DenseMatrix adjugate_inverse(const DenseMatrix& s, double det) {
  DenseMatrix inv(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      std::array<double, 9> minor{};
      std::size_t k = 0;
      for (std::size_t i = 0; i < 4; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0; j < 4; ++j) {
          if (j == c) continue;
          minor[k++] = s(i, j);
        }
      }
      const double cof = ((r + c) % 2 == 0 ? 1.0 : -1.0) * det3(minor);
      inv(c, r) = cof / det;  // transpose of the cofactor matrix
    }
  return inv;
}

}  // namespace

double XiScalars::total() const {
  if (!centrosymmetric) {
    fail(ErrorCode::NotCentrosymmetric, "xi_T needs equivalent left and right boundary closures");
  }
  return xiT;
}

SecondParts second_parts(const SbpSecondOp& op) {
  SecondParts p;
  p.G2 = border(interior_inverse(op), op.grid.size());
  fill_b(p, op);
  p.xi = finish_xi(-dot(op.dL, p.bL), dot(op.dR, p.bR), dot(op.dL, p.bR), is_centrosymmetric(op));
  return p;
}

XiScalars xi_scalars(const SbpSecondOp& op) { return second_parts(op).xi; }

XiScalars xi_scalars_alt(const SbpSecondOp& op) {
  const DenseMatrix G2 = border(interior_inverse(op), op.grid.size());
  const double inv_ell = 1.0 / op.grid.ell;
  const Vector G2dL = G2 * op.dL;
  const Vector G2dR = G2 * op.dR;
  return finish_xi(inv_ell + dot(op.dL, G2dL), inv_ell + dot(op.dR, G2dR), inv_ell + dot(op.dL, G2dR),
                   is_centrosymmetric(op));
}

DenseMatrix sigma_matrix(const SatSecond& s, const XiScalars& xi, double ell) {
  DenseMatrix m(4, 4);
  m(0, 0) = s.sigmaL + s.tauL * xi.xiL;
  m(0, 1) = -s.tauR * xi.xiC;
  m(1, 0) = -s.tauL * xi.xiC;
  m(1, 1) = s.sigmaR + s.tauR * xi.xiR;
  m(2, 0) = s.delta_L();
  m(2, 2) = s.alphaL + s.betaL / ell;
  m(2, 3) = -s.betaL / ell;
  m(3, 1) = s.delta_R();
  m(3, 2) = -s.betaR / ell;
  m(3, 3) = s.alphaR + s.betaR / ell;
  return m;
}

std::string SingularityVerdict::condition_name() const {
  switch (condition) {
    case kSigmaBoundaryData: return "BC";
    case kSigmaPenalty: return "penalty";
    case kSigmaBoundaryData | kSigmaPenalty: return "BC+penalty";
    default: return "none";
  }
}

SingularityVerdict singularity_check(const SatSecond& s, const XiScalars& xi, double ell) {
  SingularityVerdict v;
  // Robin-data block.
  const double a11 = s.alphaL + s.betaL / ell;
  const double a22 = s.alphaR + s.betaR / ell;
  v.det_boundary = a11 * a22 - s.betaL * s.betaR / (ell * ell);
  const double bscale = std::max({std::abs(s.alphaL), std::abs(s.alphaR), std::abs(s.betaL) / ell,
                                  std::abs(s.betaR) / ell});
  if (std::abs(v.det_boundary) <= 1e-12 * bscale * bscale) v.condition |= kSigmaBoundaryData;

  // Penalty block.
  const double p11 = s.sigmaL + s.tauL * xi.xiL;
  const double p22 = s.sigmaR + s.tauR * xi.xiR;
  const double cross = s.tauL * s.tauR * xi.xiC * xi.xiC;
  v.det_penalty = p11 * p22 - cross;
  const double pscale = std::max({std::abs(s.sigmaL), std::abs(s.sigmaR), std::abs(s.tauL * xi.xiL),
                                  std::abs(s.tauR * xi.xiR), std::abs(s.tauL * xi.xiC),
                                  std::abs(s.tauR * xi.xiC)});
  if (std::abs(v.det_penalty) <= 1e-12 * pscale * pscale) {
    v.condition |= kSigmaPenalty;
    const double denom = s.tauL * std::abs(xi.xiC);
    if (denom != 0.0 && std::abs(xi.xiC) > 1e-12 * std::abs(xi.xiL)) {
      v.has_zeta = true;
      v.zeta = -p11 / denom;
    }
  }
  v.singular = v.condition != kSigmaNone;
  return v;
}

SingularityVerdict singularity_check(const AssembledSecond& sys, const XiScalars& xi) {
  SingularityVerdict v = singularity_check(sys.sat, xi, sys.op.grid.ell);
  v.rank_witness = rank_deficient(sys.K);
  v.witness_checked = true;
  return v;
}

GreenSecond assemble_inverse_second(const SecondParts& parts, const SatSecond& s, const Grid& grid) {
  const SingularityVerdict verdict = singularity_check(s, parts.xi, grid.ell);
  if (verdict.singular) {
    fail(ErrorCode::SingularSigma,
         "the 4x4 boundary system is singular (condition: " + verdict.condition_name() + ")",
         verdict.condition);
  }
  GreenSecond g;
  g.G2 = parts.G2;
  g.bL = parts.bL;
  g.bR = parts.bR;
  g.xi = parts.xi;
  g.Sigma = sigma_matrix(s, parts.xi, grid.ell);
  // Block lower-triangular: det = det(penalty block) * det(Robin block).
  const double det = verdict.det_penalty * verdict.det_boundary;
  const DenseMatrix Sinv = adjugate_inverse(g.Sigma, det);

  const std::size_t N = grid.size();
  const Vector ox = one_minus_x_over_ell(grid);
  const Vector xo = x_over_ell(grid);
  std::array<Vector, 4> W = {Vector(N), Vector(N), ox, xo};
  std::array<Vector, 4> V = {parts.bL, parts.bR, Vector(N), Vector(N)};
  for (std::size_t i = 0; i < N; ++i) {
    W[0][i] = -s.tauL * parts.bL[i];
    W[1][i] = -s.tauR * parts.bR[i];
    V[2][i] = s.betaL * ox[i];
    V[3][i] = s.betaR * xo[i];
  }
  // M = Sigma^{-1} V (4 x N), then Kinv = G2 + W M.
  std::array<Vector, 4> M;
  for (std::size_t r = 0; r < 4; ++r) {
    M[r].assign(N, 0.0);
    for (std::size_t k = 0; k < 4; ++k) {
      const double c = Sinv(r, k);
      if (c == 0.0) continue;
      for (std::size_t j = 0; j < N; ++j) M[r][j] += c * V[k][j];
    }
  }
  g.Kinv = parts.G2;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t r = 0; r < 4; ++r) {
      const double w = W[r][i];
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < N; ++j) g.Kinv(i, j) += w * M[r][j];
    }
  return g;
}

GreenSecond invert_general_second(const AssembledSecond& sys) {
  return assemble_inverse_second(second_parts(sys.op), sys.sat, sys.op.grid);
}

BigRational n42_P(long i) {
  const QuadInt psi = QuadInt::psi();
  const QuadInt two(2, 0, 3);
  const QuadInt c51(51, 0, 3);
  // (X - conj X) / (8 sqrt 3) = b/4 for X = (51 - 2 psi^-1) psi^(i-2).
  const QuadInt X = (c51 - two * psi.pow(-1)) * psi.pow(i - 2);
  return Rat(X.b()) / Rat(4);
}

BigRational n42_Q(long n) {
  const QuadInt psi = QuadInt::psi();
  const QuadInt two(2, 0, 3);
  const QuadInt c51(51, 0, 3);
  const QuadInt f = two * psi.pow(-1) - c51;
  const QuadInt X = psi.pow(n - 4) * f * f;
  return Rat(X.b()) / Rat(4);
}

ScaledXi42 n42_scaled_xi(int n) {
  const Rat Q = n42_Q(n);
  const Rat P = n42_P(n - 2);
  ScaledXi42 r;
  r.h_xi_lr = Rat(2417, 354) - Rat(289) * P / (Rat(2) * Q);
  r.h_xi_c = Rat(289) / Q;
  return r;
}

namespace {

double psi_d() { return 7.0 + 4.0 * std::sqrt(3.0); }

double P_double(long i) {
  const double psi = psi_d();
  return ((51.0 - 2.0 / psi) * std::pow(psi, static_cast<double>(i - 2)) -
          (51.0 - 2.0 * psi) * std::pow(psi, static_cast<double>(2 - i))) /
         (psi - 1.0 / psi);
}

double Q_double(long n) {
  const double psi = psi_d();
  return (std::pow(psi, static_cast<double>(n - 4)) * sq(2.0 / psi - 51.0) -
          std::pow(psi, static_cast<double>(4 - n)) * sq(2.0 * psi - 51.0)) /
         (psi - 1.0 / psi);
}

// Unit-spacing (h = 1) pieces of the N42 explicit inverse in number type T.
template <class T>
struct N42Pieces {
  std::function<T(long)> P;
  T Q;
};

template <class T>
T kappa(long i, long j, long n, const N42Pieces<T>& s) {
  const bool mid_i = i >= 2 && i <= n - 2;
  const bool mid_j = j >= 2 && j <= n - 2;
  if (mid_i && mid_j) {
    if (j <= i) return T(-s.P(j) * s.P(n - i) / s.Q);
    return T(-s.P(i) * s.P(n - j) / s.Q);
  }
  if (i == 1 && mid_j) return -s.P(n - j) / s.Q;
  if (i == n - 1 && mid_j) return -s.P(j) / s.Q;
  if (j == 1 && mid_i) return -s.P(n - i) / s.Q;
  if (j == n - 1 && mid_i) return -s.P(i) / s.Q;
  if (i == j) return -s.P(n - 2) / (T(2) * s.Q) - T(11) / T(118);  // (1,1) and (n-1,n-1)
  return -s.P(2) / (T(2) * s.Q);                                     // (1,n-1) and (n-1,1)
}

template <class T>
T n42_bL(long i, long n, const N42Pieces<T>& s) {
  if (i == 0) return T(1);
  if (i == n) return T(0);
  if (i == 1) return T(-85) / T(118) + T(17) * s.P(n - 2) / (T(2) * s.Q);
  if (i == n - 1) return T(17) / s.Q;
  return T(17) * s.P(n - i) / s.Q;
}

// x_min (1 - x_max/ell) / h = min(i,j) (n - max(i,j)) / n.
template <class T>
T poisson_unit(long i, long j, long n) {
  const long lo = std::min(i, j);
  const long hi = std::max(i, j);
  return T(lo * (n - hi)) / T(n);
}

double lower_value(const Rat& r) { return to_double(r); }
double lower_value(double v) { return v; }

template <class T>
SecondParts closed_parts(SecondVariant variant, const Grid& grid) {
  const long n = grid.n;
  const std::size_t N = grid.size();
  const double h = grid.h;
  SecondParts p;
  p.G2 = DenseMatrix(N, N);
  p.bL.assign(N, 0.0);
  p.bR.assign(N, 0.0);

  N42Pieces<T> pieces;
  if (variant == SecondVariant::N42) {
    if constexpr (std::is_same_v<T, Rat>) {
      pieces.P = [](long i) { return n42_P(i); };
      pieces.Q = n42_Q(n);
    } else {
      pieces.P = [](long i) { return P_double(i); };
      pieces.Q = Q_double(n);
    }
  }

  for (long i = 1; i < n; ++i)
    for (long j = 1; j < n; ++j) {
      T unit = poisson_unit<T>(i, j, n);
      if (variant == SecondVariant::W20) unit = ((i + j) % 2 == 0) ? T(2) * unit : T(0);
      if (variant == SecondVariant::N42) unit = unit + kappa<T>(i, j, n, pieces);
      p.G2(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = lower_value(unit) * h;
    }

  T h_xi_lr(0);
  T h_xi_c(0);
  for (long i = 0; i <= n; ++i) {
    T b(0);
    switch (variant) {
      case SecondVariant::N20:
        b = i == 0 ? T(1) : T(0);
        break;
      case SecondVariant::N21:
        b = i == 0 ? T(1) : (i == 1 ? T(-1) / T(2) : T(0));
        break;
      case SecondVariant::W20:
        b = T((i % 2 == 0) ? 1 : -1) * (T(1) - T(i) / T(n));
        break;
      case SecondVariant::N42:
        b = n42_bL<T>(i, n, pieces);
        break;
      case SecondVariant::External:
        break;
    }
    const double bd = lower_value(b);
    p.bL[static_cast<std::size_t>(i)] = bd;
    p.bR[static_cast<std::size_t>(n - i)] = bd;
  }
  switch (variant) {
    case SecondVariant::N20:
      h_xi_lr = T(1);
      break;
    case SecondVariant::N21:
      h_xi_lr = T(5) / T(2);
      break;
    case SecondVariant::W20:
      // xi_LR = 2/h - 1/ell, xi_C = -(-1)^n / ell, and h/ell = 1/n.
      h_xi_lr = T(2) - T(1) / T(n);
      h_xi_c = T((n % 2 == 0) ? -1 : 1) / T(n);
      break;
    case SecondVariant::N42:
      h_xi_lr = T(2417) / T(354) - T(289) * pieces.P(n - 2) / (T(2) * pieces.Q);
      h_xi_c = T(289) / pieces.Q;
      break;
    case SecondVariant::External:
      break;
  }
  const double xlr = lower_value(h_xi_lr) / h;
  const double xc = lower_value(h_xi_c) / h;
  p.xi = finish_xi(xlr, xlr, xc, true);
  return p;
}

}  // namespace

SecondParts closed_form_second(SecondVariant variant, const Grid& grid, Precision precision) {
  if (variant == SecondVariant::External) {
    fail(ErrorCode::InvalidArgument, "no explicit inverse for externally supplied operators");
  }
  if (grid.n < min_intervals(variant)) {
    fail(ErrorCode::GridTooSmall, std::string("explicit inverse of ") + variant_name(variant) + " needs n >= " +
                                      std::to_string(min_intervals(variant)));
  }
  return precision == Precision::Exact ? closed_parts<Rat>(variant, grid) : closed_parts<double>(variant, grid);
}

GreenSecond closed_form_inverse_second(const AssembledSecond& sys, Precision precision) {
  return assemble_inverse_second(closed_form_second(sys.op.variant, sys.op.grid, precision), sys.sat, sys.op.grid);
}

double PreliminaryReport::max_residual() const {
  double best = 0.0;
  for (const auto& r : residuals) {
    if (std::isnan(r.second)) return std::numeric_limits<double>::infinity();
    best = std::max(best, r.second);
  }
  return best;
}

double PreliminaryReport::residual(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.first == name) return r.second;
  fail(ErrorCode::InvalidArgument, "PreliminaryReport: no residual named " + name);
}

PreliminaryReport verify_preliminaries(const SbpSecondOp& op) {
  PreliminaryReport rep;
  const Grid& g = op.grid;
  const std::size_t N = g.size();
  const std::size_t n = N - 1;
  const double ell = g.ell;
  const Vector x = g.nodes();
  const Vector one = g.ones();
  Vector ell_minus_x(N);
  for (std::size_t i = 0; i < N; ++i) ell_minus_x[i] = ell - x[i];
  const Vector ox = one_minus_x_over_ell(g);
  const Vector xo = x_over_ell(g);
  const double dscale = std::max(norm_inf(op.dL), norm_inf(op.dR));
  const double ascale = op.A.max_abs();

  rep.residuals.emplace_back(
      "stencil_moments",
      std::max({std::abs(dot(op.dL, ell_minus_x) + 1.0), std::abs(dot(op.dL, x) - 1.0),
                std::abs(dot(op.dR, ell_minus_x) + 1.0), std::abs(dot(op.dR, x) - 1.0)}));

  Vector eLmR = op.eL;
  eLmR.back() = -1.0;
  rep.residuals.emplace_back("A_on_linears", std::max(norm_inf(sub(op.A * ell_minus_x, eLmR)),
                                                      norm_inf(axpy(1.0, op.A * x, eLmR))));

  const DenseMatrix Abar_inv = interior_inverse(op);
  Vector aL(n - 1), aR(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    aL[i] = op.A(i + 1, 0);
    aR[i] = op.A(i + 1, n);
  }
  const Vector sL = Abar_inv * aL;
  const Vector sR = Abar_inv * aR;
  double lin = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    lin = std::max(lin, std::abs(ox[i + 1] + sL[i]));
    lin = std::max(lin, std::abs(xo[i + 1] + sR[i]));
  }
  rep.residuals.emplace_back("interior_linear_solutions", lin);

  const double corner =
      std::max({std::abs(op.A(0, 0) - dot(aL, sL) - 1.0 / ell), std::abs(op.A(n, n) - dot(aR, sR) - 1.0 / ell),
                std::abs(op.A(0, n) - dot(aR, sL) + 1.0 / ell), std::abs(op.A(0, n) - dot(aL, sR) + 1.0 / ell)});
  rep.residuals.emplace_back("corner_entries", ascale > 0.0 ? corner / ascale : corner);

  SecondParts parts;
  parts.G2 = border(Abar_inv, N);
  fill_b(parts, op);
  DenseMatrix expected = DenseMatrix::identity(N);
  for (std::size_t j = 0; j < N; ++j) {
    expected(0, j) -= ox[j];
    expected(n, j) -= xo[j];
  }
  rep.residuals.emplace_back("A_times_G2", max_abs_diff(op.A * parts.G2, expected));

  const double pick = std::max(norm_inf(axpy(1.0, op.A * parts.bL, op.dL)),
                               norm_inf(sub(op.A * parts.bR, op.dR)));
  rep.residuals.emplace_back("A_times_b", dscale > 0.0 ? pick / dscale : pick);

  rep.residuals.emplace_back(
      "boundary_selection",
      std::max({std::abs(ox.front() - 1.0), std::abs(xo.front()), std::abs(ox.back()), std::abs(xo.back() - 1.0),
                std::abs(parts.bL.front() - 1.0), std::abs(parts.bR.front()), std::abs(parts.bL.back()),
                std::abs(parts.bR.back() - 1.0)}));

  const DenseMatrix G2t = parts.G2.transpose();
  const Vector dLG = G2t * op.dL;
  const Vector dRG = G2t * op.dR;
  double grel = std::max(norm_inf(parts.G2.row(0)), norm_inf(parts.G2.row(n)));
  grel = std::max(grel, norm_inf(sub(dLG, sub(ox, parts.bL))));
  grel = std::max(grel, norm_inf(sub(dRG, sub(parts.bR, xo))));
  rep.residuals.emplace_back("G2_relations", grel);
  return rep;
}

}  // namespace sbpgreen
