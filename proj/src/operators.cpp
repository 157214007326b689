// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "sbpgreen/error.hpp"
#include "sbpgreen/quadint.hpp"

namespace sbpgreen {

namespace {

using Rat = BigRational;

Rat frac(long p, long q) { return Rat(p) / Rat(q); }

// Dense exact matrix at unit spacing; lowered to doubles at the end.
struct RatMatrix {
  std::size_t n = 0;
  std::vector<Rat> v;
  explicit RatMatrix(std::size_t size) : n(size), v(size * size) {}
  Rat& at(std::size_t i, std::size_t j) { return v[i * n + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix c(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t k = 0; k < a.n; ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < a.n; ++j)
        if (b.at(k, j) != 0) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

DenseMatrix lower(const RatMatrix& m, double scale) {
  DenseMatrix out(m.n, m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j)
      if (m.at(i, j) != 0) out(i, j) = to_double(m.at(i, j)) * scale;
  return out;
}

Vector lower(const std::vector<Rat>& v, double scale) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] == 0 ? 0.0 : to_double(v[i]) * scale;
  return out;
}

// Unit-spacing exact data of a first-derivative operator.
struct ExactFirst {
  std::vector<Rat> w;  // norm weights
  RatMatrix Q;
  explicit ExactFirst(std::size_t size) : w(size, Rat(1)), Q(size) {}
};

// Unit-spacing exact data of a second-derivative operator.
struct ExactSecond {
  std::vector<Rat> w;
  RatMatrix A;
  std::vector<Rat> dL, dR;
  explicit ExactSecond(std::size_t size) : w(size, Rat(1)), A(size), dL(size), dR(size) {}
};

void mirror_weights(std::vector<Rat>& w, const std::vector<Rat>& closure) {
  const std::size_t n = w.size() - 1;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    w[i] = closure[i];
    w[n - i] = closure[i];
  }
}

ExactFirst exact_first(FirstVariant variant, int n) {
  const std::size_t N = static_cast<std::size_t>(n) + 1;
  ExactFirst op(N);
  RatMatrix& Q = op.Q;
  if (variant == FirstVariant::D1_21) {
    mirror_weights(op.w, {frac(1, 2)});
    for (std::size_t i = 0; i + 1 < N; ++i) {
      Q.at(i, i + 1) = frac(1, 2);
      Q.at(i + 1, i) = frac(-1, 2);
    }
    Q.at(0, 0) = frac(-1, 2);
    Q.at(N - 1, N - 1) = frac(1, 2);
    return op;
  }
  mirror_weights(op.w, {frac(17, 48), frac(59, 48), frac(43, 48), frac(49, 48)});
  const std::size_t last = N - 1;
  for (std::size_t i = 4; i + 4 <= last; ++i) {
    Q.at(i, i - 2) = frac(1, 12);
    Q.at(i, i - 1) = frac(-2, 3);
    Q.at(i, i + 1) = frac(2, 3);
    Q.at(i, i + 2) = frac(-1, 12);
  }
  const std::vector<std::tuple<std::size_t, std::size_t, Rat>> closure = {
      {0, 0, frac(-1, 2)},  {0, 1, frac(59, 96)},  {0, 2, frac(-1, 12)}, {0, 3, frac(-1, 32)},
      {1, 0, frac(-59, 96)}, {1, 2, frac(59, 96)},
      {2, 0, frac(1, 12)},  {2, 1, frac(-59, 96)}, {2, 3, frac(59, 96)}, {2, 4, frac(-1, 12)},
      {3, 0, frac(1, 32)},  {3, 2, frac(-59, 96)}, {3, 4, frac(2, 3)},   {3, 5, frac(-1, 12)},
  };
  for (const auto& [i, j, c] : closure) {
    Q.at(i, j) = c;
    Q.at(last - i, last - j) = -c;
  }
  return op;
}

ExactSecond exact_second(SecondVariant variant, int n) {
  const std::size_t N = static_cast<std::size_t>(n) + 1;
  const std::size_t last = N - 1;
  ExactSecond op(N);
  RatMatrix& A = op.A;
  auto mirror_d = [&](const std::vector<Rat>& left) {
    for (std::size_t i = 0; i < left.size(); ++i) {
      op.dL[i] = left[i];
      op.dR[last - i] = -left[i];
    }
  };
  switch (variant) {
    case SecondVariant::N20:
    case SecondVariant::N21: {
      mirror_weights(op.w, {frac(1, 2)});
      for (std::size_t i = 0; i < N; ++i) {
        A.at(i, i) = (i == 0 || i == last) ? Rat(1) : Rat(2);
        if (i + 1 < N) A.at(i, i + 1) = A.at(i + 1, i) = Rat(-1);
      }
      if (variant == SecondVariant::N20) {
        mirror_d({Rat(-1), Rat(1)});
      } else {
        mirror_d({frac(-3, 2), Rat(2), frac(-1, 2)});
      }
      return op;
    }
    case SecondVariant::N42: {
      mirror_weights(op.w, {frac(17, 48), frac(59, 48), frac(43, 48), frac(49, 48)});
      for (std::size_t i = 4; i + 4 <= last; ++i) {
        A.at(i, i - 2) = frac(1, 12);
        A.at(i, i - 1) = frac(-4, 3);
        A.at(i, i) = frac(5, 2);
        A.at(i, i + 1) = frac(-4, 3);
        A.at(i, i + 2) = frac(1, 12);
      }
      const std::vector<std::tuple<std::size_t, std::size_t, Rat>> upper = {
          {0, 0, frac(9, 8)},    {0, 1, frac(-59, 48)}, {0, 2, frac(1, 12)},   {0, 3, frac(1, 48)},
          {1, 1, frac(59, 24)},  {1, 2, frac(-59, 48)}, {1, 3, Rat(0)},
          {2, 2, frac(55, 24)},  {2, 3, frac(-59, 48)}, {2, 4, frac(1, 12)},
          {3, 3, frac(59, 24)},  {3, 4, frac(-4, 3)},   {3, 5, frac(1, 12)},
      };
      for (const auto& [i, j, c] : upper) {
        A.at(i, j) = A.at(j, i) = c;
        A.at(last - i, last - j) = A.at(last - j, last - i) = c;
      }
      mirror_d({frac(-11, 6), Rat(3), frac(-3, 2), frac(1, 3)});
      return op;
    }
    case SecondVariant::W20: {
      // D2 = D1 D1 with the (2,1) first-derivative operator; d = D1^T e.
      const ExactFirst first = exact_first(FirstVariant::D1_21, n);
      op.w = first.w;
      RatMatrix D1(N);
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) D1.at(i, j) = first.Q.at(i, j) / first.w[i];
      const RatMatrix D2 = multiply(D1, D1);
      for (std::size_t j = 0; j < N; ++j) {
        op.dL[j] = D1.at(0, j);
        op.dR[j] = D1.at(last, j);
      }
      for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
          Rat v = -op.w[i] * D2.at(i, j);
          if (i == last) v += op.dR[j];
          if (i == 0) v -= op.dL[j];
          A.at(i, j) = v;
        }
      return op;
    }
    case SecondVariant::External:
      break;
  }
  fail(ErrorCode::InvalidArgument, "build_second: external operators come from load_operator_csv");
}

SbpFirstOp lower_first(FirstVariant variant, const Grid& grid, const ExactFirst& ex) {
  SbpFirstOp op;
  op.variant = variant;
  op.grid = grid;
  const std::size_t N = grid.size();
  op.H = lower(ex.w, grid.h);
  op.Q = lower(ex.Q, 1.0);
  RatMatrix D1(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (ex.Q.at(i, j) != 0) D1.at(i, j) = ex.Q.at(i, j) / ex.w[i];
  op.D1 = lower(D1, 1.0 / grid.h);
  op.eL = grid.e_left();
  op.eR = grid.e_right();
  return op;
}

SbpSecondOp lower_second(SecondVariant variant, const Grid& grid, const ExactSecond& ex) {
  SbpSecondOp op;
  op.variant = variant;
  op.grid = grid;
  const std::size_t N = grid.size();
  const std::size_t last = N - 1;
  const double inv_h = 1.0 / grid.h;
  op.H = lower(ex.w, grid.h);
  op.A = lower(ex.A, inv_h);
  op.dL = lower(ex.dL, inv_h);
  op.dR = lower(ex.dR, inv_h);
  RatMatrix D2(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      Rat v = -ex.A.at(i, j);
      if (i == last) v += ex.dR[j];
      if (i == 0) v -= ex.dL[j];
      if (v != 0) D2.at(i, j) = v / ex.w[i];
    }
  op.D2 = lower(D2, inv_h * inv_h);
  op.eL = grid.e_left();
  op.eR = grid.e_right();
  return op;
}

void require_size(int n, int minimum, const char* name) {
  if (n < minimum) {
    fail(ErrorCode::GridTooSmall, std::string(name) + " needs n >= " + std::to_string(minimum) +
                                      ", got n = " + std::to_string(n));
  }
}

double rel(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

Grid::Grid(int n_, double ell_) : n(n_), ell(ell_), h(ell_ / n_) {
  if (n_ < 1) fail(ErrorCode::InvalidArgument, "Grid: n must be positive");
  if (!(ell_ > 0.0) || !std::isfinite(ell_)) fail(ErrorCode::InvalidArgument, "Grid: ell must be positive and finite");
}

Vector Grid::nodes() const {
  Vector x(size());
  for (int i = 0; i <= n; ++i) x[static_cast<std::size_t>(i)] = this->x(i);
  return x;
}

Vector Grid::e_left() const {
  Vector e(size(), 0.0);
  e.front() = 1.0;
  return e;
}

Vector Grid::e_right() const {
  Vector e(size(), 0.0);
  e.back() = 1.0;
  return e;
}

const char* variant_name(FirstVariant v) {
  switch (v) {
    case FirstVariant::D1_21: return "d1_21";
    case FirstVariant::D1_42: return "d1_42";
    case FirstVariant::External: return "external";
  }
  return "unknown";
}

const char* variant_name(SecondVariant v) {
  switch (v) {
    case SecondVariant::N20: return "n20";
    case SecondVariant::N21: return "n21";
    case SecondVariant::N42: return "n42";
    case SecondVariant::W20: return "w20";
    case SecondVariant::External: return "external";
  }
  return "unknown";
}

bool parse_variant(const std::string& s, FirstVariant& out) {
  if (s == "d1_21") { out = FirstVariant::D1_21; return true; }
  if (s == "d1_42") { out = FirstVariant::D1_42; return true; }
  return false;
}

bool parse_variant(const std::string& s, SecondVariant& out) {
  if (s == "n20") { out = SecondVariant::N20; return true; }
  if (s == "n21") { out = SecondVariant::N21; return true; }
  if (s == "n42") { out = SecondVariant::N42; return true; }
  if (s == "w20") { out = SecondVariant::W20; return true; }
  return false;
}

int min_intervals(FirstVariant v) {
  switch (v) {
    case FirstVariant::D1_21: return 2;
    case FirstVariant::D1_42: return 8;
    case FirstVariant::External: return 1;
  }
  return 1;
}

int min_intervals(SecondVariant v) {
  switch (v) {
    case SecondVariant::N42: return 8;
    case SecondVariant::External: return 1;
    default: return 4;
  }
}

SbpFirstOp build_first(FirstVariant variant, const Grid& grid) {
  if (variant == FirstVariant::External) {
    fail(ErrorCode::InvalidArgument, "build_first: external operators come from load_operator_csv");
  }
  require_size(grid.n, min_intervals(variant), variant_name(variant));
  return lower_first(variant, grid, exact_first(variant, grid.n));
}

SbpSecondOp build_second(SecondVariant variant, const Grid& grid) {
  if (variant == SecondVariant::External) {
    fail(ErrorCode::InvalidArgument, "build_second: external operators come from load_operator_csv");
  }
  require_size(grid.n, min_intervals(variant), variant_name(variant));
  return lower_second(variant, grid, exact_second(variant, grid.n));
}

double SbpReport::max_residual() const {
  double best = 0.0;
  for (const auto& r : residuals) {
    if (std::isnan(r.second)) return std::numeric_limits<double>::infinity();
    best = std::max(best, r.second);
  }
  return best;
}

double SbpReport::residual(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.first == name) return r.second;
  fail(ErrorCode::InvalidArgument, "SbpReport: no residual named " + name);
}

SbpReport verify_sbp(const SbpFirstOp& op) {
  SbpReport rep;
  const std::size_t N = op.grid.size();
  const std::size_t last = N - 1;
  const Vector x = op.grid.nodes();
  const Vector one = op.grid.ones();

  double h_neg = 0.0;
  for (double w : op.H) h_neg = std::max(h_neg, w > 0.0 ? 0.0 : std::abs(w) + 1.0);
  rep.residuals.emplace_back("norm_positive", h_neg);

  DenseMatrix boundary(N, N);
  boundary(0, 0) = -1.0;
  boundary(last, last) = 1.0;
  rep.residuals.emplace_back("sbp_identity", ((op.Q + op.Q.transpose()) - boundary).max_abs());

  DenseMatrix HinvQ = op.Q;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) HinvQ(i, j) /= op.H[i];
  const double d1_norm = op.D1.norm_inf();
  rep.residuals.emplace_back("derivative_definition", rel(max_abs_diff(op.D1, HinvQ), op.D1.max_abs()));
  rep.residuals.emplace_back("consistency_constant", rel(norm_inf(op.D1 * one), d1_norm));
  rep.residuals.emplace_back("consistency_linear",
                             rel(norm_inf(sub(op.D1 * x, one)), d1_norm * op.grid.ell));

  double centro = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    centro = std::max(centro, rel(std::abs(op.H[i] - op.H[last - i]), op.H[i]));
    for (std::size_t j = 0; j < N; ++j) centro = std::max(centro, std::abs(op.Q(i, j) + op.Q(last - i, last - j)));
  }
  rep.residuals.emplace_back("centrosymmetry", centro);
  rep.min_eig = std::numeric_limits<double>::quiet_NaN();
  return rep;
}

SbpReport verify_sbp(const SbpSecondOp& op) {
  SbpReport rep;
  const std::size_t N = op.grid.size();
  const std::size_t last = N - 1;
  const Vector x = op.grid.nodes();
  const Vector one = op.grid.ones();
  const double a_scale = op.A.max_abs();

  double h_neg = 0.0;
  for (double w : op.H) h_neg = std::max(h_neg, w > 0.0 ? 0.0 : std::abs(w) + 1.0);
  rep.residuals.emplace_back("norm_positive", h_neg);
  rep.residuals.emplace_back("A_symmetry", rel(symmetry_residual(op.A), a_scale));

  DenseMatrix sym = op.A;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) sym(i, j) = sym(j, i) = 0.5 * (op.A(i, j) + op.A(j, i));
  rep.min_eig = min_eig_sym(sym);
  rep.residuals.emplace_back("A_semidefinite", std::max(0.0, -rep.min_eig));

  DenseMatrix rebuilt = DenseMatrix(N, N) - op.A;
  for (std::size_t j = 0; j < N; ++j) {
    rebuilt(last, j) += op.dR[j];
    rebuilt(0, j) -= op.dL[j];
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) rebuilt(i, j) /= op.H[i];
  const double d2_scale = op.D2.max_abs();
  const double d2_norm = op.D2.norm_inf();
  rep.residuals.emplace_back("derivative_definition", rel(max_abs_diff(op.D2, rebuilt), d2_scale));
  rep.residuals.emplace_back("consistency_constant", rel(norm_inf(op.D2 * one), d2_norm));
  rep.residuals.emplace_back("consistency_linear", rel(norm_inf(op.D2 * x), d2_norm * op.grid.ell));

  double dnorm = 0.0;
  for (std::size_t i = 0; i < N; ++i) dnorm = std::max(dnorm, std::abs(op.dL[i]) + std::abs(op.dR[i]));
  double bc = 0.0;
  bc = std::max(bc, rel(std::abs(dot(op.dL, one)), dnorm));
  bc = std::max(bc, rel(std::abs(dot(op.dR, one)), dnorm));
  bc = std::max(bc, std::abs(dot(op.dL, x) - 1.0));
  bc = std::max(bc, std::abs(dot(op.dR, x) - 1.0));
  rep.residuals.emplace_back("boundary_consistency", bc);

  double centro = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    centro = std::max(centro, rel(std::abs(op.H[i] - op.H[last - i]), op.H[i]));
    centro = std::max(centro, rel(std::abs(op.dL[i] + op.dR[last - i]), dnorm));
    for (std::size_t j = 0; j < N; ++j)
      centro = std::max(centro, rel(std::abs(op.A(i, j) - op.A(last - i, last - j)), a_scale));
  }
  rep.residuals.emplace_back("centrosymmetry", centro);

  if (op.variant == SecondVariant::W20) {
    const SbpFirstOp first = build_first(FirstVariant::D1_21, op.grid);
    const DenseMatrix sq = first.D1 * first.D1;
    double w = rel(max_abs_diff(op.D2, sq), d2_scale);
    w = std::max(w, rel(norm_inf(sub(op.dL, first.D1.row(0))), dnorm));
    w = std::max(w, rel(norm_inf(sub(op.dR, first.D1.row(last))), dnorm));
    rep.residuals.emplace_back("wide_factorization", w);
  }
  return rep;
}

bool is_centrosymmetric(const SbpSecondOp& op) {
  const std::size_t N = op.grid.size();
  const std::size_t last = N - 1;
  const double a_scale = op.A.max_abs();
  double dscale = std::max(norm_inf(op.dL), norm_inf(op.dR));
  for (std::size_t i = 0; i < N; ++i) {
    if (std::abs(op.dL[i] + op.dR[last - i]) > 1e-12 * dscale) return false;
    for (std::size_t j = 0; j < N; ++j)
      if (std::abs(op.A(i, j) - op.A(last - i, last - j)) > 1e-12 * a_scale) return false;
  }
  return true;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> parts;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  fail(ErrorCode::ParseError, "operator CSV line " + std::to_string(line_no) + ": " + what);
}

Rat parse_exact(const std::string& text, std::size_t line_no) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const BigInt p(trim(text.substr(0, slash)));
      const BigInt q(trim(text.substr(slash + 1)));
      if (q == 0) parse_fail(line_no, "zero denominator");
      return Rat(p, q);
    }
    // Exact decimal: [sign] digits [. digits] [e|E [sign] digits]
    std::string s = text;
    long exponent = 0;
    const auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
      exponent = std::stol(s.substr(epos + 1));
      s = s.substr(0, epos);
    }
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      negative = s[0] == '-';
      s = s.substr(1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (char c : s) {
      if (c == '.') {
        if (seen_point) parse_fail(line_no, "bad number '" + text + "'");
        seen_point = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        if (seen_point) ++frac_digits;
      } else {
        parse_fail(line_no, "bad number '" + text + "'");
      }
    }
    if (digits.empty()) parse_fail(line_no, "bad number '" + text + "'");
    Rat r{BigInt(digits)};
    const long shift = exponent - frac_digits;
    const BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(shift)));
    if (shift >= 0) {
      r *= Rat(ten_pow);
    } else {
      r /= Rat(ten_pow);
    }
    return negative ? Rat(-r) : r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(line_no, "bad number '" + text + "'");
  }
}

std::size_t parse_index(const std::string& s, std::size_t limit, std::size_t line_no) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    parse_fail(line_no, "bad index '" + s + "'");
  }
  if (pos != s.size() || v < 0 || static_cast<std::size_t>(v) >= limit) {
    parse_fail(line_no, "index out of range '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

ExternalOperator parse_operator_csv(const std::string& text, double ell) {
  std::stringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++line_no;
      out = trim(line);
      if (!out.empty() && out[0] != '#') return true;
    }
    return false;
  };

  std::string header;
  if (!next_line(header)) fail(ErrorCode::ParseError, "operator CSV: empty input");
  const auto head = split_commas(header);
  if (head.size() != 3) parse_fail(line_no, "header must be variant,rows,cols");
  const bool second = head[0] == "second";
  if (!second && head[0] != "first") parse_fail(line_no, "variant must be 'first' or 'second'");
  const std::size_t rows = parse_index(head[1], 100000, line_no);
  const std::size_t cols = parse_index(head[2], 100000, line_no);
  if (rows != cols || rows < 2) parse_fail(line_no, "operator must be square with at least 2 rows");

  std::map<std::string, std::map<std::pair<std::size_t, std::size_t>, Rat>> sections;
  std::string current;
  std::string row;
  while (next_line(row)) {
    const auto parts = split_commas(row);
    if (parts.size() == 1) {
      current = parts[0];
      const bool known = second ? (current == "H" || current == "A" || current == "dL" || current == "dR")
                                : (current == "H" || current == "Q");
      if (!known) parse_fail(line_no, "unknown section '" + current + "'");
      sections[current];
      continue;
    }
    if (current.empty()) parse_fail(line_no, "triplet before any section name");
    if (parts.size() != 3) parse_fail(line_no, "expected i,j,value");
    const std::size_t i = parse_index(parts[0], rows, line_no);
    const std::size_t j = parse_index(parts[1], cols, line_no);
    sections[current][{i, j}] = parse_exact(parts[2], line_no);
  }

  const int n = static_cast<int>(rows) - 1;
  const Grid grid(n, ell);
  auto require_section = [&](const char* name) -> const std::map<std::pair<std::size_t, std::size_t>, Rat>& {
    auto it = sections.find(name);
    if (it == sections.end()) fail(ErrorCode::ParseError, std::string("operator CSV: missing section ") + name);
    return it->second;
  };
  std::vector<Rat> w(rows, Rat(0));
  for (const auto& [ij, v] : require_section("H")) {
    if (ij.first != ij.second) fail(ErrorCode::ParseError, "operator CSV: H must be diagonal");
    w[ij.first] = v;
  }
  for (const auto& wi : w)
    if (wi <= 0) fail(ErrorCode::ParseError, "operator CSV: H must have positive diagonal entries");

  ExternalOperator out;
  out.second = second;
  if (!second) {
    ExactFirst ex(rows);
    ex.w = w;
    for (const auto& [ij, v] : require_section("Q")) ex.Q.at(ij.first, ij.second) = v;
    out.first_op = lower_first(FirstVariant::External, grid, ex);
  } else {
    ExactSecond ex(rows);
    ex.w = w;
    for (const auto& [ij, v] : require_section("A")) ex.A.at(ij.first, ij.second) = v;
    for (const auto& [ij, v] : require_section("dL")) ex.dL[ij.second] = v;
    for (const auto& [ij, v] : require_section("dR")) ex.dR[ij.second] = v;
    out.second_op = lower_second(SecondVariant::External, grid, ex);
  }
  return out;
}

ExternalOperator load_operator_csv(const std::string& path, double ell) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open operator file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_operator_csv(buf.str(), ell);
}

}  // namespace sbpgreen
