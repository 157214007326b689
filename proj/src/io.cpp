// SPDX-License-Identifier: Apache-2.0
#include "sbpgreen/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "sbpgreen/error.hpp"

namespace sbpgreen {

namespace {

using json = nlohmann::ordered_json;

json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json side_json(const SideVerdict& s) {
  return json{{"penalty_sign", s.penalty_sign},
              {"flux_bound", s.flux_bound},
              {"defect_bound", s.defect_bound},
              {"defect_lhs", number(s.defect_lhs)},
              {"defect_rhs", number(s.defect_rhs)},
              {"stable", s.stable()}};
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string matrix_csv(const DenseMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_number(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string vector_csv(const Vector& v) {
  std::string out;
  for (double x : v) {
    out += format_number(x);
    out += '\n';
  }
  return out;
}

std::string run_csv(const TransientRun& run, const Vector& H) {
  std::string out = "t";
  for (std::size_t i = 0; i < H.size(); ++i) out += ",v_" + std::to_string(i);
  out += ",energy\n";
  for (std::size_t k = 0; k < run.times.size(); ++k) {
    out += format_number(run.times[k]);
    double e = 0.0;
    for (std::size_t i = 0; i < H.size(); ++i) {
      const double v = run.states[k][i];
      e += H[i] * v * v;
      out += ',' + format_number(v);
    }
    out += ',' + format_number(e) + '\n';
  }
  return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "n,h,error,rate\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + format_number(r.h) + ',' + format_number(r.error) + ',' +
           format_number(r.rate) + '\n';
  }
  return out;
}

std::string green_csv(const std::vector<GreenSample>& samples) {
  std::string out = "x,y,discrete,continuous\n";
  for (const auto& s : samples) {
    out += format_number(s.x) + ',' + format_number(s.y) + ',' + format_number(s.discrete) + ',' +
           format_number(s.continuous) + '\n';
  }
  return out;
}

namespace {

// Order label (interior, boundary) of the built-in narrow operators.
const char* order_label(SecondVariant v) {
  switch (v) {
    case SecondVariant::N20: return "(2,0)";
    case SecondVariant::N21: return "(2,1)";
    case SecondVariant::N42: return "(4,2)";
    case SecondVariant::W20: return "(2,0)w";
    case SecondVariant::External: break;
  }
  return "ext";
}

}  // namespace

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::string out = "order,variant,n,h_qtT,inv_gamma,reference_h_qtT,reference_inv_gamma,theorem3_residual,matches\n";
  for (const auto& r : rows) {
    out += std::string(order_label(r.variant)) + ',' + variant_name(r.variant) + ',' + std::to_string(r.n) + ',' + format_number(r.h_qtT) + ',' +
           format_number(r.inv_gamma) + ',' + r.reference_h_qtT + ',' + r.reference_inv_gamma + ',' +
           format_number(r.theorem3_residual) + ',' + (r.matches ? "true" : "false") + '\n';
  }
  return out;
}

std::string qrtab_csv(const std::vector<QrRow>& rows) {
  std::string out = "n,h_xi_lr,h_xi_c,reference_h_xi_lr,reference_h_xi_c,matches\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + format_number(r.h_xi_lr) + ',' + format_number(r.h_xi_c) + ',' +
           (r.reference_h_xi_lr ? format_number(*r.reference_h_xi_lr) : "") + ',' +
           (r.reference_h_xi_c ? format_number(*r.reference_h_xi_c) : "") + ',' + (r.matches ? "true" : "false") +
           '\n';
  }
  return out;
}

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(8) << "order" << std::setw(8) << "variant" << std::setw(5) << "n" << std::setw(24) << "h*qt_T" << std::setw(24)
     << "1/gamma" << std::setw(20) << "published h*qt_T" << std::setw(16) << "published 1/g"
     << "match\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(8) << order_label(r.variant) << std::setw(8) << variant_name(r.variant) << std::setw(5) << r.n << std::setw(24)
       << format_number(r.h_qtT) << std::setw(24) << format_number(r.inv_gamma) << std::setw(20) << r.reference_h_qtT
       << std::setw(16) << r.reference_inv_gamma << (r.matches ? "yes" : "NO") << '\n';
  }
  return os.str();
}

std::string qrtab_text(const std::vector<QrRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(5) << "n" << std::setw(22) << "h*xi_LR" << std::setw(22) << "h*xi_C"
     << "match\n";
  os << std::fixed << std::setprecision(15);
  for (const auto& r : rows) {
    os << std::left << std::setw(5) << r.n << std::setw(22) << r.h_xi_lr << std::setw(22) << r.h_xi_c;
    if (r.reference_h_xi_lr) {
      os << (r.matches ? "yes" : "NO");
    } else {
      os << "-";
    }
    os << '\n';
  }
  return os.str();
}

std::string sbp_report_json(const SbpReport& rep, const std::string& variant, int n) {
  json res = json::object();
  for (const auto& [name, value] : rep.residuals) res[name] = number(value);
  json j{{"variant", variant},
         {"n", n},
         {"residuals", res},
         {"max_residual", number(rep.max_residual())},
         {"min_eig", number(rep.min_eig)},
         {"passed", rep.passed()}};
  return dump(j);
}

std::string table1_json(const std::vector<Table1Row>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back(json{{"order", order_label(r.variant)},
                       {"variant", variant_name(r.variant)},
                       {"n", r.n},
                       {"h_qtT", number(r.h_qtT)},
                       {"inv_gamma", number(r.inv_gamma)},
                       {"theorem3_residual", number(r.theorem3_residual)},
                       {"reference_h_qtT", r.reference_h_qtT},
                       {"reference_inv_gamma", r.reference_inv_gamma},
                       {"matches", r.matches}});
  }
  return dump(arr);
}

std::string qrtab_json(const std::vector<QrRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row{{"n", r.n}, {"h_xi_lr", number(r.h_xi_lr)}, {"h_xi_c", number(r.h_xi_c)}};
    row["reference_h_xi_lr"] = r.reference_h_xi_lr ? number(*r.reference_h_xi_lr) : json(nullptr);
    row["reference_h_xi_c"] = r.reference_h_xi_c ? number(*r.reference_h_xi_c) : json(nullptr);
    row["matches"] = r.matches;
    arr.push_back(row);
  }
  return dump(arr);
}

std::string theorem3_json(const Theorem3Report& rep, const std::string& variant, int n) {
  return dump(json{{"variant", variant},
                   {"n", n},
                   {"h_gamma", number(rep.h_gamma)},
                   {"xi_T", number(rep.xiT)},
                   {"theorem3_residual", number(rep.residual)},
                   {"passed", rep.passed}});
}

std::string singularity_json(const SingularityVerdict& v) {
  json j{{"singular", v.singular},
         {"condition", v.condition_name()},
         {"det_boundary", number(v.det_boundary)},
         {"det_penalty", number(v.det_penalty)}};
  j["zeta"] = v.has_zeta ? number(v.zeta) : json(nullptr);
  if (v.witness_checked) {
    j["rank_witness"] = v.rank_witness;
    j["agrees"] = v.agrees();
  }
  return dump(j);
}

std::string stability_json(const SecondVerdict& v) {
  return dump(json{{"stable", v.stable},
                   {"dual_consistent", v.dual_consistent},
                   {"left", side_json(v.left)},
                   {"right", side_json(v.right)}});
}

std::string xi_json(const XiScalars& xi) {
  return dump(json{{"xi_L", number(xi.xiL)},
                   {"xi_R", number(xi.xiR)},
                   {"xi_C", number(xi.xiC)},
                   {"xi_T", number(xi.xiT)},
                   {"centrosymmetric", xi.centrosymmetric}});
}

std::string energy_json(const EnergySuiteReport& rep) {
  return dump(json{{"runs", rep.runs},
                   {"advection_runs", rep.advection_runs},
                   {"heat_runs", rep.heat_runs},
                   {"violations", rep.violations},
                   {"worst_step_growth", number(rep.worst_step_growth)},
                   {"worst_case", rep.worst_case}});
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(ErrorCode::IoError, "write to " + path + " failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace sbpgreen
