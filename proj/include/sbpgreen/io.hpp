// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "sbpgreen/green_second.hpp"
#include "sbpgreen/operators.hpp"
#include "sbpgreen/solver.hpp"
#include "sbpgreen/stability.hpp"

namespace sbpgreen {

/// Shortest-safe round-trip form: 17 significant digits.
std::string format_number(double v);

std::string matrix_csv(const DenseMatrix& m);
std::string vector_csv(const Vector& v);
/// Columns t, v_0..v_n, energy.
std::string run_csv(const TransientRun& run, const Vector& H);
/// Columns n, h, error, rate.
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);
/// Columns x, y, discrete, continuous.
std::string green_csv(const std::vector<GreenSample>& samples);
std::string table1_csv(const std::vector<Table1Row>& rows);
std::string qrtab_csv(const std::vector<QrRow>& rows);

/// Aligned plain-text tables.
std::string table1_text(const std::vector<Table1Row>& rows);
std::string qrtab_text(const std::vector<QrRow>& rows);

std::string sbp_report_json(const SbpReport& rep, const std::string& variant, int n);
std::string table1_json(const std::vector<Table1Row>& rows);
std::string qrtab_json(const std::vector<QrRow>& rows);
std::string theorem3_json(const Theorem3Report& rep, const std::string& variant, int n);
std::string singularity_json(const SingularityVerdict& v);
std::string stability_json(const SecondVerdict& v);
std::string xi_json(const XiScalars& xi);
std::string energy_json(const EnergySuiteReport& rep);

/// Writes text to a file, IoError on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace sbpgreen
