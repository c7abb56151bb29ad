// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oscilla/cell.hpp"
#include "oscilla/correctors.hpp"
#include "oscilla/fem.hpp"
#include "oscilla/homogenized.hpp"

namespace oscilla {

struct StudyConfig {
  PeriodicProfile profile = PeriodicProfile::constant(1.0);
  SourceFunction source = SourceFunction::cosine_poly({1.0});
  std::vector<double> eps;  ///< strictly decreasing, whole periods each
  int m = 32;               ///< cells per period
  int n = 8;                ///< vertical layers
  double cell_tol = 1e-12;
  double fem_tol = 1e-10;
  int max_iterations = 200000;
  bool jacobi = true;
  bool refinement_check = false;
  double refinement_eps = 0.0;  ///< 0 = second sweep point (or first)
  std::string out_csv;
  std::string out_json;
  double slope_min = 0.45;
  double slope_max = 1.2;
  double refine_max_rel_change = 0.10;

  std::string profile_spec = "constant(1)";
  std::string source_spec = "cospoly([1])";

  /// Production-run checks: eps admissible and strictly decreasing,
  /// m, n >= 4, tolerances sane. Throws std::invalid_argument.
  void validate() const;
};

/// Accepts fractions ("1/16") and decimals ("0.0625").
double parse_eps_value(const std::string& token);

/// Whole-period admissibility: 1/(eps L) is a positive integer up to
/// rational rounding.
bool eps_is_admissible(double eps, double period);

StudyConfig parse_config_text(const std::string& text);
StudyConfig parse_config_file(const std::string& path);

struct ErrorRecord {
  double eps = 0.0;
  long dof = 0;
  double e0_l2 = 0.0;  ///< rescaled L2 of w_eps - w0
  double e0_h1 = 0.0;  ///< rescaled H1 of w_eps - w0
  double e1_h1 = 0.0;  ///< rescaled H1 of w_eps - W1
  double e2_h1 = 0.0;  ///< rescaled H1 of w_eps - W2
  double runtime_ms = 0.0;
  double w_h1 = 0.0;         ///< rescaled H1 of w_eps
  double f_l2 = 0.0;         ///< rescaled L2 of the source
  double boundary_l2 = 0.0;  ///< boundary trace norm of w_eps (unrescaled)
  double trace_ratio = 0.0;  ///< sqrt(eps) ||u||_bnd / ||u||_H1 (unrescaled)
  SolveReport solve;
};

struct CellDiagnostics {
  int m = 0;
  int n = 0;
  double r_flux = 0.0;
  double r_energy = 0.0;
  double r_gap = 0.0;
  double area = 0.0;
  double x_load_sum = 0.0;
  double theta_compat_residual = 0.0;
  SolveReport x_solve;
  SolveReport theta_solve;
};

struct RefinementCheck {
  bool ran = false;
  double eps = 0.0;
  int m_fine = 0;
  int n_fine = 0;
  double e2_coarse = 0.0;
  double e2_fine = 0.0;
  double rel_change = 0.0;
};

struct AcceptanceResult {
  std::string rule;
  bool pass = false;
  std::string detail;
};

struct StudyReport {
  StudyConfig config;
  CellDiagnostics cell;
  std::vector<ErrorRecord> records;
  std::optional<double> e1_slope;
  std::optional<double> e2_slope;
  std::string fit_error;  ///< non-empty when slopes are unavailable
  std::optional<double> e0_h1_ratio;  ///< e0_h1(min eps) / e0_h1(max eps)
  std::optional<double> e0_l2_ratio;
  RefinementCheck refinement;
  std::vector<AcceptanceResult> acceptance;
  bool all_pass = true;
};

/// Ordinary least squares slope of log(err) against log(eps); empty when
/// fewer than two usable points exist.
std::optional<double> fit_loglog_slope(std::span<const double> eps,
                                       std::span<const double> err);

/// Orchestrates one study: cell problems and w0 are solved once at
/// construction and shared by every eps case.
class StudyRunner {
 public:
  explicit StudyRunner(StudyConfig config);

  const StudyConfig& config() const { return config_; }
  const CellSolutions& cell() const { return cell_; }
  const HomogenizedSolution& w0() const { return w0_; }

  ErrorRecord run_case(double eps) const;
  StudyReport run_sweep_and_fit() const;

 private:
  StudyConfig config_;
  CellSolutions cell_;
  HomogenizedSolution w0_;
};

void emit_csv(const StudyReport& report, std::ostream& os);
void emit_json(const StudyReport& report, std::ostream& os);

/// format is "csv" or "json"; writes the file at `path`.
void emit_report(const StudyReport& report, const std::string& format,
                 const std::string& path);

}  // namespace oscilla
