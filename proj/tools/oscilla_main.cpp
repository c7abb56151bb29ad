// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0
//
// oscilla: convergence-rate studies for the Neumann problem on thin
// domains with a highly oscillating boundary.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscilla/study.hpp"

namespace {

void apply_overrides(oscilla::StudyConfig& cfg, const std::string& eps_csv,
                     int m, int n, const std::string& out_csv,
                     const std::string& out_json) {
  if (!eps_csv.empty()) {
    cfg.eps.clear();
    std::string token;
    std::istringstream in(eps_csv);
    while (std::getline(in, token, ','))
      cfg.eps.push_back(oscilla::parse_eps_value(token));
  }
  if (m > 0) cfg.m = m;
  if (n > 0) cfg.n = n;
  if (!out_csv.empty()) cfg.out_csv = out_csv;
  if (!out_json.empty()) cfg.out_json = out_json;
  cfg.validate();
}

void print_cell_diagnostics(const oscilla::CellSolutions& cell, int m, int n) {
  std::printf("cell mesh: m=%d, n=%d, |Y*|=%.12g\n", m, n, cell.area);
  std::printf("r_flux   = %.15g\n", cell.r_flux);
  std::printf("r_energy = %.15g\n", cell.r_energy);
  std::printf("r_gap    = %.3e\n", cell.r_gap);
  std::printf("X load sum            = %.3e\n", cell.x_load_sum);
  std::printf("theta compat residual = %.3e\n", cell.theta_compat_residual);
  std::printf("X solve:     %d iterations, residual %.3e\n",
              cell.x_report.iterations, cell.x_report.relative_residual);
  std::printf("theta solve: %d iterations, residual %.3e\n",
              cell.theta_report.iterations, cell.theta_report.relative_residual);
}

int run_study(const oscilla::StudyConfig& cfg, bool check) {
  oscilla::StudyRunner runner(cfg);
  const oscilla::StudyReport report = runner.run_sweep_and_fit();

  print_cell_diagnostics(runner.cell(), cfg.m, cfg.n);
  std::printf("\n%12s %8s %12s %12s %12s %12s %10s\n", "eps", "dof", "e0_l2",
              "e0_h1", "e1_h1", "e2_h1", "time[ms]");
  for (const oscilla::ErrorRecord& r : report.records)
    std::printf("%12.6g %8ld %12.5e %12.5e %12.5e %12.5e %10.1f\n", r.eps,
                r.dof, r.e0_l2, r.e0_h1, r.e1_h1, r.e2_h1, r.runtime_ms);

  std::printf("\nfitted slopes (log err vs log eps):\n");
  if (report.e1_slope)
    std::printf("  e1_h1: %.4f\n", *report.e1_slope);
  if (report.e2_slope)
    std::printf("  e2_h1: %.4f\n", *report.e2_slope);
  if (!report.fit_error.empty())
    std::printf("  fit error: %s\n", report.fit_error.c_str());
  if (report.e0_h1_ratio)
    std::printf("  e0_h1 ratio (min/max eps): %.4f\n", *report.e0_h1_ratio);
  if (report.e0_l2_ratio)
    std::printf("  e0_l2 ratio (min/max eps): %.4f\n", *report.e0_l2_ratio);
  if (report.refinement.ran)
    std::printf("  refinement at eps=%.6g: e2 %.5e -> %.5e (change %.2f%%)\n",
                report.refinement.eps, report.refinement.e2_coarse,
                report.refinement.e2_fine,
                100.0 * report.refinement.rel_change);

  if (!cfg.out_csv.empty()) {
    oscilla::emit_report(report, "csv", cfg.out_csv);
    std::printf("wrote %s\n", cfg.out_csv.c_str());
  }
  if (!cfg.out_json.empty()) {
    oscilla::emit_report(report, "json", cfg.out_json);
    std::printf("wrote %s\n", cfg.out_json.c_str());
  }

  if (check) {
    std::printf("\nacceptance checks:\n");
    for (const oscilla::AcceptanceResult& a : report.acceptance)
      std::printf("  [%s] %-24s %s\n", a.pass ? "PASS" : "FAIL",
                  a.rule.c_str(), a.detail.c_str());
    return report.all_pass ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogenization rate study on thin domains with oscillating boundary"};
  app.require_subcommand(1);

  std::string config_path, eps_csv, out_csv, out_json, dump_path;
  int m = 0, n = 0;
  bool check = false, dump_cell = false;
  std::string dump_eps;

  CLI::App* study = app.add_subcommand("study", "run the eps sweep and rate fit");
  study->add_option("--config", config_path, "configuration file")->required();
  study->add_option("--eps", eps_csv, "comma-separated eps list (fractions or decimals)");
  study->add_option("--m", m, "cells per period");
  study->add_option("--n", n, "vertical layers");
  study->add_option("--out-csv", out_csv, "CSV output path");
  study->add_option("--out-json", out_json, "JSON output path");
  study->add_flag("--check", check, "evaluate acceptance rules; nonzero exit on failure");

  CLI::App* cellcmd = app.add_subcommand("cell", "solve the cell problems and print r diagnostics");
  cellcmd->add_option("--config", config_path, "configuration file")->required();

  CLI::App* dump = app.add_subcommand("dump-mesh", "write a mesh as plain text (debugging)");
  dump->add_option("--config", config_path, "configuration file")->required();
  dump->add_option("--eps", dump_eps, "thin-mesh eps (fraction or decimal)");
  dump->add_flag("--cell", dump_cell, "dump the cell mesh instead");
  dump->add_option("--out", dump_path, "output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    oscilla::StudyConfig cfg = oscilla::parse_config_file(config_path);

    if (study->parsed()) {
      apply_overrides(cfg, eps_csv, m, n, out_csv, out_json);
      if (cfg.eps.empty()) {
        std::fprintf(stderr, "error: no eps values configured\n");
        return 2;
      }
      return run_study(cfg, check);
    }

    if (cellcmd->parsed()) {
      const oscilla::CellSolutions cell = oscilla::solve_cell_problems(
          cfg.profile, cfg.m, cfg.n,
          oscilla::CgOptions{cfg.cell_tol, cfg.max_iterations, cfg.jacobi});
      print_cell_diagnostics(cell, cfg.m, cfg.n);
      return 0;
    }

    if (dump->parsed()) {
      oscilla::TriMesh mesh;
      if (dump_cell) {
        mesh = oscilla::build_cell_mesh(cfg.profile, cfg.m, cfg.n).mesh;
      } else {
        if (dump_eps.empty()) {
          std::fprintf(stderr, "error: dump-mesh needs --eps (or --cell)\n");
          return 2;
        }
        mesh = oscilla::build_thin_mesh(
            cfg.profile, oscilla::parse_eps_value(dump_eps), cfg.m, cfg.n);
      }
      if (dump_path.empty()) {
        oscilla::dump_mesh(mesh, std::cout);
      } else {
        std::ofstream out(dump_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + dump_path + "'");
        oscilla::dump_mesh(mesh, out);
        std::printf("wrote %s\n", dump_path.c_str());
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
