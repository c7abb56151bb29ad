// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oscilla/cell.hpp"

using oscilla::CgOptions;
using oscilla::PeriodicProfile;

namespace {

const CgOptions kCellOpts{1e-12, 50000, true};

double node_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("constant profile gives X = 0, theta = 0 and r = 1 exactly") {
  const auto g = PeriodicProfile::constant(1.5);
  const auto cs = oscilla::solve_cell_problems(g, 8, 4, kCellOpts);

  for (double v : cs.x_field) CHECK(v == 0.0);
  for (double v : cs.theta_field) CHECK(v == 0.0);
  CHECK(cs.r_flux == 1.0);
  CHECK(std::abs(cs.r_energy - 1.0) < 1e-12);
  CHECK(cs.r_gap < 1e-12);
  CHECK(cs.x_load_sum == 0.0);
  CHECK(std::abs(cs.theta_compat_residual) < 1e-12 * cs.area);
}

TEST_CASE("oscillating profile: r in (0,1], cross-check gap tiny, means zero") {
  const auto g = PeriodicProfile::cosine(2.0, {1.0}, 1.0);
  const auto cs = oscilla::solve_cell_problems(g, 16, 16, kCellOpts);

  CHECK(cs.r > 0.0);
  CHECK(cs.r <= 1.0 + 1e-10);
  CHECK(cs.r_gap <= 1e-9);
  CHECK(std::abs(node_mean(cs.x_field)) < 1e-12);
  CHECK(std::abs(node_mean(cs.theta_field)) < 1e-12);
  CHECK(std::abs(cs.x_load_sum) < 1e-12);
  CHECK(std::abs(cs.theta_compat_residual) < 1e-12 * cs.area);
  CHECK(cs.x_report.converged);
  CHECK(cs.theta_report.converged);
  CHECK_FALSE(cs.x_report.compatibility_warning);
}

TEST_CASE("X satisfies the discrete Galerkin identity") {
  const auto g = PeriodicProfile::cosine(2.0, {1.0}, 1.0);
  const auto cell = oscilla::build_cell_mesh(g, 16, 8);
  const auto xs = oscilla::solve_x(cell, kCellOpts);

  const auto sys = oscilla::assemble_system(cell.mesh);
  const auto load = oscilla::assemble_upper_boundary_load(cell.mesh);

  const double energy = sys.stiffness.quadratic_form(xs.x_field);
  double work = 0.0;
  for (std::size_t i = 0; i < load.size(); ++i) work += load[i] * xs.x_field[i];
  CHECK(energy == doctest::Approx(work).epsilon(1e-8));
}

TEST_CASE("periodic expansion makes master and slave values identical") {
  const auto g = PeriodicProfile::cosine(2.0, {0.6, 0.2}, 1.0);
  const auto cs = oscilla::solve_cell_problems(g, 12, 6, kCellOpts);
  for (const auto& [master, slave] : cs.cell.pairing.pairs) {
    CHECK(cs.x_field[static_cast<std::size_t>(master)] ==
          cs.x_field[static_cast<std::size_t>(slave)]);
    CHECK(cs.theta_field[static_cast<std::size_t>(master)] ==
          cs.theta_field[static_cast<std::size_t>(slave)]);
  }
}

TEST_CASE("r_flux is Cauchy in the mesh with observed order at least one") {
  const auto g = PeriodicProfile::cosine(2.0, {1.0}, 1.0);
  double r16 = 0.0, r32 = 0.0, r64 = 0.0;
  for (const int m : {16, 32, 64}) {
    const auto cs = oscilla::solve_cell_problems(g, m, m, kCellOpts);
    (m == 16 ? r16 : m == 32 ? r32 : r64) = cs.r_flux;
  }
  const double d1 = std::abs(r16 - r32);
  const double d2 = std::abs(r32 - r64);
  CHECK(d2 < d1);
  CHECK(d1 / d2 >= 1.8);  // order >= 1 gives a ratio of at least 2
}

TEST_CASE("solve_theta rejects an inconsistent r") {
  const auto g = PeriodicProfile::cosine(2.0, {1.0}, 1.0);
  const auto cell = oscilla::build_cell_mesh(g, 8, 4);
  const auto xs = oscilla::solve_x(cell, kCellOpts);
  CHECK_THROWS_AS(oscilla::solve_theta(cell, xs.x_field, 0.123, kCellOpts),
                  std::runtime_error);
}
