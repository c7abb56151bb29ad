// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace oscilla {

enum class ProfileFamily { Constant, Cosine, CosineSeries };

/// L-periodic, strictly positive, C^1 boundary profile
///   g(y) = a0 + sum_k a_k cos(2 pi k y / L).
/// Construction enforces a0 > sum |a_k| and spot-checks positivity on a
/// dense sample.
class PeriodicProfile {
 public:
  static PeriodicProfile constant(double a0, double period = 1.0);
  static PeriodicProfile cosine(double a0, std::vector<double> amplitudes,
                                double period);

  double operator()(double y) const;   ///< g(y)
  double derivative(double y) const;   ///< g'(y)
  double mean() const { return a0_; }  ///< closed-form average over a period
  double period() const { return period_; }
  double min_sampled() const { return min_sampled_; }
  ProfileFamily family() const { return family_; }
  double a0() const { return a0_; }
  const std::vector<double>& amplitudes() const { return amplitudes_; }

 private:
  PeriodicProfile(ProfileFamily family, double a0,
                  std::vector<double> amplitudes, double period);

  ProfileFamily family_;
  double a0_;
  std::vector<double> amplitudes_;
  double period_;
  double min_sampled_;
};

struct ProfileValues {
  double g;
  double dg;
  double mean;
};

ProfileValues eval_profile(const PeriodicProfile& profile, double y);

struct SourceValues {
  double f;
  double df;
  double d2f;
};

/// Source term on [0,1]. The primary family is the cosine polynomial
///   f(x) = sum_k c_k cos(k pi x),
/// whose derivatives are closed-form; a uniformly tabulated form is kept
/// for sources outside that family (derivatives by finite differences).
class SourceFunction {
 public:
  static SourceFunction cosine_poly(std::vector<double> coefficients);
  static SourceFunction tabulated(std::vector<double> samples);

  /// f, f', f'' at x in [0,1] (rejects points outside).
  SourceValues eval(double x) const;

  bool is_cosine() const { return cosine_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

 private:
  SourceFunction(bool cosine, std::vector<double> data);

  bool cosine_;
  std::vector<double> coefficients_;  // cosine coefficients or samples
};

struct CellPoint {
  double y;
  double z;
};

/// The coordinate map (x1, x2) -> (x1/eps mod L, x2/eps) onto the cell.
/// Rejects points outside the thin domain beyond floating-point slack.
CellPoint map_to_cell(const PeriodicProfile& profile, double eps, double x1,
                      double x2);

/// Same reduction without the membership check. Discrete pipelines evaluate
/// at chord points of the polygonal boundary, which may sit above the graph
/// of g; the polygon-aware check lives in locate_point.
CellPoint map_to_cell_unchecked(const PeriodicProfile& profile, double eps,
                                double x1, double x2);

}  // namespace oscilla
