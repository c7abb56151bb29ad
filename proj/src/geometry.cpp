// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include "oscilla/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oscilla {
namespace {

constexpr int kMaxTerms = 128;
constexpr int kPositivitySamples = 10000;

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string(what) + ": non-finite coefficient");
  }
}

}  // namespace

PeriodicProfile::PeriodicProfile(ProfileFamily family, double a0,
                                 std::vector<double> amplitudes, double period)
    : family_(family),
      a0_(a0),
      amplitudes_(std::move(amplitudes)),
      period_(period),
      min_sampled_(0.0) {
  if (!(period_ > 0.0) || !std::isfinite(period_))
    throw std::invalid_argument("PeriodicProfile: period must be positive");
  if (!std::isfinite(a0_))
    throw std::invalid_argument("PeriodicProfile: non-finite a0");
  require_finite(amplitudes_, "PeriodicProfile");
  if (static_cast<int>(amplitudes_.size()) > kMaxTerms)
    throw std::invalid_argument("PeriodicProfile: too many cosine terms");

  double amp_sum = 0.0;
  for (double a : amplitudes_) amp_sum += std::abs(a);
  if (!(a0_ > amp_sum))
    throw std::invalid_argument(
        "PeriodicProfile: a0 must exceed the sum of |amplitudes| (positivity)");

  min_sampled_ = (*this)(0.0);
  for (int i = 1; i < kPositivitySamples; ++i) {
    const double y = period_ * static_cast<double>(i) /
                     static_cast<double>(kPositivitySamples);
    min_sampled_ = std::min(min_sampled_, (*this)(y));
  }
  if (!(min_sampled_ > 0.0))
    throw std::invalid_argument("PeriodicProfile: sampled minimum not positive");
}

PeriodicProfile PeriodicProfile::constant(double a0, double period) {
  return PeriodicProfile(ProfileFamily::Constant, a0, {}, period);
}

PeriodicProfile PeriodicProfile::cosine(double a0,
                                        std::vector<double> amplitudes,
                                        double period) {
  const ProfileFamily family = amplitudes.empty() ? ProfileFamily::Constant
                               : amplitudes.size() == 1
                                   ? ProfileFamily::Cosine
                                   : ProfileFamily::CosineSeries;
  return PeriodicProfile(family, a0, std::move(amplitudes), period);
}

double PeriodicProfile::operator()(double y) const {
  double g = a0_;
  const double w = 2.0 * std::numbers::pi / period_;
  for (std::size_t k = 0; k < amplitudes_.size(); ++k)
    g += amplitudes_[k] * std::cos(static_cast<double>(k + 1) * w * y);
  return g;
}

double PeriodicProfile::derivative(double y) const {
  double dg = 0.0;
  const double w = 2.0 * std::numbers::pi / period_;
  for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
    const double kw = static_cast<double>(k + 1) * w;
    dg -= amplitudes_[k] * kw * std::sin(kw * y);
  }
  return dg;
}

ProfileValues eval_profile(const PeriodicProfile& profile, double y) {
  return {profile(y), profile.derivative(y), profile.mean()};
}

SourceFunction::SourceFunction(bool cosine, std::vector<double> data)
    : cosine_(cosine), coefficients_(std::move(data)) {
  require_finite(coefficients_, "SourceFunction");
  if (cosine_) {
    if (static_cast<int>(coefficients_.size()) > kMaxTerms)
      throw std::invalid_argument("SourceFunction: too many cosine terms");
  } else {
    if (coefficients_.size() < 3)
      throw std::invalid_argument("SourceFunction: need at least 3 samples");
  }
}

SourceFunction SourceFunction::cosine_poly(std::vector<double> coefficients) {
  return SourceFunction(true, std::move(coefficients));
}

SourceFunction SourceFunction::tabulated(std::vector<double> samples) {
  return SourceFunction(false, std::move(samples));
}

SourceValues SourceFunction::eval(double x) const {
  constexpr double slack = 1e-12;
  if (x < -slack || x > 1.0 + slack)
    throw std::domain_error("SourceFunction: x outside [0,1]");
  x = std::min(std::max(x, 0.0), 1.0);

  if (cosine_) {
    SourceValues v{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < coefficients_.size(); ++k) {
      const double kp = static_cast<double>(k) * std::numbers::pi;
      v.f += coefficients_[k] * std::cos(kp * x);
      v.df -= coefficients_[k] * kp * std::sin(kp * x);
      v.d2f -= coefficients_[k] * kp * kp * std::cos(kp * x);
    }
    return v;
  }

  const std::size_t n = coefficients_.size();
  const double h = 1.0 / static_cast<double>(n - 1);
  std::size_t i = std::min(static_cast<std::size_t>(x / h), n - 2);
  const double t = (x - static_cast<double>(i) * h) / h;
  SourceValues v;
  v.f = (1.0 - t) * coefficients_[i] + t * coefficients_[i + 1];
  v.df = (coefficients_[i + 1] - coefficients_[i]) / h;
  const std::size_t c = std::min(std::max<std::size_t>(i, 1), n - 2);
  v.d2f =
      (coefficients_[c + 1] - 2.0 * coefficients_[c] + coefficients_[c - 1]) /
      (h * h);
  return v;
}

CellPoint map_to_cell_unchecked(const PeriodicProfile& profile, double eps,
                                double x1, double x2) {
  if (!(eps > 0.0)) throw std::invalid_argument("map_to_cell: eps must be positive");
  const double period = profile.period();
  const double t = x1 / eps;
  double y = t - period * std::floor(t / period);
  if (y >= period) y -= period;  // single wrap correction at period boundaries
  if (y < 0.0) y = 0.0;
  return {y, x2 / eps};
}

CellPoint map_to_cell(const PeriodicProfile& profile, double eps, double x1,
                      double x2) {
  constexpr double slack = 1e-12;
  if (x1 < -slack || x1 > 1.0 + slack)
    throw std::domain_error("map_to_cell: x1 outside [0,1]");

  const CellPoint p = map_to_cell_unchecked(profile, eps, x1, x2);
  const double top = profile(p.y);
  if (p.z < -top * 1e-9 - slack || p.z > top * (1.0 + 1e-9) + slack)
    throw std::domain_error("map_to_cell: point outside the thin domain");
  return p;
}

}  // namespace oscilla
