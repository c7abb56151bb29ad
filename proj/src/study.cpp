// Copyright (c) 2026 oscilla contributors
// SPDX-License-Identifier: Apache-2.0

#include "oscilla/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace oscilla {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string str_printf(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": cannot parse number '" +
                                s + "'");
  }
}

int parse_int(const std::string& s, const char* what) {
  const double v = parse_double(s, what);
  const int i = static_cast<int>(std::llround(v));
  if (std::abs(v - i) > 0)
    throw std::invalid_argument(std::string(what) + ": expected integer, got '" +
                                s + "'");
  return i;
}

bool parse_bool(const std::string& s, const char* what) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument(std::string(what) + ": expected true/false, got '" +
                              s + "'");
}

std::vector<double> parse_bracket_list(const std::string& s, const char* what) {
  const std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw std::invalid_argument(std::string(what) + ": expected [..] list");
  const std::string inner = trim(t.substr(1, t.size() - 2));
  std::vector<double> out;
  if (inner.empty()) return out;
  for (const std::string& tok : split_top_level(inner, ','))
    out.push_back(parse_double(tok, what));
  return out;
}

struct CallSpec {
  std::string name;
  std::vector<std::string> args;
};

CallSpec parse_call(const std::string& s, const char* what) {
  const std::string t = trim(s);
  const auto open = t.find('(');
  if (open == std::string::npos || t.back() != ')')
    throw std::invalid_argument(std::string(what) + ": expected name(...), got '" +
                                t + "'");
  CallSpec c;
  c.name = trim(t.substr(0, open));
  const std::string inner = t.substr(open + 1, t.size() - open - 2);
  if (!trim(inner).empty()) c.args = split_top_level(inner, ',');
  return c;
}

PeriodicProfile parse_profile_spec(const std::string& s) {
  const CallSpec c = parse_call(s, "profile");
  if (c.name == "constant") {
    if (c.args.size() < 1 || c.args.size() > 2)
      throw std::invalid_argument("profile: constant(a0[, L])");
    const double a0 = parse_double(c.args[0], "profile");
    const double period = c.args.size() == 2 ? parse_double(c.args[1], "profile") : 1.0;
    return PeriodicProfile::constant(a0, period);
  }
  if (c.name == "cosine") {
    if (c.args.size() != 3)
      throw std::invalid_argument("profile: cosine(a0, [a1,...], L)");
    const double a0 = parse_double(c.args[0], "profile");
    std::vector<double> amps = parse_bracket_list(c.args[1], "profile");
    const double period = parse_double(c.args[2], "profile");
    return PeriodicProfile::cosine(a0, std::move(amps), period);
  }
  throw std::invalid_argument("profile: unknown family '" + c.name + "'");
}

SourceFunction parse_source_spec(const std::string& s) {
  const CallSpec c = parse_call(s, "source");
  if (c.name == "cospoly") {
    if (c.args.size() != 1)
      throw std::invalid_argument("source: cospoly([c0,...])");
    return SourceFunction::cosine_poly(parse_bracket_list(c.args[0], "source"));
  }
  throw std::invalid_argument("source: unknown family '" + c.name + "'");
}

ordered_json report_to_json(const SolveReport& r) {
  ordered_json j;
  j["iterations"] = r.iterations;
  j["relative_residual"] = r.relative_residual;
  j["converged"] = r.converged;
  j["compatibility_warning"] = r.compatibility_warning;
  return j;
}

}  // namespace

double parse_eps_value(const std::string& token) {
  const std::string t = trim(token);
  const auto slash = t.find('/');
  double v = 0.0;
  if (slash != std::string::npos) {
    const double num = parse_double(trim(t.substr(0, slash)), "eps");
    const double den = parse_double(trim(t.substr(slash + 1)), "eps");
    if (den == 0.0) throw std::invalid_argument("eps: division by zero");
    v = num / den;
  } else {
    v = parse_double(t, "eps");
  }
  if (!(v > 0.0)) throw std::invalid_argument("eps: must be positive");
  return v;
}

bool eps_is_admissible(double eps, double period) {
  if (!(eps > 0.0)) return false;
  const double p = 1.0 / (eps * period);
  const double rounded = std::round(p);
  return rounded >= 1.0 && std::abs(p - rounded) <= 1e-9 * p;
}

void StudyConfig::validate() const {
  if (m < 4 || n < 4)
    throw std::invalid_argument("config: m and n must be at least 4");
  if (!(cell_tol > 0.0 && cell_tol < 1.0) || !(fem_tol > 0.0 && fem_tol < 1.0))
    throw std::invalid_argument("config: tolerances must lie in (0,1)");
  if (max_iterations < 1)
    throw std::invalid_argument("config: max_iterations must be positive");
  if (!(slope_min < slope_max))
    throw std::invalid_argument("config: slope_min must be below slope_max");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!eps_is_admissible(eps[i], profile.period()))
      throw std::invalid_argument(
          str_printf("config: eps=%.17g is not a whole number of periods", eps[i]));
    if (i > 0 && !(eps[i] < eps[i - 1]))
      throw std::invalid_argument("config: eps list must be strictly decreasing");
  }
  if (refinement_check && refinement_eps != 0.0) {
    const auto hit = std::find_if(eps.begin(), eps.end(), [&](double e) {
      return std::abs(e - refinement_eps) <= 1e-12 * refinement_eps;
    });
    if (hit == eps.end())
      throw std::invalid_argument(
          "config: refinement_eps must be one of the sweep values");
  }
}

StudyConfig parse_config_text(const std::string& text) {
  StudyConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "profile") {
      cfg.profile = parse_profile_spec(value);
      cfg.profile_spec = value;
    } else if (key == "source") {
      cfg.source = parse_source_spec(value);
      cfg.source_spec = value;
    } else if (key == "eps") {
      cfg.eps.clear();
      for (const std::string& tok : split_top_level(value, ','))
        cfg.eps.push_back(parse_eps_value(tok));
    } else if (key == "m") {
      cfg.m = parse_int(value, "m");
    } else if (key == "n") {
      cfg.n = parse_int(value, "n");
    } else if (key == "cell_tol") {
      cfg.cell_tol = parse_double(value, "cell_tol");
    } else if (key == "fem_tol") {
      cfg.fem_tol = parse_double(value, "fem_tol");
    } else if (key == "max_iterations") {
      cfg.max_iterations = parse_int(value, "max_iterations");
    } else if (key == "jacobi") {
      cfg.jacobi = parse_bool(value, "jacobi");
    } else if (key == "refinement_check") {
      cfg.refinement_check = parse_bool(value, "refinement_check");
    } else if (key == "refinement_eps") {
      cfg.refinement_eps = parse_eps_value(value);
    } else if (key == "out_csv") {
      cfg.out_csv = value;
    } else if (key == "out_json") {
      cfg.out_json = value;
    } else if (key == "slope_min") {
      cfg.slope_min = parse_double(value, "slope_min");
    } else if (key == "slope_max") {
      cfg.slope_max = parse_double(value, "slope_max");
    } else if (key == "refine_max_rel_change") {
      cfg.refine_max_rel_change = parse_double(value, "refine_max_rel_change");
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

StudyConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::optional<double> fit_loglog_slope(std::span<const double> eps,
                                       std::span<const double> err) {
  if (eps.size() != err.size() || eps.size() < 2) return std::nullopt;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !(err[i] > 0.0)) return std::nullopt;
    xs.push_back(std::log(eps[i]));
    ys.push_back(std::log(err[i]));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

StudyRunner::StudyRunner(StudyConfig config)
    : config_(std::move(config)),
      cell_(solve_cell_problems(
          config_.profile, config_.m, config_.n,
          CgOptions{config_.cell_tol, config_.max_iterations, config_.jacobi})),
      w0_(solve_w0(config_.source, cell_.r)) {}

ErrorRecord StudyRunner::run_case(double eps) const {
  const auto t_start = std::chrono::steady_clock::now();

  const TriMesh thin = build_thin_mesh(config_.profile, eps, config_.m, config_.n);
  const TriMesh& cell_mesh = cell_.cell.mesh;
  assert_cell_alignment(thin, cell_mesh, eps);

  const CgOptions fem_opt{config_.fem_tol, config_.max_iterations, config_.jacobi};
  const FemSolution u = solve_neumann(thin, eps, config_.source, fem_opt);

  const TruncationField w1(1, cell_, w0_, config_.profile, eps);
  const TruncationField w2(2, cell_, w0_, config_.profile, eps);

  std::vector<int> tri_map(static_cast<std::size_t>(thin.tri_count()));
  std::vector<Vec2> u_grad(static_cast<std::size_t>(thin.tri_count()));
  for (int t = 0; t < thin.tri_count(); ++t) {
    tri_map[static_cast<std::size_t>(t)] =
        cell_triangle_for_thin_triangle(thin, cell_mesh, t);
    u_grad[static_cast<std::size_t>(t)] = u.gradient(t);
  }

  const auto e0_field = [&](int t, const Vec2& p, double& v, Vec2& g) {
    const W0Derivatives w = w0_.eval(p.x);
    v = u.value_in_tri(t, p) - w.w0;
    const Vec2 ug = u_grad[static_cast<std::size_t>(t)];
    g = {ug.x - w.d1, ug.y};
  };
  const auto truncation_error_field = [&](const TruncationField& trunc) {
    return [&](int t, const Vec2& p, double& v, Vec2& g) {
      const int ct = tri_map[static_cast<std::size_t>(t)];
      v = u.value_in_tri(t, p) - trunc.value_in_tri(ct, p.x, p.y);
      const Vec2 ug = u_grad[static_cast<std::size_t>(t)];
      const Vec2 tg = trunc.gradient_in_tri(ct, p.x, p.y);
      g = {ug.x - tg.x, ug.y - tg.y};
    };
  };
  const auto u_field = [&](int t, const Vec2& p, double& v, Vec2& g) {
    v = u.value_in_tri(t, p);
    g = u_grad[static_cast<std::size_t>(t)];
  };
  const auto f_field = [&](int /*t*/, const Vec2& p, double& v, Vec2& g) {
    v = config_.source.eval(p.x).f;
    g = {0.0, 0.0};
  };

  ErrorRecord rec;
  rec.eps = eps;
  rec.dof = thin.node_count();
  rec.solve = u.report;

  const Norms e0 = rescaled_norms(thin, eps, e0_field);
  rec.e0_l2 = e0.l2;
  rec.e0_h1 = e0.h1;
  rec.e1_h1 = rescaled_norms(thin, eps, truncation_error_field(w1)).h1;
  rec.e2_h1 = rescaled_norms(thin, eps, truncation_error_field(w2)).h1;
  rec.w_h1 = rescaled_norms(thin, eps, u_field).h1;
  rec.f_l2 = rescaled_norms(thin, eps, f_field).l2;
  rec.boundary_l2 = boundary_l2_norm(thin, u.values);
  const double u_h1_unrescaled = std::sqrt(eps) * rec.w_h1;
  rec.trace_ratio = u_h1_unrescaled > 0.0
                        ? std::sqrt(eps) * rec.boundary_l2 / u_h1_unrescaled
                        : 0.0;

  for (double v : {rec.e0_l2, rec.e0_h1, rec.e1_h1, rec.e2_h1, rec.w_h1,
                   rec.f_l2, rec.boundary_l2}) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::runtime_error(
          str_printf("run_case(eps=%.17g): non-finite error value", eps));
  }

  rec.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
  return rec;
}

StudyReport StudyRunner::run_sweep_and_fit() const {
  if (config_.eps.empty())
    throw std::invalid_argument("run_sweep_and_fit: empty eps list");

  StudyReport report;
  report.config = config_;
  report.cell = CellDiagnostics{config_.m,
                                config_.n,
                                cell_.r_flux,
                                cell_.r_energy,
                                cell_.r_gap,
                                cell_.area,
                                cell_.x_load_sum,
                                cell_.theta_compat_residual,
                                cell_.x_report,
                                cell_.theta_report};

  for (double eps : config_.eps) {
    try {
      report.records.push_back(run_case(eps));
    } catch (const std::exception& e) {
      throw std::runtime_error(str_printf("case eps=%.17g failed: ", eps) +
                               e.what());
    }
  }

  std::vector<double> eps_list, e1_list, e2_list;
  for (const ErrorRecord& r : report.records) {
    eps_list.push_back(r.eps);
    e1_list.push_back(r.e1_h1);
    e2_list.push_back(r.e2_h1);
  }
  report.e1_slope = fit_loglog_slope(eps_list, e1_list);
  report.e2_slope = fit_loglog_slope(eps_list, e2_list);
  if (!report.e1_slope || !report.e2_slope)
    report.fit_error = "slope fit needs at least 2 records with positive errors";

  if (report.records.size() >= 2) {
    const ErrorRecord& first = report.records.front();  // largest eps
    const ErrorRecord& last = report.records.back();    // smallest eps
    if (first.e0_h1 > 0.0) report.e0_h1_ratio = last.e0_h1 / first.e0_h1;
    if (first.e0_l2 > 0.0) report.e0_l2_ratio = last.e0_l2 / first.e0_l2;
  }

  if (config_.refinement_check) {
    double reps = config_.refinement_eps;
    if (reps == 0.0)
      reps = config_.eps.size() >= 2 ? config_.eps[1] : config_.eps[0];
    const auto coarse =
        std::find_if(report.records.begin(), report.records.end(),
                     [&](const ErrorRecord& r) {
                       return std::abs(r.eps - reps) <= 1e-12 * reps;
                     });
    if (coarse == report.records.end())
      throw std::runtime_error("refinement check: eps not part of the sweep");

    StudyConfig fine_cfg = config_;
    fine_cfg.m *= 2;
    fine_cfg.n *= 2;
    fine_cfg.refinement_check = false;
    const StudyRunner fine(fine_cfg);
    const ErrorRecord fine_rec = fine.run_case(reps);

    report.refinement.ran = true;
    report.refinement.eps = reps;
    report.refinement.m_fine = fine_cfg.m;
    report.refinement.n_fine = fine_cfg.n;
    report.refinement.e2_coarse = coarse->e2_h1;
    report.refinement.e2_fine = fine_rec.e2_h1;
    report.refinement.rel_change =
        coarse->e2_h1 > 0.0
            ? std::abs(fine_rec.e2_h1 - coarse->e2_h1) / coarse->e2_h1
            : 0.0;
  }

  // acceptance rules
  auto add_rule = [&report](const std::string& rule, bool pass,
                            std::string detail) {
    report.acceptance.push_back({rule, pass, std::move(detail)});
    report.all_pass = report.all_pass && pass;
  };

  if (report.e2_slope) {
    const double s = *report.e2_slope;
    add_rule("e2_rate_in_range",
             s >= config_.slope_min && s <= config_.slope_max,
             str_printf("slope=%.4f, window=[%.2f, %.2f]", s, config_.slope_min,
                        config_.slope_max));
  } else {
    add_rule("e2_rate_in_range", false, report.fit_error);
  }
  if (report.e1_slope) {
    const double s = *report.e1_slope;
    add_rule("e1_rate_in_range",
             s >= config_.slope_min && s <= config_.slope_max,
             str_printf("slope=%.4f, window=[%.2f, %.2f]", s, config_.slope_min,
                        config_.slope_max));
  } else {
    add_rule("e1_rate_in_range", false, report.fit_error);
  }

  bool e1_decreasing = report.records.size() >= 2;
  for (std::size_t i = 1; i < report.records.size(); ++i)
    e1_decreasing =
        e1_decreasing && report.records[i].e1_h1 < report.records[i - 1].e1_h1;
  add_rule("e1_strictly_decreasing", e1_decreasing,
           str_printf("%zu records", report.records.size()));

  if (report.e0_h1_ratio)
    add_rule("e0_h1_no_decay", *report.e0_h1_ratio >= 0.5,
             str_printf("ratio=%.4f (>= 0.5 required)", *report.e0_h1_ratio));
  if (report.e0_l2_ratio)
    add_rule("e0_l2_decays", *report.e0_l2_ratio <= 0.25,
             str_printf("ratio=%.4f (<= 0.25 required)", *report.e0_l2_ratio));

  add_rule("r_positive_bounded", cell_.r > 0.0 && cell_.r <= 1.0 + 1e-10,
           str_printf("r=%.12f", cell_.r));
  add_rule("r_cross_check", cell_.r_gap <= 1e-9,
           str_printf("|r_flux - r_energy|=%.3e", cell_.r_gap));
  add_rule("x_load_compatibility", std::abs(cell_.x_load_sum) <= 1e-12,
           str_printf("|sum|=%.3e", std::abs(cell_.x_load_sum)));
  add_rule("theta_compatibility",
           std::abs(cell_.theta_compat_residual) <= 1e-10 * cell_.area,
           str_printf("|residual|=%.3e, area=%.6f",
                      std::abs(cell_.theta_compat_residual), cell_.area));

  bool a_priori = true;
  for (const ErrorRecord& r : report.records)
    a_priori = a_priori && r.w_h1 <= r.f_l2 * (1.0 + 1e-10);
  add_rule("a_priori_bound", a_priori, "|||w|||_H1 <= |||f|||_L2 per case");

  if (report.records.size() >= 2) {
    const double first = report.records.front().trace_ratio;
    const double last = report.records.back().trace_ratio;
    add_rule("trace_ratio_bounded", last <= 2.0 * first,
             str_printf("first=%.4f, last=%.4f", first, last));
  }

  if (report.refinement.ran)
    add_rule("mesh_independence",
             report.refinement.rel_change < config_.refine_max_rel_change,
             str_printf("rel_change=%.4f (< %.2f required)",
                        report.refinement.rel_change,
                        config_.refine_max_rel_change));

  return report;
}

void emit_csv(const StudyReport& report, std::ostream& os) {
  os << "eps,dof,e0_l2,e0_h1,e1_h1,e2_h1,runtime_ms\n";
  for (const ErrorRecord& r : report.records) {
    os << str_printf("%.17g,%ld,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.eps, r.dof,
                     r.e0_l2, r.e0_h1, r.e1_h1, r.e2_h1, r.runtime_ms);
  }
}

void emit_json(const StudyReport& report, std::ostream& os) {
  ordered_json j;
  j["config"] = {{"profile", report.config.profile_spec},
                 {"source", report.config.source_spec},
                 {"eps", report.config.eps},
                 {"m", report.config.m},
                 {"n", report.config.n},
                 {"cell_tol", report.config.cell_tol},
                 {"fem_tol", report.config.fem_tol},
                 {"max_iterations", report.config.max_iterations},
                 {"jacobi", report.config.jacobi},
                 {"refinement_check", report.config.refinement_check},
                 {"slope_min", report.config.slope_min},
                 {"slope_max", report.config.slope_max},
                 {"refine_max_rel_change", report.config.refine_max_rel_change}};
  j["cell"] = {{"m", report.cell.m},
               {"n", report.cell.n},
               {"r_flux", report.cell.r_flux},
               {"r_energy", report.cell.r_energy},
               {"r_gap", report.cell.r_gap},
               {"area", report.cell.area},
               {"x_load_sum", report.cell.x_load_sum},
               {"theta_compat_residual", report.cell.theta_compat_residual},
               {"x_solve", report_to_json(report.cell.x_solve)},
               {"theta_solve", report_to_json(report.cell.theta_solve)}};

  j["records"] = ordered_json::array();
  for (const ErrorRecord& r : report.records) {
    ordered_json rj;
    rj["eps"] = r.eps;
    rj["dof"] = r.dof;
    rj["e0_l2"] = r.e0_l2;
    rj["e0_h1"] = r.e0_h1;
    rj["e1_h1"] = r.e1_h1;
    rj["e2_h1"] = r.e2_h1;
    rj["runtime_ms"] = r.runtime_ms;
    rj["w_h1"] = r.w_h1;
    rj["f_l2"] = r.f_l2;
    rj["boundary_l2"] = r.boundary_l2;
    rj["trace_ratio"] = r.trace_ratio;
    rj["solve"] = report_to_json(r.solve);
    j["records"].push_back(rj);
  }

  ordered_json fit;
  fit["e1_slope"] = report.e1_slope ? ordered_json(*report.e1_slope)
                                    : ordered_json(nullptr);
  fit["e2_slope"] = report.e2_slope ? ordered_json(*report.e2_slope)
                                    : ordered_json(nullptr);
  if (!report.fit_error.empty()) fit["error"] = report.fit_error;
  j["fit"] = fit;

  j["e0_summary"] = {
      {"h1_ratio", report.e0_h1_ratio ? ordered_json(*report.e0_h1_ratio)
                                      : ordered_json(nullptr)},
      {"l2_ratio", report.e0_l2_ratio ? ordered_json(*report.e0_l2_ratio)
                                      : ordered_json(nullptr)}};

  ordered_json ref;
  ref["ran"] = report.refinement.ran;
  if (report.refinement.ran) {
    ref["eps"] = report.refinement.eps;
    ref["m_fine"] = report.refinement.m_fine;
    ref["n_fine"] = report.refinement.n_fine;
    ref["e2_coarse"] = report.refinement.e2_coarse;
    ref["e2_fine"] = report.refinement.e2_fine;
    ref["rel_change"] = report.refinement.rel_change;
  }
  j["refinement"] = ref;

  j["acceptance"] = ordered_json::array();
  for (const AcceptanceResult& a : report.acceptance)
    j["acceptance"].push_back(
        {{"rule", a.rule}, {"pass", a.pass}, {"detail", a.detail}});
  j["all_pass"] = report.all_pass;

  os << j.dump(2) << "\n";
}

void emit_report(const StudyReport& report, const std::string& format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot open '" + path + "'");
  if (format == "csv") {
    emit_csv(report, out);
  } else if (format == "json") {
    emit_json(report, out);
  } else {
    throw std::invalid_argument("emit_report: format must be csv or json");
  }
  out.flush();
  if (!out) throw std::runtime_error("emit_report: write failed for '" + path + "'");
}

}  // namespace oscilla
