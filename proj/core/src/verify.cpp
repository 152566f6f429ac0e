#include "vlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "vlab/commands.hpp"
#include "vlab/criteria.hpp"
#include "vlab/errors.hpp"
#include "vlab/expr.hpp"
#include "vlab/gallery.hpp"
#include "vlab/rng.hpp"

namespace vlab {

namespace {

class Checks {
 public:
  Checks(std::string module, std::vector<CheckResult>& out) : module_(std::move(module)), out_(out) {}

  void at_most(std::string name, double measured, double threshold) {
    push(std::move(name), measured, threshold, "<=", measured <= threshold);
  }
  void below(std::string name, double measured, double threshold) {
    push(std::move(name), measured, threshold, "<", measured < threshold);
  }
  void at_least(std::string name, double measured, double threshold) {
    push(std::move(name), measured, threshold, ">=", measured >= threshold);
  }

 private:
  void push(std::string name, double measured, double threshold, std::string relation, bool passed) {
    // NaN never passes.
    out_.push_back({module_, std::move(name), measured, threshold, std::move(relation),
                    passed && !std::isnan(measured)});
  }

  std::string module_;
  std::vector<CheckResult>& out_;
};

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::abs(a)); }

std::vector<HoloFun> gallery() {
  std::vector<HoloFun> out;
  for (const auto& id : gallery_ids()) out.push_back(gallery_symbol(id));
  return out;
}

// ---------------------------------------------------------------------------

void check_core(const RunConfig& cfg, std::vector<CheckResult>& out) {
  Checks c("core", out);
  const auto pts = seeded_points(cfg.seed, 100);

  double bad = 0;
  for (const auto& g : gallery())
    for (const auto& p : pts) {
      try {
        const cplx v = g(p);
        const cplx d = g.derivative(p);
        if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d))) ++bad;
      } catch (const std::exception&) {
        ++bad;
      }
    }
  c.at_most("gallery_evaluation_total", bad, 0);

  const HoloFun e = gallery_symbol("exp_iz");
  double worst = 0;
  for (const auto& p : region_points(cfg.region)) worst = std::max(worst, std::abs(std::abs(e(p)) - std::exp(-p.y())));
  c.at_most("exp_iz_modulus", worst, 1e-12);

  // Near y = 0 and |x| = 1e6, 1 - |cayley| drops below double resolution;
  // strictness is checked on a window where it is representable.
  SearchRegion moderate;
  moderate.y_min = 1e-3;
  moderate.y_max = 1e3;
  moderate.x_max = 1e3;
  const HoloFun cay = gallery_symbol("cayley");
  double top = 0;
  for (const auto& p : region_points(moderate)) top = std::max(top, std::abs(cay(p)));
  c.below("cayley_inside_unit_disc", top, 1.0);

  c.at_most("region_points_pure", region_points(cfg.region) == region_points(cfg.region) ? 0 : 1, 0);
}

void check_exprlang(const RunConfig& cfg, std::vector<CheckResult>& out) {
  Checks c("exprlang", out);
  const auto pts = seeded_points(cfg.seed, 100);

  double failures = 0;
  for (const auto& id : gallery_ids()) {
    const auto e = expr::parse(gallery_expression(id));
    if (!expr::structurally_equal(expr::parse(expr::print(e)), e)) ++failures;
  }
  c.at_most("print_parse_round_trip", failures, 0);

  double worst = 0;
  double nonfinite = 0;
  for (const auto& id : gallery_ids()) {
    const auto e = expr::parse(gallery_expression(id));
    const auto de = expr::differentiate(e);
    const HoloFun f = expr::to_holofun(e).without_derivative();
    for (const auto& p : pts) {
      try {
        const cplx v = expr::eval(e, p);
        const cplx d = expr::eval(de, p);
        if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d))) ++nonfinite;
        worst = std::max(worst, rel_diff(d, cauchy_derivative(f, p, 1, cfg.quad)));
      } catch (const EvalError&) {
        ++nonfinite;
      }
    }
  }
  c.at_most("symbolic_vs_cauchy_derivative", worst, 1e-8);
  c.at_most("eval_total_on_half_plane", nonfinite, 0);
}

void check_quad(const RunConfig& cfg, std::vector<CheckResult>& out) {
  Checks c("quad", out);
  const auto& q = cfg.quad;

  const HoloFun fi = extremal_fw(kImagUnit);
  std::vector<HoloFun::Fn> integrands;
  for (const char* id : {"cayley", "exp_iz"}) {
    const HoloFun g = gallery_symbol(id);
    integrands.push_back([fi, g](cplx z) { return fi.eval_fn()(z) * g.deriv_fn()(z); });
  }
  const std::vector<std::pair<Point, Point>> segments = {
      {kImagUnit, Point(1, 2)}, {Point(-2, 0.5), Point(3, 1)}, {Point(0, 0.1), Point(0, 3)}};

  double anti = 0;
  double additive = 0;
  for (const auto& fn : integrands)
    for (const auto& [a, b] : segments) {
      const cplx ab = segment_integral(fn, a, b, q).value;
      anti = std::max(anti, std::abs(ab + segment_integral(fn, b, a, q).value));
      const Point m((a.z() + b.z()) / 2.0);
      additive = std::max(additive,
                          std::abs(ab - segment_integral(fn, a, m, q).value - segment_integral(fn, m, b, q).value));
    }
  c.at_most("segment_antisymmetry", anti, q.abs_tol);
  c.at_most("segment_additivity", additive, 2 * q.abs_tol);

  const auto pts = seeded_points(cfg.seed, 100);
  QuadConfig narrow = q;
  narrow.circle_ratio = 0.25;
  QuadConfig wide = q;
  wide.circle_ratio = 0.5;
  double n0 = 0;
  double radius = 0;
  for (const auto& g : gallery())
    for (const auto& p : pts) {
      n0 = std::max(n0, std::abs(cauchy_derivative(g, p, 0, q) - g(p)));
      for (int n : {1, 2})
        radius = std::max(radius, rel_diff(cauchy_derivative(g, p, n, wide), cauchy_derivative(g, p, n, narrow)));
    }
  c.at_most("cauchy_n0_reproduces_f", n0, 1e-12);
  c.at_most("cauchy_radius_independence", radius, 1e-9);

  const std::vector<Point> ws = {Point(0, 1),  Point(0, 2),  Point(0, 0.5), Point(3, 1),    Point(-3, 0.1),
                                 Point(1, 4),  Point(-1, 0.25), Point(2.5, 0.3), Point(-0.5, 3)};
  const auto heights = default_hardy_heights();
  double lo = INFINITY;
  double hi = 0;
  for (const auto& w : ws) {
    const double v = hardy_norm(extremal_fw(w), heights, q, cfg.jobs).estimate.value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  c.at_most("hardy_norm_w_independent", (hi - lo) / hi, 0.01);

  double drop = 0;
  for (const auto& w : {Point(0, 1), Point(2, 0.3)}) {
    const HoloFun f = extremal_fw(w);
    std::vector<double> sub;
    for (std::size_t k = 0; k < heights.size(); k += 4) sub.push_back(heights[k]);
    drop = std::max(drop, hardy_norm(f, sub, q).estimate.value - hardy_norm(f, heights, q).estimate.value);
  }
  c.at_most("hardy_norm_monotone_in_heights", drop, 0);
}

void check_ops(const RunConfig& cfg, std::vector<CheckResult>& out) {
  Checks c("ops", out);
  const auto& q = cfg.quad;
  const auto pts = seeded_points(cfg.seed, 20);
  const HoloFun fi = extremal_fw(kImagUnit);
  const HoloFun f12 = extremal_fw(Point(1, 2));
  const HoloFun cay = gallery_symbol("cayley");
  const HoloFun eiz = gallery_symbol("exp_iz");

  for (OperatorKind kind : {OperatorKind::JG, OperatorKind::IG}) {
    double worst = 0;
    for (const auto& g : {cay, eiz}) {
      const HoloFun F = operator_function(OperatorSpec{kind, g, fi, kImagUnit}, q).without_derivative();
      for (const auto& p : pts) {
        const cplx exact = kind == OperatorKind::JG ? fi(p) * g.derivative(p) : fi.derivative(p) * g(p);
        worst = std::max(worst, rel_diff(exact, cauchy_derivative(F, p, 1, q)));
      }
    }
    c.at_most(std::string(to_string(kind)) + "_derivative_consistency", worst, 1e-7);
  }

  double path = 0;
  for (OperatorKind kind : {OperatorKind::JG, OperatorKind::IG})
    for (const auto& g : {cay, eiz})
      for (const auto& p : pts) {
        const cplx straight = apply(kind, g, f12, kImagUnit, p, q).value;
        const cplx legs = apply_along(kind, g, f12, two_leg_path(kImagUnit, p), q).value;
        path = std::max(path, rel_diff(straight, legs));
      }
  c.at_most("path_independence", path, 1e-9);

  double ftc = 0;
  for (const auto& g : {cay, eiz})
    for (const auto& f : {fi, f12}) ftc = std::max(ftc, ftc_identity_check(g, f, kImagUnit, pts, q));
  c.at_most("ftc_identity", ftc, 1e-7);

  // 50 (w, g) pairs: w seeded, g cycling through the gallery.
  const auto ws = seeded_points(cfg.seed + 1, 50);
  const auto syms = gallery();
  for (OperatorKind kind : {OperatorKind::JG, OperatorKind::IG}) {
    double worst = 0;
    for (std::size_t k = 0; k < ws.size(); ++k) {
      const HoloFun& g = syms[k % syms.size()];
      const double a = extremal_statistic(kind, g, ws[k], q);
      const double b = extremal_statistic_closed_form(kind, g, ws[k], q);
      worst = std::max(worst, b > 0 ? std::abs(a - b) / b : std::abs(a - b));
    }
    c.at_most(std::string(to_string(kind)) + "_extremal_identity", worst, 1e-12);
  }

  const cplx alpha(2.0, -1.0);
  const cplx beta(-0.5, 3.0);
  const HoloFun mix = HoloFun::linear_combination(alpha, fi, beta, f12);
  double lin = 0;
  for (OperatorKind kind : {OperatorKind::JG, OperatorKind::IG, OperatorKind::MG})
    for (const auto& p : pts) {
      const cplx whole = apply(kind, eiz, mix, kImagUnit, p, q).value;
      const cplx parts = alpha * apply(kind, eiz, fi, kImagUnit, p, q).value +
                         beta * apply(kind, eiz, f12, kImagUnit, p, q).value;
      lin = std::max(lin, rel_diff(whole, parts));
    }
  c.at_most("linearity", lin, 10 * q.rel_tol);

  double decrease = 0;
  SupOptions opts;
  opts.jobs = cfg.jobs;
  const SearchRegion fine = cfg.region.refined();
  for (const BlochTarget& t : {BlochTarget{gallery_symbol("inv")}, BlochTarget{cay}, BlochTarget{eiz},
                               BlochTarget{OperatorSpec{OperatorKind::JG, eiz, fi, kImagUnit}},
                               BlochTarget{OperatorSpec{OperatorKind::MG, cay, f12, kImagUnit}}}) {
    const double coarse = bloch_seminorm(t, cfg.region, q, opts).value;
    const double refined = bloch_seminorm(t, fine, q, opts).value;
    decrease = std::max(decrease, coarse > 0 ? (coarse - refined) / coarse : 0.0);
  }
  // Both searches polish the same optimum; allow rounding in the last bits.
  c.at_most("bloch_refinement_monotone", decrease, 8 * std::numeric_limits<double>::epsilon());
}

void check_criteria(const RunConfig& cfg, std::vector<CheckResult>& out) {
  Checks c("criteria", out);
  const auto& q = cfg.quad;
  SupOptions opts;
  opts.jobs = cfg.jobs;

  for (StatisticForm form : {StatisticForm::M1, StatisticForm::M2}) {
    double worst = 0;
    for (const auto& g : gallery())
      for (double shift : {1.7, -3.25}) {
        SearchRegion moved = cfg.region;
        moved.x_shift = cfg.region.x_shift - shift;
        const auto run = [&](const HoloFun& h, const SearchRegion& r) {
          return form == StatisticForm::M1 ? criterion_m1(h, r, q, opts).value : criterion_m2(h, r, q, opts).value;
        };
        const double a = run(g, cfg.region);
        const double b = run(g.translated(shift), moved);
        worst = std::max(worst, a == b ? 0.0 : std::abs(a - b) / std::max(std::abs(a), 1e-300));
      }
    c.at_most(std::string(to_string(form)) + "_translation_invariance", worst, 1e-10);
  }

  VanishingOptions vo;
  vo.radii = cfg.radii;
  double violations = 0;
  double monotone = 0;
  double probe_gap = 0;
  for (const auto& g : gallery()) {
    const VanishingReport v = boundary_vanishing_check(g, StatisticForm::M1, cfg.region, q, vo, cfg.jobs);
    for (std::size_t k = 1; k < v.sups.size(); ++k)
      if (v.radii[k] < 0.5 && v.sups[k] > v.sups[k - 1]) ++monotone;
    if (v.verdict != VanishingVerdict::Nonvanishing) continue;
    const CompactnessProbe p = compactness_probe(OperatorKind::JG, g, 0.0, cfg.probe_levels, cfg.region, q, cfg.jobs);
    if (p.verdict != ProbeVerdict::Obstructed) ++violations;
  }
  c.at_most("nonvanishing_implies_obstructed", violations, 0);
  c.at_most("vanishing_sups_nonincreasing", monotone, 0);

  for (const char* id : {"exp_iz", "exp_isqrtz", "cayley"}) {
    const HoloFun g = gallery_symbol(id);
    for (OperatorKind kind : {OperatorKind::JG, OperatorKind::IG})
      for (int n = 1; n <= cfg.probe_levels; ++n) {
        const Point w(0.0, std::ldexp(1.0, -n));
        const double a = extremal_statistic(kind, g, w, q);
        const double b = extremal_statistic_closed_form(kind, g, w, q);
        probe_gap = std::max(probe_gap, b > 0 ? std::abs(a - b) / b : std::abs(a - b));
      }
  }
  c.at_most("probe_statistic_matches_closed_form", probe_gap, 1e-12);

  double spread = 0;
  for (int n = 0; n <= 2; ++n) {
    double lo = INFINITY;
    double hi = 0;
    for (const auto& w : {Point(0, 1), Point(0, 4), Point(0, 0.25)}) {
      const double v = growth_constant_estimate(extremal_fw(w), n, cfg.region, q, cfg.jobs).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    spread = std::max(spread, (hi - lo) / hi);
  }
  c.at_most("growth_constant_scale_stable", spread, 0.02);
}

// Collects every number in a JSON tree, as printed.
void json_numbers(const Json& j, std::multiset<std::string>& out) {
  if (j.is_number()) out.insert(j.dump());
  else if (j.is_string()) out.insert(j.get<std::string>());
  else if (j.is_structured())
    for (const auto& v : j) json_numbers(v, out);
}

void check_cli(const RunConfig& cfg, std::vector<CheckResult>& out) {
  Checks c("cli", out);
  RunConfig small = cfg;
  small.region.y_grid = 21;
  small.region.x_grid = 33;

  std::vector<Report> reports;
  reports.push_back(cmd_gallery(small));
  reports.push_back(cmd_hardy_norm({{"fw:0,1", ""}}, small));
  reports.push_back(cmd_apply({"jg", {"exp_iz", ""}, {"fw:0,1", ""}, "0,1", "1,2", "straight"}, small));
  reports.push_back(cmd_criteria({{"exp_isqrtz", ""}, "m1", true}, small));
  for (auto& r : reports) r.wall_ms = 0;

  double round_trip = 0;
  double missing = 0;
  for (const auto& r : reports) {
    const std::string text = to_json_text(r);
    if (Json::parse(text).dump(2) + "\n" != text) ++round_trip;

    std::multiset<std::string> numbers;
    json_numbers(r.results, numbers);
    for (const auto& row : r.table.rows)
      for (const auto& cell : row)
        if (const double* d = std::get_if<double>(&cell); d && !numbers.contains(format_number(*d))) ++missing;
  }
  c.at_most("json_round_trip", round_trip, 0);
  c.at_most("csv_json_same_numbers", missing, 0);

  double wrong = 0;
  auto code = [](auto&& thrower) {
    try {
      thrower();
    } catch (...) {
      return exit_code_for(std::current_exception());
    }
    return -1;
  };
  if (code([] { throw ConfigError("x", "y"); }) != kExitConfigError) ++wrong;
  if (code([] { gallery_symbol("nope"); }) != kExitConfigError) ++wrong;
  if (code([] { expr::parse("z +"); }) != kExitConfigError) ++wrong;
  if (code([] { throw NonconvergenceError("x", 0.0, 1.0); }) != kExitNonconvergence) ++wrong;
  c.at_most("exit_code_contract", wrong, 0);

  RunConfig echo;
  apply_config(echo, to_json(cfg));
  c.at_most("config_round_trip", to_json(echo) == to_json(cfg) ? 0 : 1, 0);
}

using ModuleCheck = std::function<void(const RunConfig&, std::vector<CheckResult>&)>;

const std::vector<std::pair<std::string, ModuleCheck>>& registry() {
  static const std::vector<std::pair<std::string, ModuleCheck>> r = {
      {"core", check_core},  {"exprlang", check_exprlang}, {"quad", check_quad},
      {"ops", check_ops},    {"criteria", check_criteria}, {"cli", check_cli}};
  return r;
}

}  // namespace

const std::vector<std::string>& verify_modules() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<CheckResult> run_verify(const RunConfig& cfg, std::string_view filter) {
  cfg.validate();
  if (!filter.empty() && std::find(verify_modules().begin(), verify_modules().end(), filter) == verify_modules().end())
    throw ConfigError("filter", "unknown module '" + std::string(filter) + "'");
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : registry())
    if (filter.empty() || filter == name) fn(cfg, out);
  return out;
}

std::vector<Point> seeded_points(std::uint64_t seed, int n) {
  SampleRng rng(seed);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double x = rng.uniform(-4.0, 4.0);
    const double y = rng.log_uniform(0.05, 4.0);
    out.emplace_back(x, y);
  }
  return out;
}

}  // namespace vlab
