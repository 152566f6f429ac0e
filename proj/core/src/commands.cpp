#include "vlab/commands.hpp"

#include <chrono>
#include <cmath>

#include "vlab/errors.hpp"
#include "vlab/expr.hpp"
#include "vlab/gallery.hpp"
#include "vlab/verify.hpp"

namespace vlab {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Report start_report(std::string command, const RunConfig& cfg) {
  Report r;
  r.command = std::move(command);
  r.config = to_json(cfg);
  return r;
}

Point parse_point(const std::string& text, const std::string& field) {
  const cplx z = parse_complex(text, field);
  if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ConfigError(field, "must lie in the upper half-plane, got '" + text + "'");
  return Point(z);
}

OperatorKind parse_op(const std::string& text, bool allow_mg) {
  const OperatorKind kind = parse_operator_kind(text);
  if (!allow_mg && kind == OperatorKind::MG) throw ConfigError("op", "expected jg or ig");
  return kind;
}

void warn_sup(Report& r, const std::string& what, const SupEstimate& s) {
  if (s.divergent) r.warnings.push_back(what + ": divergent (sup still growing at the largest window)");
  if (s.at_boundary) r.warnings.push_back(what + ": argmax on the search window boundary");
}

void add_sup_rows(Table& t, const std::string& record, const SupEstimate& s) {
  for (std::size_t k = 0; k < s.levels.size(); ++k) {
    const auto& l = s.levels[k];
    t.rows.push_back({record, static_cast<long long>(k), l.scale, l.sup, l.argmax.x(), l.argmax.y()});
  }
}

const std::vector<std::string> kSupColumns = {"record", "level", "scale", "sup", "argmax_x", "argmax_y"};

}  // namespace

int exit_code_for(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError&) {
    return kExitConfigError;
  } catch (const expr::SyntaxError&) {
    return kExitConfigError;
  } catch (const EvalError&) {
    return kExitConfigError;
  } catch (const NonconvergenceError&) {
    return kExitNonconvergence;
  } catch (...) {
    return kExitVerifyFailed;
  }
}

HoloFun resolve_function(const FunctionArg& arg, const std::string& field) {
  if (arg.id.empty() == arg.expr.empty())
    throw ConfigError(field, "give exactly one of --" + field + " and --" + field + "-expr");
  if (!arg.expr.empty()) return expr::to_holofun(expr::parse(arg.expr), arg.expr);
  if (arg.id.rfind("fw:", 0) == 0) return extremal_fw(parse_point(arg.id.substr(3), field));
  return gallery_symbol(arg.id);
}

Json describe(const FunctionArg& arg) {
  if (!arg.expr.empty()) return Json{{"expr", arg.expr}};
  return Json{{"id", arg.id}};
}

Report cmd_hardy_norm(const HardyArgs& args, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report r = start_report("hardy-norm", cfg);
  const HoloFun f = resolve_function(args.function, "function");
  r.inputs["function"] = describe(args.function);

  const auto heights = default_hardy_heights();
  const HardyNorm h = hardy_norm(f, heights, cfg.quad, cfg.jobs);
  r.results = to_json(h);
  if (h.truncated) r.warnings.push_back("hardy-norm: line integral truncated at the window cap");
  if (h.estimate.at_boundary) r.warnings.push_back("hardy-norm: sup attained at the lowest height");

  r.table.columns = {"height", "l2", "norm", "error", "extent", "truncated"};
  for (const auto& l : h.lines)
    r.table.rows.push_back({l.height, l.value, std::sqrt(std::max(l.value, 0.0)), l.error, l.extent, l.truncated});
  r.wall_ms = elapsed_ms(t0);
  return r;
}

Report cmd_criteria(const CriteriaArgs& args, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report r = start_report("criteria", cfg);
  const HoloFun g = resolve_function(args.symbol, "symbol");
  std::vector<StatisticForm> forms;
  if (args.which == "both") forms = {StatisticForm::M1, StatisticForm::M2};
  else forms = {parse_statistic_form(args.which)};
  r.inputs["symbol"] = describe(args.symbol);
  r.inputs["which"] = args.which;
  r.inputs["vanishing"] = args.vanishing;

  SupOptions opts;
  opts.jobs = cfg.jobs;
  r.table.columns = {"record", "form", "index", "scale", "sup", "argmax_x", "argmax_y"};
  Json vanishing = Json::object();
  for (StatisticForm form : forms) {
    const std::string name(to_string(form));
    const SupEstimate s = form == StatisticForm::M1 ? criterion_m1(g, cfg.region, cfg.quad, opts)
                                                    : criterion_m2(g, cfg.region, cfg.quad, opts);
    r.results[name] = to_json(s);
    warn_sup(r, name, s);
    for (std::size_t k = 0; k < s.levels.size(); ++k) {
      const auto& l = s.levels[k];
      r.table.rows.push_back(
          {std::string("level"), name, static_cast<long long>(k), l.scale, l.sup, l.argmax.x(), l.argmax.y()});
    }
    if (args.vanishing) {
      VanishingOptions vo;
      vo.radii = cfg.radii;
      const VanishingReport v = boundary_vanishing_check(g, form, cfg.region, cfg.quad, vo, cfg.jobs);
      vanishing[name] = to_json(v);
      if (v.divergent) r.warnings.push_back(name + " vanishing: statistic unbounded near the boundary");
      for (std::size_t k = 0; k < v.radii.size(); ++k)
        r.table.rows.push_back({std::string("radius"), name, static_cast<long long>(k), v.radii[k], v.sups[k],
                                v.argmax[k].x(), v.argmax[k].y()});
    }
  }
  if (args.vanishing) r.results["vanishing"] = vanishing;
  r.wall_ms = elapsed_ms(t0);
  return r;
}

Report cmd_apply(const ApplyArgs& args, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report r = start_report("apply", cfg);
  const OperatorKind kind = parse_op(args.op, true);
  const HoloFun g = resolve_function(args.symbol, "symbol");
  const HoloFun f = resolve_function(args.function, "function");
  if (args.z.empty()) throw ConfigError("z", "required");
  const Point z0 = parse_point(args.z0, "z0");
  const Point z = parse_point(args.z, "z");
  if (args.path != "straight" && args.path != "two-leg")
    throw ConfigError("path", "expected straight or two-leg, got '" + args.path + "'");
  r.inputs["op"] = std::string(to_string(kind));
  r.inputs["symbol"] = describe(args.symbol);
  r.inputs["function"] = describe(args.function);
  r.inputs["z0"] = to_json(z0);
  r.inputs["z"] = to_json(z);
  r.inputs["path"] = args.path;

  const OperatorResult res = args.path == "straight" ? apply(kind, g, f, z0, z, cfg.quad)
                                                     : apply_along(kind, g, f, two_leg_path(z0, z), cfg.quad);
  r.results = to_json(res);
  r.table.columns = {"op", "re", "im", "abs", "quad_error"};
  r.table.rows.push_back({std::string(to_string(kind)), res.value.real(), res.value.imag(), std::abs(res.value),
                          res.quad_error});
  r.wall_ms = elapsed_ms(t0);
  return r;
}

Report cmd_certify(const CertifyArgs& args, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report r = start_report("certify", cfg);
  const OperatorKind kind = parse_op(args.op, false);
  const HoloFun g = resolve_function(args.symbol, "symbol");
  r.inputs["op"] = std::string(to_string(kind));
  r.inputs["symbol"] = describe(args.symbol);

  const BoundednessCertificate c = boundedness_certificate(kind, g, cfg.region, cfg.quad, cfg.jobs);
  r.results = to_json(c);
  warn_sup(r, "criterion", c.criterion);
  if (c.sup_abs_g.divergent) r.warnings.push_back("symbol is not bounded on the search window");
  if (c.bloch_g.divergent) r.warnings.push_back("symbol has divergent Bloch seminorm on the search window");
  r.table.columns = kSupColumns;
  add_sup_rows(r.table, "criterion", c.criterion);
  add_sup_rows(r.table, "sup_abs_g", c.sup_abs_g);
  add_sup_rows(r.table, "bloch_g", c.bloch_g);
  r.wall_ms = elapsed_ms(t0);
  return r;
}

Report cmd_probe(const ProbeArgs& args, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report r = start_report("probe", cfg);
  const OperatorKind kind = parse_op(args.op, false);
  const HoloFun g = resolve_function(args.symbol, "symbol");
  if (!std::isfinite(args.x_anchor)) throw ConfigError("x-anchor", "must be finite");
  r.inputs["op"] = std::string(to_string(kind));
  r.inputs["symbol"] = describe(args.symbol);
  r.inputs["x_anchor"] = number(args.x_anchor);
  r.inputs["levels"] = cfg.probe_levels;

  const CompactnessProbe p = compactness_probe(kind, g, args.x_anchor, cfg.probe_levels, cfg.region, cfg.quad,
                                               cfg.jobs);
  r.results = to_json(p);
  r.table.columns = {"n", "w_x", "w_y", "lower_stat", "lower_stat_numeric", "full_norm", "nonconverged"};
  for (std::size_t n = 0; n < p.levels.size(); ++n) {
    const auto& l = p.levels[n];
    if (l.nonconverged) r.warnings.push_back("probe level " + std::to_string(n + 1) + ": quadrature nonconvergence");
    r.table.rows.push_back({static_cast<long long>(n + 1), l.w.x(), l.w.y(), l.lower_stat, l.lower_stat_numeric,
                            l.full_norm, l.nonconverged});
  }
  r.wall_ms = elapsed_ms(t0);
  return r;
}

Report cmd_bloch(const BlochArgs& args, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report r = start_report("bloch", cfg);
  const HoloFun g = resolve_function(args.symbol, "symbol");
  r.inputs["symbol"] = describe(args.symbol);
  BlochTarget target = g;
  if (!args.op.empty()) {
    const OperatorKind kind = parse_op(args.op, true);
    const Point z0 = parse_point(args.z0, "z0");
    target = OperatorSpec{kind, g, resolve_function(args.function, "function"), z0};
    r.inputs["op"] = std::string(to_string(kind));
    r.inputs["function"] = describe(args.function);
    r.inputs["z0"] = to_json(z0);
  }
  SupOptions opts;
  opts.jobs = cfg.jobs;
  const BlochNorm b = bloch_norm(target, cfg.region, cfg.quad, opts);
  r.results = to_json(b);
  warn_sup(r, "bloch", b.seminorm);
  r.table.columns = kSupColumns;
  add_sup_rows(r.table, "seminorm", b.seminorm);
  r.wall_ms = elapsed_ms(t0);
  return r;
}

Report cmd_strip_decay(const StripDecayArgs& args, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report r = start_report("strip-decay", cfg);
  const HoloFun f = resolve_function(args.function, "function");
  const cplx ab = parse_complex(args.strip, "strip");
  const Strip strip(ab.real(), ab.imag());
  r.inputs["function"] = describe(args.function);
  r.inputs["strip"] = {{"a", number(strip.lower())}, {"b", number(strip.upper())}};

  const StripDecayReport s = strip_decay_check(f, strip, cfg.region, cfg.quad, cfg.jobs);
  r.results = to_json(s);
  r.table.columns = {"cutoff", "sup"};
  for (std::size_t k = 0; k < s.cutoffs.size(); ++k) r.table.rows.push_back({s.cutoffs[k], s.sups[k]});
  r.wall_ms = elapsed_ms(t0);
  return r;
}

Report cmd_growth(const GrowthArgs& args, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report r = start_report("growth", cfg);
  const HoloFun f = resolve_function(args.function, "function");
  r.inputs["function"] = describe(args.function);
  r.inputs["order"] = args.order;

  const GrowthConstantReport g = growth_constant_estimate(f, args.order, cfg.region, cfg.quad, cfg.jobs);
  r.results = to_json(g);
  r.table.columns = {"order", "hardy_norm", "value", "argmax_x", "argmax_y", "refined_value", "relative_change"};
  r.table.rows.push_back({static_cast<long long>(g.order), g.hardy_norm, g.value, g.argmax.x(), g.argmax.y(),
                          g.refined_value, g.relative_change});
  r.wall_ms = elapsed_ms(t0);
  return r;
}

Report cmd_gallery(const RunConfig& cfg) {
  Report r = start_report("gallery", cfg);
  Json list = Json::array();
  r.table.columns = {"id", "expression"};
  for (const auto& id : gallery_ids()) {
    list.push_back({{"id", id}, {"expression", gallery_expression(id)}});
    r.table.rows.push_back({id, gallery_expression(id)});
  }
  r.results["symbols"] = list;
  return r;
}

Report cmd_verify(const VerifyArgs& args, const RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report r = start_report("verify", cfg);
  r.inputs["filter"] = args.filter.empty() ? Json("all") : Json(args.filter);
  const auto checks = run_verify(cfg, args.filter);

  Json list = Json::array();
  long long failed = 0;
  r.table.columns = {"module", "check", "measured", "relation", "threshold", "passed"};
  for (const auto& c : checks) {
    list.push_back({{"module", c.module},
                    {"check", c.name},
                    {"measured", number(c.measured)},
                    {"relation", c.relation},
                    {"threshold", number(c.threshold)},
                    {"passed", c.passed}});
    r.table.rows.push_back({c.module, c.name, c.measured, c.relation, c.threshold, c.passed});
    if (!c.passed) {
      ++failed;
      r.warnings.push_back("failed: " + c.module + "/" + c.name);
    }
  }
  r.results["checks"] = list;
  r.results["passed"] = static_cast<long long>(checks.size()) - failed;
  r.results["failed"] = failed;
  if (args.timing) r.wall_ms = elapsed_ms(t0);
  return r;
}

}  // namespace vlab
