#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "vlab/commands.hpp"
#include "vlab/errors.hpp"
#include "vlab/expr.hpp"
#include "vlab/verify.hpp"

namespace vlab::cli {

namespace {

struct Globals {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<int> jobs;
  std::optional<long long> seed;
  std::optional<std::string> output;
  std::optional<std::string> format;
};

void add_function(CLI::App* cmd, FunctionArg& arg, const std::string& name, const std::string& what) {
  cmd->add_option("--" + name, arg.id, what + ": gallery id or fw:<re>,<im>");
  cmd->add_option("--" + name + "-expr", arg.expr, what + " as an expression in z");
}

Json error_json(const std::string& kind, const std::string& field, const std::string& message) {
  Json e;
  e["kind"] = kind;
  if (!field.empty()) e["field"] = field;
  e["message"] = message;
  return Json{{"error", e}};
}

RunConfig build_config(const Globals& g) {
  RunConfig cfg;
  if (!g.config_path.empty()) load_config_file(cfg, g.config_path);
  for (const auto& o : g.overrides) apply_override(cfg, o);
  if (g.jobs) cfg.jobs = *g.jobs;
  if (g.seed) {
    if (*g.seed < 0) throw ConfigError("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(*g.seed);
  }
  if (g.output) cfg.output_path = *g.output;
  if (g.format) cfg.format = parse_output_format(*g.format);
  cfg.validate();
  return cfg;
}

void emit(const Report& report, const RunConfig& cfg, std::ostream& out) {
  const std::string text = render(report, cfg.format);
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw ConfigError("output.path", "cannot write '" + cfg.output_path + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for Volterra-type integration operators on the upper half-plane"};
  app.name("vlab");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "JSON config file with flat dotted keys");
  app.add_option("--set", g.overrides, "Override a config key: key=value (repeatable)");
  app.add_option("--jobs", g.jobs, "Worker threads");
  app.add_option("--seed", g.seed, "Seed for randomized sample points");
  app.add_option("--output", g.output, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "json or csv");

  HardyArgs hardy;
  auto* c_hardy = app.add_subcommand("hardy-norm", "Hardy H2 norm: sup over heights of the line L2 integral");
  add_function(c_hardy, hardy.function, "function", "Function");

  CriteriaArgs crit;
  std::optional<int> radii;
  auto* c_crit = app.add_subcommand("criteria", "M1 / M2 sup statistics of a symbol");
  add_function(c_crit, crit.symbol, "symbol", "Symbol g");
  c_crit->add_option("--which", crit.which, "m1, m2 or both");
  c_crit->add_flag("--vanishing", crit.vanishing, "Also run the boundary vanishing check");
  c_crit->add_option("--radii", radii, "Number of radii 2^-k for the vanishing check");

  ApplyArgs app_args;
  auto* c_apply = app.add_subcommand("apply", "Evaluate J_g f, I_g f or M_g f at a point");
  c_apply->add_option("--op", app_args.op, "jg, ig or mg")->required();
  add_function(c_apply, app_args.symbol, "symbol", "Symbol g");
  add_function(c_apply, app_args.function, "function", "Function f");
  c_apply->add_option("--z0", app_args.z0, "Base point <re>,<im> (default 0,1)");
  c_apply->add_option("--z", app_args.z, "Evaluation point <re>,<im>")->required();
  c_apply->add_option("--path", app_args.path, "straight or two-leg");

  CertifyArgs cert;
  auto* c_cert = app.add_subcommand("certify", "Boundedness certificate for J_g or I_g");
  c_cert->add_option("--op", cert.op, "jg or ig")->required();
  add_function(c_cert, cert.symbol, "symbol", "Symbol g");

  ProbeArgs probe;
  std::optional<int> levels;
  auto* c_probe = app.add_subcommand("probe", "Compactness probe along w_n = x + i 2^-n");
  c_probe->add_option("--op", probe.op, "jg or ig")->required();
  add_function(c_probe, probe.symbol, "symbol", "Symbol g");
  c_probe->add_option("--levels", levels, "Number of levels (>= 4)");
  c_probe->add_option("--x-anchor", probe.x_anchor, "Real part of the probe points");

  BlochArgs bloch;
  auto* c_bloch = app.add_subcommand("bloch", "Bloch norm of g, or of L f with --op");
  add_function(c_bloch, bloch.symbol, "symbol", "Symbol g");
  c_bloch->add_option("--op", bloch.op, "jg, ig or mg");
  add_function(c_bloch, bloch.function, "function", "Function f (with --op)");
  c_bloch->add_option("--z0", bloch.z0, "Base point <re>,<im> (default 0,1)");

  StripDecayArgs strip;
  auto* c_strip = app.add_subcommand("strip-decay", "sup |f| on a horizontal strip beyond |Re z| > R");
  add_function(c_strip, strip.function, "function", "Function f");
  c_strip->add_option("--strip", strip.strip, "Strip bounds <a>,<b> (default 0.5,2)");

  GrowthArgs growth;
  auto* c_growth = app.add_subcommand("growth", "sup (Im z)^{n+1/2} |f^(n)| / ||f||_H2");
  add_function(c_growth, growth.function, "function", "Function f");
  c_growth->add_option("--order", growth.order, "Derivative order 0, 1 or 2");

  auto* c_gallery = app.add_subcommand("gallery", "List built-in symbols");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Run every invariant check");
  c_verify->add_option("--filter", verify.filter, "Only this module");
  c_verify->add_flag("--timing", verify.timing, "Record wall time in the report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("usage", "", e.what()).dump() << "\n";
    return kExitConfigError;
  }

  try {
    RunConfig cfg = build_config(g);
    if (levels) cfg.probe_levels = *levels;
    if (radii) cfg.radii = *radii;
    cfg.validate();

    Report report;
    if (*c_hardy) report = cmd_hardy_norm(hardy, cfg);
    else if (*c_crit) report = cmd_criteria(crit, cfg);
    else if (*c_apply) report = cmd_apply(app_args, cfg);
    else if (*c_cert) report = cmd_certify(cert, cfg);
    else if (*c_probe) report = cmd_probe(probe, cfg);
    else if (*c_bloch) report = cmd_bloch(bloch, cfg);
    else if (*c_strip) report = cmd_strip_decay(strip, cfg);
    else if (*c_growth) report = cmd_growth(growth, cfg);
    else if (*c_gallery) report = cmd_gallery(cfg);
    else report = cmd_verify(verify, cfg);

    emit(report, cfg, out);
    if (*c_verify) {
      for (const auto& c : report.results["checks"])
        err << (c["passed"].get<bool>() ? "[PASS] " : "[FAIL] ") << c["module"].get<std::string>() << "/"
            << c["check"].get<std::string>() << "  " << c["measured"].dump() << " "
            << c["relation"].get<std::string>() << " " << c["threshold"].dump() << "\n";
      const auto failed = report.results["failed"].get<long long>();
      err << report.results["passed"].get<long long>() << " passed, " << failed << " failed\n";
      if (failed > 0) return kExitVerifyFailed;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << error_json("config", e.field(), e.what()).dump() << "\n";
    return kExitConfigError;
  } catch (const expr::SyntaxError& e) {
    err << error_json("syntax", "expr", e.what()).dump() << "\n";
    return kExitConfigError;
  } catch (const EvalError& e) {
    err << error_json("eval", "", e.what()).dump() << "\n";
    return kExitConfigError;
  } catch (const NonconvergenceError& e) {
    err << error_json("nonconvergence", "", e.what()).dump() << "\n";
    return kExitNonconvergence;
  } catch (const std::exception& e) {
    err << error_json("internal", "", e.what()).dump() << "\n";
    return kExitVerifyFailed;
  }
}

}  // namespace vlab::cli
