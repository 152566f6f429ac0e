#include "vlab/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "vlab/errors.hpp"

namespace vlab {

namespace {

double as_double(std::string_view key, const Json& v) {
  if (!v.is_number()) throw ConfigError(std::string(key), "expected a number");
  return v.get<double>();
}

long long as_integer(std::string_view key, const Json& v) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<long long>(d);
  }
  throw ConfigError(std::string(key), "expected an integer");
}

int as_int(std::string_view key, const Json& v) {
  const long long n = as_integer(key, v);
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max())
    throw ConfigError(std::string(key), "out of range");
  return static_cast<int>(n);
}

std::string as_string(std::string_view key, const Json& v) {
  if (!v.is_string()) throw ConfigError(std::string(key), "expected a string");
  return v.get<std::string>();
}

}  // namespace

std::string_view to_string(OutputFormat format) { return format == OutputFormat::Json ? "json" : "csv"; }

OutputFormat parse_output_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw ConfigError("output.format", "expected json or csv, got '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  quad.validate();
  region.validate();
  if (probe_levels < 4) throw ConfigError("probe.levels", "must be >= 4");
  if (radii < 1 || radii > 60) throw ConfigError("vanishing.radii", "must be in [1, 60]");
  if (jobs < 1) throw ConfigError("jobs", "must be >= 1");
}

void set_config_value(RunConfig& cfg, std::string_view key, const Json& v) {
  if (key == "quad.rel_tol") cfg.quad.rel_tol = as_double(key, v);
  else if (key == "quad.abs_tol") cfg.quad.abs_tol = as_double(key, v);
  else if (key == "quad.max_depth") cfg.quad.max_depth = as_int(key, v);
  else if (key == "quad.gauss_order") cfg.quad.gauss_order = as_int(key, v);
  else if (key == "quad.circle_nodes") cfg.quad.circle_nodes = as_int(key, v);
  else if (key == "quad.circle_ratio") cfg.quad.circle_ratio = as_double(key, v);
  else if (key == "region.y_min") cfg.region.y_min = as_double(key, v);
  else if (key == "region.y_max") cfg.region.y_max = as_double(key, v);
  else if (key == "region.x_max") cfg.region.x_max = as_double(key, v);
  else if (key == "region.y_grid") cfg.region.y_grid = as_int(key, v);
  else if (key == "region.x_grid") cfg.region.x_grid = as_int(key, v);
  else if (key == "probe.levels") cfg.probe_levels = as_int(key, v);
  else if (key == "vanishing.radii") cfg.radii = as_int(key, v);
  else if (key == "output.path") cfg.output_path = as_string(key, v);
  else if (key == "output.format") cfg.format = parse_output_format(as_string(key, v));
  else if (key == "seed") {
    const long long n = as_integer(key, v);
    if (n < 0) throw ConfigError("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(n);
  } else if (key == "jobs") cfg.jobs = as_int(key, v);
  else throw ConfigError(std::string(key), "unknown config key");
}

void apply_config(RunConfig& cfg, const Json& flat) {
  if (!flat.is_object()) throw ConfigError("config", "expected a JSON object with dotted keys");
  for (const auto& [key, value] : flat.items()) set_config_value(cfg, key, value);
  cfg.validate();
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  apply_config(cfg, doc);
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError("set", "expected key=value");
  const std::string_view key = assignment.substr(0, eq);
  const std::string text(assignment.substr(eq + 1));
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  set_config_value(cfg, key, value);
}

Json to_json(const RunConfig& cfg) {
  Json j;
  j["quad.rel_tol"] = cfg.quad.rel_tol;
  j["quad.abs_tol"] = cfg.quad.abs_tol;
  j["quad.max_depth"] = cfg.quad.max_depth;
  j["quad.gauss_order"] = cfg.quad.gauss_order;
  j["quad.circle_nodes"] = cfg.quad.circle_nodes;
  j["quad.circle_ratio"] = cfg.quad.circle_ratio;
  j["region.y_min"] = cfg.region.y_min;
  j["region.y_max"] = cfg.region.y_max;
  j["region.x_max"] = cfg.region.x_max;
  j["region.y_grid"] = cfg.region.y_grid;
  j["region.x_grid"] = cfg.region.x_grid;
  j["probe.levels"] = cfg.probe_levels;
  j["vanishing.radii"] = cfg.radii;
  j["output.path"] = cfg.output_path;
  j["output.format"] = std::string(to_string(cfg.format));
  j["seed"] = cfg.seed;
  j["jobs"] = cfg.jobs;
  return j;
}

}  // namespace vlab
