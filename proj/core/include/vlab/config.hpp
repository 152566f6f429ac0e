#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "vlab/json.hpp"
#include "vlab/point.hpp"
#include "vlab/quad.hpp"

namespace vlab {

enum class OutputFormat { Json, Csv };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

/// Everything a command needs besides its own inputs.
///
/// On disk this is a JSON object with flat dotted keys:
///   quad.rel_tol quad.abs_tol quad.max_depth quad.gauss_order
///   quad.circle_nodes quad.circle_ratio
///   region.y_min region.y_max region.x_max region.y_grid region.x_grid
///   probe.levels vanishing.radii output.path output.format seed jobs
struct RunConfig {
  QuadConfig quad;
  SearchRegion region;
  int probe_levels = 16;
  int radii = 21;
  std::string output_path;
  OutputFormat format = OutputFormat::Json;
  std::uint64_t seed = 1;
  int jobs = 1;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Applies one dotted key. Throws ConfigError for unknown keys or bad types.
void set_config_value(RunConfig& cfg, std::string_view key, const Json& value);

/// Applies every key of a flat object, then validates.
void apply_config(RunConfig& cfg, const Json& flat);

/// Reads and applies a config file.
void load_config_file(RunConfig& cfg, const std::string& path);

/// Parses a `key=value` override. The value is read as JSON when it parses,
/// otherwise taken as a string.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// Flat dotted-key echo; apply_config(to_json(c)) reproduces c.
Json to_json(const RunConfig& cfg);

}  // namespace vlab
