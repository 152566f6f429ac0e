#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vlab/config.hpp"
#include "vlab/point.hpp"

namespace vlab {

struct CheckResult {
  std::string module;
  std::string name;
  double measured;
  double threshold;
  /// "<=", "<" or ">=": how measured must compare with threshold.
  std::string relation;
  bool passed;
};

/// Module names accepted by the filter, in run order.
const std::vector<std::string>& verify_modules();

/// Runs every invariant check, or only those of `filter` when it is nonempty.
/// Throws ConfigError for an unknown module name.
std::vector<CheckResult> run_verify(const RunConfig& cfg, std::string_view filter = {});

/// n points with Re uniform on [-4, 4] and Im log-uniform on [0.05, 4],
/// drawn from SampleRng(seed).
std::vector<Point> seeded_points(std::uint64_t seed, int n);

}  // namespace vlab
