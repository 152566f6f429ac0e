#pragma once

#include <functional>
#include <vector>

#include "vlab/point.hpp"

namespace vlab {

/// Nonnegative scalar field on the half-plane whose supremum is sought.
using Statistic = std::function<double(const Point&)>;

struct Sample {
  Point point;
  double value;
};

/// Supremum over one nested window; `scale` is the window's lowest height.
struct SupLevel {
  double scale;
  double sup;
  Point argmax;
};

/// Result of a supremum search.
///
/// `value` is the maximum over `levels` (the last level is the full window).
/// Among samples within 1e-12 (relative) of the maximum, the one closest to
/// the window's centre line is reported as the argmax.
/// `divergent` is raised when the sup grows by more than the configured
/// factor between the two largest windows, or when the statistic overflowed.
struct SupEstimate {
  double value = 0.0;
  Point argmax = kImagUnit;
  std::vector<SupLevel> levels;
  bool divergent = false;
  bool at_boundary = false;
};

struct SupOptions {
  /// Best grid cells refined per sub-region (strip, far field, box, tails).
  int top_cells = 5;
  /// Alternating golden-section passes in log y then x.
  int rounds = 3;
  double divergence_factor = 1.5;
  /// Number of nested windows; log extents double from one to the next.
  int level_count = 4;
  /// Subdivide each log-height interval inside the near-boundary strip.
  int strip_densify = 1;
  /// Points whose height and abscissa are spliced into the grid.
  std::vector<Point> seeds;
  int jobs = 1;
};

/// Tensor grid, both axes ascending.
struct SampleGrid {
  std::vector<double> heights;
  std::vector<double> abscissae;

  void insert_height(double y);
  void insert_abscissa(double x);
};

/// Maps a point to a sub-region index in [0, parts). Each sub-region gets
/// its own refinement budget.
using Partition = std::function<int(const Point&)>;

/// Evaluates `stat` on every grid node, then refines around the best
/// `top_cells` nodes of each partition with coordinate-wise golden-section
/// ascent bracketed by neighbouring grid lines. Returns every evaluated
/// sample, grid nodes first, in a deterministic order.
///
/// NaN values are recorded as +inf: they only arise from overflow in the
/// statistic, which is itself a divergence signal.
std::vector<Sample> sweep(const Statistic& stat, const SampleGrid& grid, const SupOptions& options,
                          const Partition& partition = {}, int parts = 1);

/// Full supremum search over a region using the strip / far-field / central
/// box / tails decomposition, with nested-window divergence detection.
SupEstimate estimate_sup(const Statistic& stat, const SearchRegion& region, const SupOptions& options = {});

/// Golden-section maximisation of a unimodal function on [lo, hi].
/// Every evaluation is passed to `visit(t, value)`.
struct GoldenResult {
  double argmax;
  double value;
};
GoldenResult golden_maximize(const std::function<double(double)>& f, double lo, double hi, double tol,
                             const std::function<void(double, double)>& visit = {});

}  // namespace vlab
