#pragma once

#include <string_view>
#include <vector>

#include "vlab/ops.hpp"

namespace vlab {

/// M1: (Im z)^{1/2} |g'(z)|.  M2: |g(z)| / (Im z)^{1/2}.
enum class StatisticForm { M1, M2 };

std::string_view to_string(StatisticForm form);
StatisticForm parse_statistic_form(std::string_view text);

double criterion_statistic(StatisticForm form, const HoloFun& g, const Point& z, const QuadConfig& cfg);

SupEstimate criterion_m1(const HoloFun& g, const SearchRegion& region, const QuadConfig& cfg,
                         const SupOptions& options = {});
SupEstimate criterion_m2(const HoloFun& g, const SearchRegion& region, const QuadConfig& cfg,
                         const SupOptions& options = {});

// ---------------------------------------------------------------------------
// Boundary vanishing
// ---------------------------------------------------------------------------

enum class VanishingVerdict { Vanishing, Nonvanishing, Inconclusive };
std::string_view to_string(VanishingVerdict v);

struct VanishingOptions {
  /// Radii 2^{-k}, k = 0 .. radii - 1.
  int radii = 21;
  double vanish_ratio = 1e-3;
  int window = 5;
  double band = 0.05;
};

/// s(r_k) = sup over {Im z <= r_k} of the statistic. All radii share one
/// sample pool, so s is nonincreasing in k by construction.
struct VanishingReport {
  StatisticForm form;
  std::vector<double> radii;
  std::vector<double> sups;
  std::vector<Point> argmax;
  /// Lowest sampled height.
  double height_floor;
  VanishingVerdict verdict;
  /// Mean of the last `window` sups when NONVANISHING and not divergent, else 0.
  double limit_estimate;
  /// The statistic keeps growing towards the height floor: s(r) is infinite.
  bool divergent;
};

VanishingReport boundary_vanishing_check(const HoloFun& g, StatisticForm form, const SearchRegion& region,
                                         const QuadConfig& cfg, const VanishingOptions& options = {},
                                         int jobs = 1);

/// Applies the verdict rules to a precomputed sequence.
VanishingVerdict classify_vanishing(std::span<const double> sups, const VanishingOptions& options,
                                    double* limit_estimate = nullptr);

// ---------------------------------------------------------------------------
// Compactness probe
// ---------------------------------------------------------------------------

enum class ProbeVerdict { Decaying, Obstructed, Inconclusive };
std::string_view to_string(ProbeVerdict v);

struct ProbeLevel {
  Point w;
  /// Closed-form extremal lower statistic.
  double lower_stat;
  /// Same quantity evaluated through f_w.
  double lower_stat_numeric;
  double full_norm;
  bool nonconverged = false;
};

struct CompactnessProbe {
  OperatorKind kind;
  double x_anchor;
  std::vector<ProbeLevel> levels;
  ProbeVerdict verdict;
};

inline constexpr double kProbeFloor = 1e-3;

/// w_n = x_anchor + i 2^{-n}, n = 1..levels.
CompactnessProbe compactness_probe(OperatorKind kind, const HoloFun& g, double x_anchor, int levels,
                                   const SearchRegion& region, const QuadConfig& cfg, int jobs = 1);

ProbeVerdict classify_probe(std::span<const ProbeLevel> levels);

// ---------------------------------------------------------------------------
// Boundedness certificate
// ---------------------------------------------------------------------------

enum class BoundednessVerdict { Bounded, UnboundedEvidence, Inconclusive };
std::string_view to_string(BoundednessVerdict v);

struct LowerBound {
  double value;
  Point w;
  /// Window scale whose argmax centred the w-grid.
  double scale;
};

struct BoundednessCertificate {
  OperatorKind kind;
  SupEstimate criterion;
  /// max over a 5x5 w-grid of ||L f_w||_Bloch / ||f_w||_H2, centred on the criterion's argmax.
  LowerBound lower_bound;
  /// Same, centred on the argmax inside the second-largest window.
  LowerBound lower_bound_previous;
  /// lower_bound / criterion (0 when the criterion vanishes).
  double ratio;
  bool lower_bound_grows;
  /// Hypothesis checks on g: sup |g| and the Bloch seminorm of g.
  SupEstimate sup_abs_g;
  SupEstimate bloch_g;
  BoundednessVerdict verdict;
};

BoundednessCertificate boundedness_certificate(OperatorKind kind, const HoloFun& g, const SearchRegion& region,
                                               const QuadConfig& cfg, int jobs = 1);

// ---------------------------------------------------------------------------
// Strip decay and derivative growth
// ---------------------------------------------------------------------------

struct StripDecayReport {
  Strip strip;
  std::vector<double> cutoffs;
  std::vector<double> sups;
  bool decaying;
};

/// sup |f| over {z in strip : |Re z| > R} for R = 10, 1e2, 1e3, 1e4 (abscissae up to region.x_max).
StripDecayReport strip_decay_check(const HoloFun& f, const Strip& strip, const SearchRegion& region,
                                   const QuadConfig& cfg, int jobs = 1);

struct GrowthConstantReport {
  int order;
  double hardy_norm;
  /// sup (Im z)^{n+1/2} |f^{(n)}(z)| / ||f||_H2 on the region.
  double value;
  Point argmax;
  /// Same on the 2x refined region.
  double refined_value;
  /// |refined - value| / value.
  double relative_change;
};

/// Throws ConfigError when the Hardy norm of f is zero or not finite.
GrowthConstantReport growth_constant_estimate(const HoloFun& f, int order, const SearchRegion& region,
                                              const QuadConfig& cfg, int jobs = 1);

}  // namespace vlab
