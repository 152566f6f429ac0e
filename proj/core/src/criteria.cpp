#include "vlab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vlab/errors.hpp"

namespace vlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

cplx deriv1(const HoloFun& g, const Point& z, const QuadConfig& cfg) { return derivative(g, z, 1, cfg); }

double sup_of(const std::vector<Sample>& pool, double y_cap, Point* arg) {
  double best = 0.0;
  bool any = false;
  for (const auto& s : pool) {
    if (s.point.y() > y_cap) continue;
    if (!any || s.value > best) {
      best = s.value;
      if (arg) *arg = s.point;
      any = true;
    }
  }
  return best;
}

SupOptions with_jobs(int jobs) {
  SupOptions o;
  o.jobs = jobs;
  return o;
}

}  // namespace

std::string_view to_string(StatisticForm form) { return form == StatisticForm::M1 ? "m1" : "m2"; }

StatisticForm parse_statistic_form(std::string_view text) {
  if (text == "m1") return StatisticForm::M1;
  if (text == "m2") return StatisticForm::M2;
  throw ConfigError("which", "expected m1 or m2, got '" + std::string(text) + "'");
}

std::string_view to_string(VanishingVerdict v) {
  switch (v) {
    case VanishingVerdict::Vanishing: return "VANISHING";
    case VanishingVerdict::Nonvanishing: return "NONVANISHING";
    case VanishingVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string_view to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::Decaying: return "DECAYING";
    case ProbeVerdict::Obstructed: return "OBSTRUCTED";
    case ProbeVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string_view to_string(BoundednessVerdict v) {
  switch (v) {
    case BoundednessVerdict::Bounded: return "BOUNDED";
    case BoundednessVerdict::UnboundedEvidence: return "UNBOUNDED-EVIDENCE";
    case BoundednessVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

double criterion_statistic(StatisticForm form, const HoloFun& g, const Point& z, const QuadConfig& cfg) {
  const double root = std::sqrt(z.y());
  if (form == StatisticForm::M1) return root * std::abs(deriv1(g, z, cfg));
  return std::abs(g(z)) / root;
}

SupEstimate criterion_m1(const HoloFun& g, const SearchRegion& region, const QuadConfig& cfg,
                         const SupOptions& options) {
  return estimate_sup([&](const Point& z) { return criterion_statistic(StatisticForm::M1, g, z, cfg); }, region,
                      options);
}

SupEstimate criterion_m2(const HoloFun& g, const SearchRegion& region, const QuadConfig& cfg,
                         const SupOptions& options) {
  return estimate_sup([&](const Point& z) { return criterion_statistic(StatisticForm::M2, g, z, cfg); }, region,
                      options);
}

// ---------------------------------------------------------------------------

VanishingVerdict classify_vanishing(std::span<const double> sups, const VanishingOptions& options,
                                    double* limit_estimate) {
  if (limit_estimate) *limit_estimate = 0.0;
  if (sups.empty()) return VanishingVerdict::Inconclusive;
  const std::size_t window = std::min<std::size_t>(sups.size(), static_cast<std::size_t>(std::max(options.window, 1)));
  const auto tail = sups.subspan(sups.size() - window);

  bool nonincreasing = true;
  for (std::size_t k = 1; k < tail.size(); ++k) nonincreasing = nonincreasing && tail[k] <= tail[k - 1];
  if (nonincreasing && sups.back() <= options.vanish_ratio * sups.front()) return VanishingVerdict::Vanishing;

  const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(tail.size());
  if (mean > 0.0 && std::isfinite(mean) &&
      std::all_of(tail.begin(), tail.end(), [&](double s) { return std::abs(s - mean) <= options.band * mean; })) {
    if (limit_estimate) *limit_estimate = mean;
    return VanishingVerdict::Nonvanishing;
  }
  return VanishingVerdict::Inconclusive;
}

VanishingReport boundary_vanishing_check(const HoloFun& g, StatisticForm form, const SearchRegion& region,
                                         const QuadConfig& cfg, const VanishingOptions& options, int jobs) {
  region.validate();
  if (options.radii < 1) throw ConfigError("vanishing.radii", "must be >= 1");

  VanishingReport rep{form, {}, {}, {}, 0.0, VanishingVerdict::Inconclusive, 0.0, false};
  for (int k = 0; k < options.radii; ++k) rep.radii.push_back(std::ldexp(1.0, -k));
  const double r_first = rep.radii.front();
  const double r_last = rep.radii.back();
  rep.height_floor = std::min(region.y_min, r_last) * 1e-3;

  // Keep the region's height density (nodes per decade) down to the floor.
  const double decades_region = std::log10(region.y_max / region.y_min);
  const double density = decades_region > 0 ? (region.y_grid - 1) / decades_region : 5.0;
  const int count = static_cast<int>(std::ceil(std::log10(r_first / rep.height_floor) * density)) + 1;
  SampleGrid grid{log_space(rep.height_floor, r_first, std::max(count, 2)), region.abscissae()};
  for (double r : rep.radii) grid.insert_height(r);

  // One refinement budget per radius band (r_{k+1}, r_k].
  const auto radii = rep.radii;
  Partition band = [radii](const Point& p) {
    int k = 0;
    while (k + 1 < static_cast<int>(radii.size()) && p.y() <= radii[static_cast<std::size_t>(k + 1)]) ++k;
    return k;
  };
  SupOptions opts = with_jobs(jobs);
  const auto pool = sweep([&](const Point& z) { return criterion_statistic(form, g, z, cfg); }, grid, opts, band,
                          static_cast<int>(radii.size()));

  for (double r : rep.radii) {
    Point arg = kImagUnit;
    rep.sups.push_back(sup_of(pool, r, &arg));
    rep.argmax.push_back(arg);
  }
  // An unbounded statistic shows up as growth between the two lowest decades.
  const double low = sup_of(pool, 4.0 * rep.height_floor, nullptr);
  double above = 0.0;
  for (const auto& s : pool)
    if (s.point.y() >= 32.0 * rep.height_floor && s.point.y() <= r_last) above = std::max(above, s.value);
  rep.divergent = !std::isfinite(low) || low > 1.5 * above;
  rep.verdict = classify_vanishing(rep.sups, options, &rep.limit_estimate);
  if (rep.divergent) rep.limit_estimate = 0.0;
  return rep;
}

// ---------------------------------------------------------------------------

ProbeVerdict classify_probe(std::span<const ProbeLevel> levels) {
  if (levels.empty()) return ProbeVerdict::Inconclusive;
  const std::size_t window = std::min<std::size_t>(levels.size(), 5);
  const auto tail = levels.subspan(levels.size() - window);

  double mean = 0.0;
  for (const auto& l : tail) mean += l.lower_stat;
  mean /= static_cast<double>(window);
  const bool stable = std::all_of(tail.begin(), tail.end(), [&](const ProbeLevel& l) {
    return l.lower_stat >= kProbeFloor && std::abs(l.lower_stat - mean) <= 0.05 * mean;
  });
  if (stable) return ProbeVerdict::Obstructed;

  const double first = levels.front().full_norm;
  const double last = levels.back().full_norm;
  if (last <= 1e-3 * first) return ProbeVerdict::Decaying;

  bool nonincreasing = true;
  for (std::size_t k = 1; k < tail.size(); ++k) nonincreasing = nonincreasing && tail[k].full_norm <= tail[k - 1].full_norm;
  if (levels.back().lower_stat < kProbeFloor && nonincreasing) return ProbeVerdict::Decaying;
  return ProbeVerdict::Inconclusive;
}

CompactnessProbe compactness_probe(OperatorKind kind, const HoloFun& g, double x_anchor, int levels,
                                   const SearchRegion& region, const QuadConfig& cfg, int jobs) {
  if (levels < 4) throw ConfigError("probe.levels", "must be >= 4");
  if (kind == OperatorKind::MG) throw ConfigError("op", "compactness probe is defined for jg and ig only");
  region.validate();

  CompactnessProbe out{kind, x_anchor, {}, ProbeVerdict::Inconclusive};
  for (int n = 1; n <= levels; ++n) {
    const Point w(x_anchor, std::ldexp(1.0, -n));
    ProbeLevel level{w, extremal_statistic_closed_form(kind, g, w, cfg), extremal_statistic(kind, g, w, cfg), kNaN};
    SupOptions opts = with_jobs(jobs);
    opts.strip_densify = 4;
    opts.seeds = {w};
    try {
      level.full_norm = bloch_norm(OperatorSpec{kind, g, extremal_fw(w), kImagUnit}, region, cfg, opts).value;
    } catch (const NonconvergenceError& e) {
      level.nonconverged = true;
    }
    out.levels.push_back(level);
  }
  out.verdict = classify_probe(out.levels);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

LowerBound extremal_lower_bound(OperatorKind kind, const HoloFun& g, const Point& centre, double scale,
                                const SearchRegion& region, const QuadConfig& cfg, int jobs) {
  static constexpr double kHeightFactors[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  static constexpr double kOffsets[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  const auto unit_heights = default_hardy_heights();

  LowerBound best{0.0, centre, scale};
  for (double hf : kHeightFactors) {
    for (double off : kOffsets) {
      const Point w(centre.x() + off * centre.y(), centre.y() * hf);
      const HoloFun fw = extremal_fw(w);
      // The H2 norm is translation invariant. Measuring the kernel centred at
      // Re w = 0 avoids cancellation in z - conj(w) when |Re w| >> Im w.
      std::vector<double> heights(unit_heights);
      for (double& h : heights) h *= w.y();
      const double h2 =
          hardy_norm(extremal_fw(Point(0.0, w.y())), heights, cfg, jobs, LineFrame{0.0, w.y()}).estimate.value;
      if (!(h2 > 0.0)) continue;
      SupOptions opts;
      opts.jobs = jobs;
      opts.seeds = {w};
      const double bn = bloch_norm(OperatorSpec{kind, g, fw, kImagUnit}, region, cfg, opts).value;
      const double ratio = bn / h2;
      if (ratio > best.value) best = {ratio, w, scale};
    }
  }
  return best;
}

}  // namespace

BoundednessCertificate boundedness_certificate(OperatorKind kind, const HoloFun& g, const SearchRegion& region,
                                               const QuadConfig& cfg, int jobs) {
  if (kind == OperatorKind::MG) throw ConfigError("op", "boundedness certificate is defined for jg and ig only");
  SupOptions opts = with_jobs(jobs);
  BoundednessCertificate cert{kind, {}, {0.0, kImagUnit, 0.0}, {0.0, kImagUnit, 0.0}, 0.0, false, {}, {},
                              BoundednessVerdict::Inconclusive};
  cert.criterion = kind == OperatorKind::JG ? criterion_m1(g, region, cfg, opts) : criterion_m2(g, region, cfg, opts);

  // A vanishing statistic carries no location information; use i.
  auto centre_of = [](const SupLevel& level) { return level.sup > 0.0 ? level.argmax : kImagUnit; };
  const auto& levels = cert.criterion.levels;
  cert.lower_bound = extremal_lower_bound(kind, g, centre_of(levels.back()), levels.back().scale, region, cfg, jobs);
  if (levels.size() >= 2) {
    const auto& prev = levels[levels.size() - 2];
    cert.lower_bound_previous = extremal_lower_bound(kind, g, centre_of(prev), prev.scale, region, cfg, jobs);
    cert.lower_bound_grows = cert.lower_bound.value > 1.5 * cert.lower_bound_previous.value;
  }
  cert.ratio = cert.criterion.value > 0.0 ? cert.lower_bound.value / cert.criterion.value : 0.0;

  cert.sup_abs_g = estimate_sup([&](const Point& z) { return std::abs(g(z)); }, region, opts);
  cert.bloch_g = bloch_seminorm(g, region, cfg, opts);

  if (!cert.criterion.divergent)
    cert.verdict = BoundednessVerdict::Bounded;
  else if (cert.lower_bound_grows)
    cert.verdict = BoundednessVerdict::UnboundedEvidence;
  return cert;
}

// ---------------------------------------------------------------------------

StripDecayReport strip_decay_check(const HoloFun& f, const Strip& strip, const SearchRegion& region,
                                   const QuadConfig& cfg, int jobs) {
  (void)cfg;
  region.validate();
  StripDecayReport rep{strip, {10.0, 1e2, 1e3, 1e4}, {}, false};
  const auto heights = strip.lower() == strip.upper() ? std::vector<double>{strip.lower()}
                                                       : log_space(strip.lower(), strip.upper(), 9);
  SupOptions opts = with_jobs(jobs);
  for (double cutoff : rep.cutoffs) {
    const double outer = std::max(region.x_max, 10.0 * cutoff);
    const auto offsets = log_space(cutoff, outer, 65);
    double best = 0.0;
    for (double sign : {-1.0, 1.0}) {
      SampleGrid grid{heights, {}};
      for (double u : offsets) grid.insert_abscissa(region.x_shift + sign * u);
      for (const auto& s : sweep([&](const Point& z) { return std::abs(f(z)); }, grid, opts))
        best = std::max(best, s.value);
    }
    rep.sups.push_back(best);
  }
  bool nonincreasing = true;
  for (std::size_t k = 1; k < rep.sups.size(); ++k) nonincreasing = nonincreasing && rep.sups[k] <= rep.sups[k - 1];
  rep.decaying = nonincreasing && rep.sups.back() <= 1e-3 * rep.sups.front();
  return rep;
}

GrowthConstantReport growth_constant_estimate(const HoloFun& f, int order, const SearchRegion& region,
                                              const QuadConfig& cfg, int jobs) {
  if (order < 0 || order > 2) throw ConfigError("order", "must be 0, 1 or 2");
  const auto heights = default_hardy_heights();
  const double h2 = hardy_norm(f, heights, cfg, jobs).estimate.value;
  if (!(h2 > 0.0) || !std::isfinite(h2)) throw ConfigError("function", "Hardy norm must be finite and nonzero");

  const double power = order + 0.5;
  Statistic stat = [&](const Point& z) { return std::pow(z.y(), power) * std::abs(derivative(f, z, order, cfg)); };
  SupOptions opts = with_jobs(jobs);
  const SupEstimate base = estimate_sup(stat, region, opts);
  const SupEstimate fine = estimate_sup(stat, region.refined(), opts);

  GrowthConstantReport rep{order, h2, base.value / h2, base.argmax, fine.value / h2, 0.0};
  rep.relative_change = rep.value > 0.0 ? std::abs(rep.refined_value - rep.value) / rep.value : 0.0;
  return rep;
}

}  // namespace vlab
