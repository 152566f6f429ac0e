#include "vlab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>

#include "vlab/errors.hpp"
#include "vlab/parallel.hpp"

namespace vlab {

void QuadConfig::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) throw ConfigError("quad.rel_tol", "must be finite and > 0");
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) throw ConfigError("quad.abs_tol", "must be finite and > 0");
  if (max_depth < 1 || max_depth > 60) throw ConfigError("quad.max_depth", "must be in [1, 60]");
  if (gauss_order < 1 || gauss_order > 200) throw ConfigError("quad.gauss_order", "must be in [1, 200]");
  if (circle_nodes < 1) throw ConfigError("quad.circle_nodes", "must be >= 1");
  if (!(circle_ratio > 0.0 && circle_ratio < 1.0)) throw ConfigError("quad.circle_ratio", "must lie in (0, 1)");
}

GaussLegendre::GaussLegendre(int order) : nodes_(static_cast<std::size_t>(order)), weights_(nodes_.size()) {
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (2 * i + 1 == n) x = 0.0;
    // Recompute P_n' at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double pn = n == 1 ? x : p1;
    const double pm = n == 1 ? 1.0 : p0;
    dp = n * (x * pn - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    nodes_[lo] = -x;
    nodes_[hi] = x;
    weights_[lo] = w;
    weights_[hi] = w;
  }
}

const GaussLegendre& GaussLegendre::of_order(int order) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussLegendre>(order);
  return *slot;
}

namespace {

constexpr std::size_t kMaxPanels = 200000;

struct Panel {
  double lo;
  double hi;
  int depth;
  cplx left;   // Gauss estimate on [lo, mid]
  cplx right;  // Gauss estimate on [mid, hi]
  cplx value;
  double error;
};

struct WorseFirst {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.lo > b.lo;
  }
};

}  // namespace

Integral adaptive_integral(const std::function<cplx(double)>& integrand, double a, double b, const QuadConfig& cfg) {
  if (a == b) return {cplx{}, 0.0};
  const GaussLegendre& rule = GaussLegendre::of_order(cfg.gauss_order);
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();

  auto gauss = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    cplx sum{};
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * integrand(mid + half * nodes[k]);
    return sum * half;
  };
  auto make_panel = [&](double lo, double hi, int depth, cplx coarse) {
    const double mid = 0.5 * (lo + hi);
    Panel p{lo, hi, depth, gauss(lo, mid), gauss(mid, hi), {}, 0.0};
    p.value = p.left + p.right;
    p.error = std::abs(coarse - p.value);
    return p;
  };

  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> open;
  std::vector<Panel> frozen;
  open.push(make_panel(a, b, 0, gauss(a, b)));

  auto totals = [&] {
    std::vector<const Panel*> all;
    all.reserve(open.size() + frozen.size());
    auto copy = open;
    std::vector<Panel> drained;
    while (!copy.empty()) {
      drained.push_back(copy.top());
      copy.pop();
    }
    for (const auto& p : drained) all.push_back(&p);
    for (const auto& p : frozen) all.push_back(&p);
    std::sort(all.begin(), all.end(), [](const Panel* x, const Panel* y) { return x->lo < y->lo; });
    Integral out{cplx{}, 0.0};
    for (const Panel* p : all) {
      out.value += p->value;
      out.error += p->error;
    }
    return out;
  };

  cplx running = open.top().value;
  double running_err = open.top().error;
  std::size_t count = 1;
  for (;;) {
    if (running_err <= std::max(cfg.rel_tol * std::abs(running), cfg.abs_tol)) {
      const Integral exact = totals();
      if (exact.error <= std::max(cfg.rel_tol * std::abs(exact.value), cfg.abs_tol)) return exact;
      running = exact.value;
      running_err = exact.error;
    }
    if (open.empty() || count > kMaxPanels) {
      const Integral best = totals();
      throw NonconvergenceError("adaptive quadrature did not reach tolerance", best.value, best.error);
    }
    Panel worst = open.top();
    open.pop();
    if (worst.depth + 1 > cfg.max_depth) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel l = make_panel(worst.lo, mid, worst.depth + 1, worst.left);
    Panel r = make_panel(mid, worst.hi, worst.depth + 1, worst.right);
    running += l.value + r.value - worst.value;
    running_err += l.error + r.error - worst.error;
    open.push(l);
    open.push(r);
    ++count;
  }
}

Integral segment_integral(const HoloFun::Fn& integrand, const Point& from, const Point& to, const QuadConfig& cfg) {
  const cplx a = from.z();
  const cplx b = to.z();
  if (a == b) return {cplx{}, 0.0};
  const cplx mid = (a + b) * 0.5;
  const cplx half = (b - a) * 0.5;
  return adaptive_integral([&](double t) { return integrand(mid + half * t) * half; }, -1.0, 1.0, cfg);
}

cplx cauchy_derivative(const HoloFun& f, const Point& z, int n, const QuadConfig& cfg) {
  if (n < 0 || n > 2) throw ConfigError("order", "derivative order must be 0, 1 or 2");
  const double r = cfg.circle_ratio * z.y();
  const int nodes = cfg.circle_nodes;
  cplx sum{};
  for (int k = 0; k < nodes; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / nodes;
    const cplx e{std::cos(theta), std::sin(theta)};
    cplx term = f.eval_fn()(z.z() + r * e);
    for (int m = 0; m < n; ++m) term *= std::conj(e);
    sum += term;
  }
  const double factorial = n == 2 ? 2.0 : 1.0;
  return sum * (factorial / (nodes * std::pow(r, n)));
}

cplx derivative(const HoloFun& f, const Point& z, int n, const QuadConfig& cfg) {
  switch (n) {
    case 0: return f(z);
    case 1: return f.has_derivative() ? f.derivative(z) : cauchy_derivative(f, z, 1, cfg);
    case 2:
      if (f.has_derivative()) return cauchy_derivative(HoloFun(f.label() + "'", f.deriv_fn()), z, 1, cfg);
      return cauchy_derivative(f, z, 2, cfg);
    default: throw ConfigError("order", "derivative order must be 0, 1 or 2");
  }
}

LineL2 line_l2(const HoloFun& f, double y, const QuadConfig& cfg, const LineFrame& frame) {
  if (!(y > 0.0)) throw ConfigError("height", "must be > 0");
  constexpr double kStart = 16.0;
  constexpr double kCap = 1e7;
  const auto& fn = f.eval_fn();
  if (!(frame.scale > 0.0) || !std::isfinite(frame.centre)) throw ConfigError("frame", "scale must be > 0");
  // u is the window coordinate; x = centre + scale * u.
  auto integrand = [&](double u) { return cplx{frame.scale * std::norm(fn(cplx{frame.centre + frame.scale * u, y})), 0.0}; };

  Integral centre = adaptive_integral(integrand, -kStart, kStart, cfg);
  double total = centre.value.real();
  double error = centre.error;
  double extent = kStart;
  bool converged = false;
  while (extent < kCap) {
    const Integral left = adaptive_integral(integrand, -2.0 * extent, -extent, cfg);
    const Integral right = adaptive_integral(integrand, extent, 2.0 * extent, cfg);
    const double block = left.value.real() + right.value.real();
    total += block;
    error += left.error + right.error;
    extent *= 2.0;
    if (block <= cfg.rel_tol * total || block <= cfg.abs_tol) {
      converged = true;
      break;
    }
  }
  return {y, total, error, extent * frame.scale, !converged};
}

std::vector<double> default_hardy_heights() { return log_space(1e-4, 1e3, 41); }

HardyNorm hardy_norm(const HoloFun& f, std::span<const double> heights, const QuadConfig& cfg, int jobs,
                     const LineFrame& frame) {
  if (heights.empty()) throw ConfigError("heights", "must be nonempty");
  for (double h : heights)
    if (!(h > 0.0)) throw ConfigError("heights", "all heights must be > 0");

  HardyNorm out;
  out.lines.resize(heights.size(), LineL2{0, 0, 0, 0, false});
  parallel_for(heights.size(), jobs, [&](std::size_t k) { out.lines[k] = line_l2(f, heights[k], cfg, frame); });

  std::size_t best = 0;
  double lowest = heights[0];
  for (std::size_t k = 0; k < heights.size(); ++k) {
    const auto& line = out.lines[k];
    out.estimate.levels.push_back({line.height, std::sqrt(std::max(line.value, 0.0)), Point(frame.centre, line.height)});
    out.truncated = out.truncated || line.truncated;
    if (line.value > out.lines[best].value) best = k;
    lowest = std::min(lowest, heights[k]);
  }
  out.estimate.value = std::sqrt(std::max(out.lines[best].value, 0.0));
  out.estimate.argmax = Point(frame.centre, heights[best]);
  out.estimate.at_boundary = heights[best] == lowest;
  out.estimate.divergent = out.truncated;
  return out;
}

}  // namespace vlab
