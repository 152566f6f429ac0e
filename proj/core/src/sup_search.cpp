#include "vlab/sup_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vlab/parallel.hpp"

namespace vlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.61803398874989484820;

double sanitize(double v) { return std::isnan(v) ? kInf : v; }

void insert_sorted(std::vector<double>& axis, double v) {
  auto it = std::lower_bound(axis.begin(), axis.end(), v);
  if (it == axis.end() || *it != v) axis.insert(it, v);
}

struct Cell {
  std::size_t iy;
  std::size_t ix;
};

std::vector<Sample> refine_cell(const Statistic& stat, const SampleGrid& grid, Cell cell, double start_value,
                                int rounds) {
  std::vector<Sample> out;
  const auto& ys = grid.heights;
  const auto& xs = grid.abscissae;
  const double ly_lo = std::log(ys[cell.iy == 0 ? 0 : cell.iy - 1]);
  const double ly_hi = std::log(ys[std::min(cell.iy + 1, ys.size() - 1)]);
  const double x_lo = xs[cell.ix == 0 ? 0 : cell.ix - 1];
  const double x_hi = xs[std::min(cell.ix + 1, xs.size() - 1)];

  double y = ys[cell.iy];
  double x = xs[cell.ix];
  double best = start_value;
  if (!std::isfinite(best)) return out;

  auto record = [&](double xx, double yy, double v) { out.push_back({Point(xx, yy), v}); };

  for (int r = 0; r < rounds; ++r) {
    if (ly_hi > ly_lo) {
      const double xf = x;
      auto f = [&](double t) { return sanitize(stat(Point(xf, std::exp(t)))); };
      auto res = golden_maximize(f, ly_lo, ly_hi, 1e-12,
                                 [&](double t, double v) { record(xf, std::exp(t), v); });
      if (res.value > best) {
        best = res.value;
        y = std::exp(res.argmax);
      }
    }
    if (x_hi > x_lo) {
      const double yf = y;
      auto f = [&](double t) { return sanitize(stat(Point(t, yf))); };
      // Peaks can be as narrow as Im z; resolve x relative to the bracket, not to |x|.
      const double tol = std::max(1e-14 * (x_hi - x_lo), 4.0 * std::numeric_limits<double>::epsilon() *
                                                             std::max(std::abs(x_lo), std::abs(x_hi)));
      auto res = golden_maximize(f, x_lo, x_hi, tol, [&](double t, double v) { record(t, yf, v); });
      if (res.value > best) {
        best = res.value;
        x = res.argmax;
      }
    }
  }
  return out;
}

}  // namespace

void SampleGrid::insert_height(double y) { insert_sorted(heights, y); }
void SampleGrid::insert_abscissa(double x) { insert_sorted(abscissae, x); }

GoldenResult golden_maximize(const std::function<double(double)>& f, double lo, double hi, double tol,
                             const std::function<void(double, double)>& visit) {
  auto eval = [&](double t) {
    const double v = f(t);
    if (visit) visit(t, v);
    return v;
  };
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
    }
  }
  return fc >= fd ? GoldenResult{c, fc} : GoldenResult{d, fd};
}

std::vector<Sample> sweep(const Statistic& stat, const SampleGrid& grid, const SupOptions& options,
                          const Partition& partition, int parts) {
  const std::size_t ny = grid.heights.size();
  const std::size_t nx = grid.abscissae.size();
  std::vector<double> values(ny * nx);
  parallel_for(values.size(), options.jobs, [&](std::size_t k) {
    values[k] = sanitize(stat(Point(grid.abscissae[k % nx], grid.heights[k / nx])));
  });

  std::vector<Sample> out;
  out.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k)
    out.push_back({Point(grid.abscissae[k % nx], grid.heights[k / nx]), values[k]});

  if (options.top_cells <= 0 || options.rounds <= 0) return out;

  std::vector<std::vector<std::size_t>> by_part(static_cast<std::size_t>(std::max(parts, 1)));
  for (std::size_t k = 0; k < values.size(); ++k) {
    const int part = partition ? partition(out[k].point) : 0;
    by_part[static_cast<std::size_t>(std::clamp(part, 0, parts - 1))].push_back(k);
  }

  // Equal values go to the column nearest the middle abscissa.
  const double mid = grid.abscissae[nx / 2];
  auto off = [&](std::size_t k) { return std::abs(grid.abscissae[k % nx] - mid); };
  std::vector<Cell> cells;
  for (auto& idx : by_part) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return values[a] > values[b] || (values[a] == values[b] && off(a) < off(b));
    });
    const std::size_t take = std::min(idx.size(), static_cast<std::size_t>(options.top_cells));
    for (std::size_t t = 0; t < take; ++t) cells.push_back({idx[t] / nx, idx[t] % nx});
  }

  std::vector<std::vector<Sample>> refined(cells.size());
  parallel_for(cells.size(), options.jobs, [&](std::size_t c) {
    refined[c] = refine_cell(stat, grid, cells[c], values[cells[c].iy * nx + cells[c].ix], options.rounds);
  });
  for (auto& r : refined) out.insert(out.end(), r.begin(), r.end());
  return out;
}

SupEstimate estimate_sup(const Statistic& stat, const SearchRegion& region, const SupOptions& options) {
  region.validate();
  SampleGrid grid{region.heights(), region.abscissae()};

  const double log_lo = std::log(region.y_min);
  const double log_hi = std::log(region.y_max);
  const double y_strip = std::exp(log_lo + (log_hi - log_lo) / 3.0);
  const double y_far = std::exp(log_lo + 2.0 * (log_hi - log_lo) / 3.0);

  if (options.strip_densify > 1) {
    const auto base = grid.heights;
    for (std::size_t i = 0; i + 1 < base.size() && base[i + 1] <= y_strip; ++i) {
      const double a = std::log(base[i]);
      const double b = std::log(base[i + 1]);
      for (int s = 1; s < options.strip_densify; ++s)
        grid.insert_height(std::exp(a + (b - a) * s / options.strip_densify));
    }
  }
  {
    std::sort(grid.abscissae.begin(), grid.abscissae.end());
    grid.abscissae.erase(std::unique(grid.abscissae.begin(), grid.abscissae.end()), grid.abscissae.end());
  }
  for (const auto& s : options.seeds) {
    grid.insert_height(s.y());
    grid.insert_abscissa(s.x());
  }

  // Near-boundary strip, far field, central box, and the central band outside the box.
  const double shift = region.x_shift;
  Partition partition = [=](const Point& p) {
    if (p.y() < y_strip) return 0;
    if (p.y() > y_far) return 1;
    return std::abs(p.x() - shift) <= y_far ? 2 : 3;
  };
  const auto samples = sweep(stat, grid, options, partition, 4);

  SupEstimate est;
  const int levels = std::max(options.level_count, 1);
  const double log_mid = 0.5 * (log_lo + log_hi);
  for (int k = 0; k < levels; ++k) {
    const bool full = (k == levels - 1);
    const double frac = std::ldexp(1.0, k - levels + 1);
    const double y_lo = full ? region.y_min : std::exp(log_mid + frac * (log_lo - log_mid));
    const double y_hi = full ? region.y_max : std::exp(log_mid + frac * (log_hi - log_mid));
    const double x_half = (full || region.x_max < 1.0) ? region.x_max : std::pow(region.x_max, frac);
    const double slack = 1e-12;
    auto inside = [&](const Sample& s) {
      return full || (s.point.y() >= y_lo * (1 - slack) && s.point.y() <= y_hi * (1 + slack) &&
                      std::abs(s.point.x() - shift) <= x_half * (1 + slack));
    };
    double best = 0.0;
    bool any = false;
    for (const auto& s : samples) {
      if (inside(s) && (!any || s.value > best)) {
        best = s.value;
        any = true;
      }
    }
    Point arg = samples.front().point;
    double arg_offset = std::numeric_limits<double>::infinity();
    const double cutoff = std::isfinite(best) ? best * (1 - 1e-12) : best;
    for (const auto& s : samples) {
      if (!inside(s) || s.value < cutoff) continue;
      const double offset = std::abs(s.point.x() - shift);
      if (offset < arg_offset) {
        arg_offset = offset;
        arg = s.point;
      }
    }
    est.levels.push_back({y_lo, best, arg});
    if (full) {
      est.value = best;
      est.argmax = arg;
    }
  }

  if (!std::isfinite(est.value)) {
    est.divergent = true;
  } else if (est.levels.size() >= 2) {
    const double prev = est.levels[est.levels.size() - 2].sup;
    const double last = est.levels.back().sup;
    est.divergent = last > options.divergence_factor * prev;
  }
  est.at_boundary = est.argmax.y() <= grid.heights.front() * (1 + 1e-12);
  return est;
}

}  // namespace vlab
