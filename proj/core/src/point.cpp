#include "vlab/point.hpp"

#include <cmath>
#include <string>

#include "vlab/errors.hpp"

namespace vlab {

Point::Point(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw ConfigError("point", "coordinates must be finite");
  if (!(y > 0.0)) throw ConfigError("point", "Im z must be > 0, got " + std::to_string(y));
}

Strip::Strip(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !(a <= b) || !std::isfinite(b)) throw ConfigError("strip", "need 0 < a <= b");
}

void SearchRegion::validate() const {
  if (!(y_min > 0.0) || !std::isfinite(y_min)) throw ConfigError("region.y_min", "must be finite and > 0");
  if (!(y_max >= y_min) || !std::isfinite(y_max)) throw ConfigError("region.y_max", "must be finite and >= y_min");
  if (!(x_max >= 0.0) || !std::isfinite(x_max)) throw ConfigError("region.x_max", "must be finite and >= 0");
  if (y_grid < 1) throw ConfigError("region.y_grid", "must be >= 1");
  if (x_grid < 1) throw ConfigError("region.x_grid", "must be >= 1");
  if (y_min < y_max && y_grid < 2) throw ConfigError("region.y_grid", "must be >= 2 for a nondegenerate range");
  if (x_max > 0.0 && x_grid < 2) throw ConfigError("region.x_grid", "must be >= 2 for a nondegenerate range");
  if (!std::isfinite(x_shift)) throw ConfigError("region.x_shift", "must be finite");
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < n; ++k) {
    // k/(n-1) is an exact ratio, so refining n -> 2n-1 reproduces these nodes.
    const double frac = static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(k == 0 ? lo : (k == n - 1 ? hi : std::exp(a + (b - a) * frac)));
  }
  return out;
}

std::vector<double> SearchRegion::heights() const { return log_space(y_min, y_max, y_grid); }

std::vector<double> SearchRegion::abscissae() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(x_grid));
  if (x_grid == 1 || x_max == 0.0) {
    out.assign(static_cast<std::size_t>(x_grid), x_shift);
    return out;
  }
  const double t_max = std::asinh(x_max);
  const int m = x_grid - 1;
  for (int k = 0; k <= m; ++k) {
    const double frac = static_cast<double>(2 * k - m) / static_cast<double>(m);
    double x = std::sinh(t_max * frac);
    if (k == 0) x = -x_max;
    if (k == m) x = x_max;
    if (2 * k == m) x = 0.0;
    out.push_back(x_shift + x);
  }
  return out;
}

SearchRegion SearchRegion::refined() const {
  SearchRegion r = *this;
  r.y_grid = y_grid > 1 ? 2 * y_grid - 1 : 1;
  r.x_grid = x_grid > 1 ? 2 * x_grid - 1 : 1;
  return r;
}

std::vector<Point> region_points(const SearchRegion& region) {
  region.validate();
  const auto ys = region.heights();
  const auto xs = region.abscissae();
  std::vector<Point> out;
  out.reserve(ys.size() * xs.size());
  for (double y : ys)
    for (double x : xs) out.emplace_back(x, y);
  return out;
}

}  // namespace vlab
