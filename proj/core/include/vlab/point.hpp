#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace vlab {

using cplx = std::complex<double>;

/// A point x + iy of the open upper half-plane.
class Point {
 public:
  /// Throws ConfigError unless y > 0 and both coordinates are finite.
  Point(double x, double y);
  explicit Point(cplx z) : Point(z.real(), z.imag()) {}

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  cplx z() const noexcept { return {x_, y_}; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  double x_;
  double y_;
};

inline const Point kImagUnit{0.0, 1.0};

/// Horizontal strip {a <= Im z <= b}, 0 < a <= b.
class Strip {
 public:
  Strip(double a, double b);

  double lower() const noexcept { return a_; }
  double upper() const noexcept { return b_; }
  bool contains(const Point& p) const noexcept { return p.y() >= a_ && p.y() <= b_; }

 private:
  double a_;
  double b_;
};

/// Rectangular search window in (log y, sinh-stretched x) coordinates.
///
/// Heights are log-spaced on [y_min, y_max]. Abscissae are x_shift + sinh(t)
/// with t uniform on [-asinh(x_max), asinh(x_max)], which packs nodes near
/// the centre and spreads them geometrically towards +-x_max.
struct SearchRegion {
  double y_min = 1e-6;
  double y_max = 1e6;
  double x_max = 1e6;
  int y_grid = 61;
  int x_grid = 129;
  double x_shift = 0.0;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  std::vector<double> heights() const;
  std::vector<double> abscissae() const;

  /// Same window with every grid interval halved (2n - 1 nodes per axis).
  /// The original nodes are reproduced bit-for-bit.
  SearchRegion refined() const;

  friend bool operator==(const SearchRegion&, const SearchRegion&) = default;
};

/// Row-major enumeration: every abscissa for the first height, then the next.
std::vector<Point> region_points(const SearchRegion& region);

/// n log-spaced values on [lo, hi]; n == 1 yields {lo}.
std::vector<double> log_space(double lo, double hi, int n);

}  // namespace vlab
