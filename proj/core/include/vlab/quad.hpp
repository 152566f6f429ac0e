#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vlab/holofun.hpp"
#include "vlab/sup_search.hpp"

namespace vlab {

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 30;
  int gauss_order = 15;
  int circle_nodes = 64;
  /// Cauchy circle radius as a fraction of Im z; must lie in (0, 1).
  double circle_ratio = 0.5;

  void validate() const;
  friend bool operator==(const QuadConfig&, const QuadConfig&) = default;
};

/// Gauss-Legendre rule on [-1, 1]. Nodes are stored in ascending order and
/// are exactly antisymmetric.
class GaussLegendre {
 public:
  explicit GaussLegendre(int order);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Cached rule, safe to call from several threads.
  static const GaussLegendre& of_order(int order);

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

struct Integral {
  cplx value;
  double error;
};

/// Globally adaptive bisection over a real parameter interval. Each panel is
/// scored by |G(panel) - G(left) - G(right)|; the worst panel is split until
/// the summed estimate is <= max(rel_tol * |total|, abs_tol). Throws
/// NonconvergenceError (with best value) once no panel can be split further.
Integral adaptive_integral(const std::function<cplx(double)>& integrand, double a, double b,
                           const QuadConfig& cfg);

/// Line integral of a holomorphic integrand along the straight segment from -> to.
Integral segment_integral(const HoloFun::Fn& integrand, const Point& from, const Point& to,
                          const QuadConfig& cfg);

/// n-th derivative (n = 0, 1, 2) via the Cauchy integral formula on the
/// circle |zeta - z| = circle_ratio * Im z, discretised by the trapezoid rule.
cplx cauchy_derivative(const HoloFun& f, const Point& z, int n, const QuadConfig& cfg);

/// Best available n-th derivative: exact channel for n = 1, Cauchy on the
/// exact derivative for n = 2, Cauchy on f otherwise.
cplx derivative(const HoloFun& f, const Point& z, int n, const QuadConfig& cfg);

struct LineL2 {
  double height;
  double value;
  double error;
  /// Final half-width of the truncated window.
  double extent;
  bool truncated;
};

/// Where a function's mass sits along horizontal lines. Windows are centred
/// on `centre` and measured in units of `scale`.
struct LineFrame {
  double centre = 0.0;
  double scale = 1.0;
};

/// Integral of |f(x + iy)|^2 over the real line. The window [-X, X] starts
/// at X = 16 and doubles until the newly added blocks contribute less than
/// rel_tol of the running total; stops with `truncated` set at X = 1e7.
/// A frame shifts the window to centre + [-X, X] * scale.
LineL2 line_l2(const HoloFun& f, double y, const QuadConfig& cfg, const LineFrame& frame = {});

struct HardyNorm {
  /// levels hold (height, sqrt(line_l2)); at_boundary flags a y -> 0 sup.
  SupEstimate estimate;
  std::vector<LineL2> lines;
  bool truncated = false;
};

/// 41 log-spaced heights on [1e-4, 1e3].
std::vector<double> default_hardy_heights();

/// sqrt of the largest line_l2 over the given heights.
HardyNorm hardy_norm(const HoloFun& f, std::span<const double> heights, const QuadConfig& cfg, int jobs = 1,
                     const LineFrame& frame = {});

}  // namespace vlab
