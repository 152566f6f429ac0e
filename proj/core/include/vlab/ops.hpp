#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "vlab/holofun.hpp"
#include "vlab/quad.hpp"
#include "vlab/sup_search.hpp"

namespace vlab {

/// JG: f -> int_{z0}^{z} f g'.  IG: f -> int_{z0}^{z} f' g.  MG: f -> g f.
enum class OperatorKind { JG, IG, MG };

/// "jg" | "ig" | "mg".
std::string_view to_string(OperatorKind kind);
OperatorKind parse_operator_kind(std::string_view text);

struct OperatorResult {
  cplx value;
  double quad_error;
  std::vector<Point> path;
};

/// Normalised kernel (Im w)^{3/2} / (sqrt(pi) (z - conj w)^2) concentrating at w.
/// Its pole conj(w) lies in the lower half-plane.
HoloFun extremal_fw(const Point& w);

/// Closed-form |f_w| on the half-plane, H^2 norm of f_w: 1/sqrt(2).
inline constexpr double kExtremalHardyNorm = 0.70710678118654752440;

/// Straight segment z0 -> z for JG/IG; pointwise product for MG.
OperatorResult apply(OperatorKind kind, const HoloFun& g, const HoloFun& f, const Point& z0, const Point& z,
                     const QuadConfig& cfg);

/// Same integral along a polyline. path.front() is z0, path.back() is z.
OperatorResult apply_along(OperatorKind kind, const HoloFun& g, const HoloFun& f, std::span<const Point> path,
                           const QuadConfig& cfg);

/// z0 -> Re z + i Im z0 -> z: a horizontal leg, then a vertical one.
std::vector<Point> two_leg_path(const Point& z0, const Point& z);

/// max over sample of |J_g f + I_g f - g f + f(z0) g(z0)|.
double ftc_identity_check(const HoloFun& g, const HoloFun& f, const Point& z0, std::span<const Point> sample,
                          const QuadConfig& cfg);

/// An operator applied to a fixed f with a fixed base point.
struct OperatorSpec {
  OperatorKind kind;
  HoloFun g;
  HoloFun f;
  Point z0 = kImagUnit;
};

/// Something whose Bloch norm can be measured.
using BlochTarget = std::variant<HoloFun, OperatorSpec>;

/// F'(z). For JG this is f g', for IG f' g (no quadrature), for MG f' g + f g'.
cplx target_derivative(const BlochTarget& target, const Point& z, const QuadConfig& cfg);
cplx target_value(const BlochTarget& target, const Point& z, const QuadConfig& cfg);

/// z -> (L f)(z) as a HoloFun whose derivative channel is the exact one above.
HoloFun operator_function(const OperatorSpec& spec, const QuadConfig& cfg);

/// sup Im z |F'(z)| over the region.
SupEstimate bloch_seminorm(const BlochTarget& target, const SearchRegion& region, const QuadConfig& cfg,
                           const SupOptions& options = {});

struct BlochNorm {
  double value;
  cplx value_at_i;
  SupEstimate seminorm;
  bool divergent;
};

/// |F(i)| + B(F).
BlochNorm bloch_norm(const BlochTarget& target, const SearchRegion& region, const QuadConfig& cfg,
                     const SupOptions& options = {});

/// Im w |f_w(w) g'(w)| (JG) or Im w |f_w'(w) g(w)| (IG), evaluated through f_w.
double extremal_statistic(OperatorKind kind, const HoloFun& g, const Point& w, const QuadConfig& cfg);

/// The same quantity reduced by hand:
/// (Im w)^{1/2} |g'(w)| / (4 sqrt(pi))  or  |g(w)| / (4 sqrt(pi) (Im w)^{1/2}).
double extremal_statistic_closed_form(OperatorKind kind, const HoloFun& g, const Point& w, const QuadConfig& cfg);

}  // namespace vlab
