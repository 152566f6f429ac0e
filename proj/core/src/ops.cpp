#include "vlab/ops.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vlab/errors.hpp"

namespace vlab {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx deriv1(const HoloFun& f, cplx z, const QuadConfig& cfg) {
  return f.has_derivative() ? f.deriv_fn()(z) : cauchy_derivative(f, Point(z), 1, cfg);
}

std::string point_label(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << p.x() << "," << p.y();
  return os.str();
}

}  // namespace

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::JG: return "jg";
    case OperatorKind::IG: return "ig";
    case OperatorKind::MG: return "mg";
  }
  return "?";
}

OperatorKind parse_operator_kind(std::string_view text) {
  if (text == "jg") return OperatorKind::JG;
  if (text == "ig") return OperatorKind::IG;
  if (text == "mg") return OperatorKind::MG;
  throw ConfigError("op", "expected jg, ig or mg, got '" + std::string(text) + "'");
}

HoloFun extremal_fw(const Point& w) {
  const double scale = std::pow(w.y(), 1.5) / kSqrtPi;
  const cplx pole = std::conj(w.z());
  return HoloFun(
      "fw:" + point_label(w),
      [=](cplx z) {
        const cplx d = z - pole;
        return scale / (d * d);
      },
      [=](cplx z) {
        const cplx d = z - pole;
        return -2.0 * scale / (d * d * d);
      });
}

OperatorResult apply_along(OperatorKind kind, const HoloFun& g, const HoloFun& f, std::span<const Point> path,
                           const QuadConfig& cfg) {
  if (path.empty()) throw ConfigError("path", "must contain at least one point");
  OperatorResult out{cplx{}, 0.0, std::vector<Point>(path.begin(), path.end())};
  if (kind == OperatorKind::MG) {
    const Point& z = path.back();
    out.value = g(z) * f(z);
    return out;
  }
  HoloFun::Fn integrand;
  if (kind == OperatorKind::JG) {
    integrand = [&](cplx zeta) { return f.eval_fn()(zeta) * deriv1(g, zeta, cfg); };
  } else {
    integrand = [&](cplx zeta) { return deriv1(f, zeta, cfg) * g.eval_fn()(zeta); };
  }
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const Integral leg = segment_integral(integrand, path[k], path[k + 1], cfg);
    out.value += leg.value;
    out.quad_error += leg.error;
  }
  return out;
}

OperatorResult apply(OperatorKind kind, const HoloFun& g, const HoloFun& f, const Point& z0, const Point& z,
                     const QuadConfig& cfg) {
  const Point path[2] = {z0, z};
  return apply_along(kind, g, f, path, cfg);
}

std::vector<Point> two_leg_path(const Point& z0, const Point& z) { return {z0, Point(z.x(), z0.y()), z}; }

double ftc_identity_check(const HoloFun& g, const HoloFun& f, const Point& z0, std::span<const Point> sample,
                          const QuadConfig& cfg) {
  const cplx base = f(z0) * g(z0);
  double worst = 0.0;
  for (const Point& z : sample) {
    const cplx j = apply(OperatorKind::JG, g, f, z0, z, cfg).value;
    const cplx i = apply(OperatorKind::IG, g, f, z0, z, cfg).value;
    worst = std::max(worst, std::abs(j + i - f(z) * g(z) + base));
  }
  return worst;
}

cplx target_derivative(const BlochTarget& target, const Point& z, const QuadConfig& cfg) {
  return std::visit(overloaded{[&](const HoloFun& F) { return derivative(F, z, 1, cfg); },
                               [&](const OperatorSpec& s) -> cplx {
                                 switch (s.kind) {
                                   case OperatorKind::JG: return s.f(z) * deriv1(s.g, z.z(), cfg);
                                   case OperatorKind::IG: return deriv1(s.f, z.z(), cfg) * s.g(z);
                                   case OperatorKind::MG:
                                     return deriv1(s.f, z.z(), cfg) * s.g(z) + s.f(z) * deriv1(s.g, z.z(), cfg);
                                 }
                                 return {};
                               }},
                    target);
}

cplx target_value(const BlochTarget& target, const Point& z, const QuadConfig& cfg) {
  return std::visit(overloaded{[&](const HoloFun& F) { return F(z); },
                               [&](const OperatorSpec& s) { return apply(s.kind, s.g, s.f, s.z0, z, cfg).value; }},
                    target);
}

HoloFun operator_function(const OperatorSpec& spec, const QuadConfig& cfg) {
  const BlochTarget target = spec;
  return HoloFun(
      std::string(to_string(spec.kind)) + "[" + spec.g.label() + "](" + spec.f.label() + ")",
      [target, cfg](cplx z) { return target_value(target, Point(z), cfg); },
      [target, cfg](cplx z) { return target_derivative(target, Point(z), cfg); });
}

SupEstimate bloch_seminorm(const BlochTarget& target, const SearchRegion& region, const QuadConfig& cfg,
                           const SupOptions& options) {
  Statistic stat = [&](const Point& z) { return z.y() * std::abs(target_derivative(target, z, cfg)); };
  return estimate_sup(stat, region, options);
}

BlochNorm bloch_norm(const BlochTarget& target, const SearchRegion& region, const QuadConfig& cfg,
                     const SupOptions& options) {
  BlochNorm out;
  out.value_at_i = target_value(target, kImagUnit, cfg);
  out.seminorm = bloch_seminorm(target, region, cfg, options);
  out.value = std::abs(out.value_at_i) + out.seminorm.value;
  out.divergent = out.seminorm.divergent;
  return out;
}

double extremal_statistic(OperatorKind kind, const HoloFun& g, const Point& w, const QuadConfig& cfg) {
  const HoloFun fw = extremal_fw(w);
  switch (kind) {
    case OperatorKind::JG: return w.y() * std::abs(fw(w) * deriv1(g, w.z(), cfg));
    case OperatorKind::IG: return w.y() * std::abs(fw.derivative(w) * g(w));
    case OperatorKind::MG: break;
  }
  throw ConfigError("op", "extremal statistic is defined for jg and ig only");
}

double extremal_statistic_closed_form(OperatorKind kind, const HoloFun& g, const Point& w, const QuadConfig& cfg) {
  switch (kind) {
    case OperatorKind::JG: return std::sqrt(w.y()) * std::abs(deriv1(g, w.z(), cfg)) / (4.0 * kSqrtPi);
    case OperatorKind::IG: return std::abs(g(w)) / (4.0 * kSqrtPi * std::sqrt(w.y()));
    case OperatorKind::MG: break;
  }
  throw ConfigError("op", "extremal statistic is defined for jg and ig only");
}

}  // namespace vlab
