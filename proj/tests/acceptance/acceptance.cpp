// Acceptance suite: one line per criterion, [PASS] or [FAIL], with the
// measured value next to its tolerance. Exit status is the number of failures.
#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <string>

#include "vlab/criteria.hpp"
#include "vlab/expr.hpp"
#include "vlab/gallery.hpp"
#include "vlab/verify.hpp"

using namespace vlab;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);
int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] AC%-2d %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  std::array<char, 512> buf{};
  std::snprintf(buf.data(), buf.size(), f, args...);
  return buf.data();
}

void ac1() {
  const double target = std::sqrt(0.5);
  const Point ws[] = {Point(0, 1),  Point(-3, 0.25), Point(3, 4),   Point(0, 0.25), Point(0, 4),
                      Point(-3, 4), Point(3, 0.25),  Point(1.5, 2), Point(-1, 0.6)};
  double worst = 0;
  for (const auto& w : ws) {
    const double v = hardy_norm(extremal_fw(w), default_hardy_heights(), QuadConfig{}).estimate.value;
    worst = std::max(worst, std::abs(v - target) / target);
  }
  report(1, "extremal-norm constancy", worst <= 0.01, fmt("max |h - 1/sqrt2| / (1/sqrt2) = %.3e (tol 1e-2)", worst));
}

void ac2() {
  QuadConfig cfg;
  const auto pts = seeded_points(1, 100);
  double sym = 0;
  double radius = 0;
  QuadConfig narrow = cfg;
  narrow.circle_ratio = 0.25;
  for (const auto& id : gallery_ids()) {
    const auto e = expr::parse(gallery_expression(id));
    const auto de = expr::differentiate(e);
    const HoloFun f = expr::to_holofun(e).without_derivative();
    for (const auto& p : pts) {
      const cplx d = expr::eval(de, p);
      const cplx c = cauchy_derivative(f, p, 1, cfg);
      sym = std::max(sym, std::abs(d) > 0 ? std::abs(d - c) / std::abs(d) : std::abs(c));
      radius = std::max(radius, std::abs(c - cauchy_derivative(f, p, 1, narrow)));
    }
  }
  report(2, "derivative cross-check", sym <= 1e-8 && radius <= 1e-9,
         fmt("symbolic vs Cauchy rel %.3e (tol 1e-8), radius 0.25 vs 0.5 %.3e (tol 1e-9)", sym, radius));
}

void ac3() {
  QuadConfig cfg;
  std::vector<Point> grid;
  for (double y : {0.25, 0.5, 1.0, 2.0, 4.0})
    for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) grid.emplace_back(x, y);
  double worst = 0;
  for (const char* gid : {"cayley", "exp_iz"}) {
    const HoloFun g = gallery_symbol(gid);
    for (const auto& w : {Point(0, 1), Point(1, 2)}) {
      const HoloFun f = extremal_fw(w);
      const cplx base = f(kImagUnit) * g(kImagUnit);
      for (const auto& z : grid) {
        const cplx j = apply(OperatorKind::JG, g, f, kImagUnit, z, cfg).value;
        const cplx i = apply(OperatorKind::IG, g, f, kImagUnit, z, cfg).value;
        worst = std::max(worst, std::abs(j + i - f(z) * g(z) + base));
      }
    }
  }
  report(3, "FTC operator identity", worst <= 1e-7, fmt("max residual %.3e (tol 1e-7)", worst));
}

void ac4() {
  QuadConfig cfg;
  const auto ws = seeded_points(2, 50);
  double worst = 0;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    const HoloFun g = gallery_symbol(gallery_ids()[k % gallery_ids().size()]);
    const Point& w = ws[k];
    const HoloFun f = extremal_fw(w);
    const double jg_num = w.y() * std::abs(f(w) * g.derivative(w));
    const double jg_ref = std::sqrt(w.y()) * std::abs(g.derivative(w)) / (4 * kSqrtPi);
    const double ig_num = w.y() * std::abs(f.derivative(w) * g(w));
    const double ig_ref = std::abs(g(w)) / (4 * kSqrtPi * std::sqrt(w.y()));
    if (jg_ref > 0) worst = std::max(worst, std::abs(jg_num - jg_ref) / jg_ref);
    else worst = std::max(worst, jg_num);
    if (ig_ref > 0) worst = std::max(worst, std::abs(ig_num - ig_ref) / ig_ref);
    else worst = std::max(worst, ig_num);
    // The library's own evaluation paths must agree too.
    worst = std::max(worst, std::abs(extremal_statistic(OperatorKind::JG, g, w, cfg) - jg_num) / std::max(jg_ref, 1e-300));
    worst = std::max(worst, std::abs(extremal_statistic(OperatorKind::IG, g, w, cfg) - ig_num) / std::max(ig_ref, 1e-300));
  }
  report(4, "extremal identities", worst <= 1e-12, fmt("max relative gap %.3e (tol 1e-12)", worst));
}

void ac5() {
  const SupEstimate s = criterion_m1(gallery_symbol("exp_iz"), SearchRegion{}, QuadConfig{});
  const double target = std::sqrt(0.5) * std::exp(-0.5);
  const bool ok = std::abs(s.value - target) <= 1e-3 && std::abs(s.argmax.y() - 0.5) <= 0.02;
  report(5, "M1 landmark", ok,
         fmt("value %.7f (oracle %.7f +- 1e-3), argmax height %.5f (0.5 +- 0.02)", s.value, target, s.argmax.y()));
}

void ac6() {
  const SupEstimate s = bloch_seminorm(expr::to_holofun(expr::parse("i/(z+i)")), SearchRegion{}, QuadConfig{});
  const bool ok = std::abs(s.value - 0.25) <= 1e-4 && std::abs(s.argmax.x()) <= 0.02 && std::abs(s.argmax.y() - 1) <= 0.02;
  report(6, "Bloch landmark", ok,
         fmt("value %.7f (0.25 +- 1e-4), argmax (%.4f, %.4f) ((0,1) +- 0.02)", s.value, s.argmax.x(), s.argmax.y()));
}

void ac7() {
  SearchRegion region;
  region.y_min = 1e-6;
  const SupEstimate a = criterion_m2(gallery_symbol("const:1"), region, QuadConfig{});
  const SupEstimate b = criterion_m2(gallery_symbol("exp_iz"), region, QuadConfig{});
  const double floor = std::exp(-1.0) / std::sqrt(region.y_min);
  const bool ok = a.divergent && b.divergent && a.value >= floor && b.value >= floor;
  report(7, "divergence detection", ok,
         fmt("const:1 divergent=%d sup %.4g, exp_iz divergent=%d sup %.4g (>= %.4g)", a.divergent, a.value,
             b.divergent, b.value, floor));
}

void ac8() {
  const VanishingReport a =
      boundary_vanishing_check(gallery_symbol("exp_iz"), StatisticForm::M1, SearchRegion{}, QuadConfig{});
  const VanishingReport b =
      boundary_vanishing_check(gallery_symbol("exp_isqrtz"), StatisticForm::M1, SearchRegion{}, QuadConfig{});
  const double ratio = a.sups.back() / a.sups.front();
  const bool ok_a = a.verdict == VanishingVerdict::Vanishing && ratio <= 1e-3;
  const bool ok_b = b.verdict == VanishingVerdict::Nonvanishing && std::abs(b.limit_estimate - 0.5) <= 0.01;
  report(8, "vanishing dichotomy", ok_a && ok_b,
         fmt("exp_iz %s with s(2^-20)/s(1) = %.4e (need <= 1e-3; closed form %.4e); exp_isqrtz %s limit %.5f "
             "(0.50 +- 0.01)",
             std::string(to_string(a.verdict)).c_str(), ratio,
             std::ldexp(1.0, -10) * std::exp(-std::ldexp(1.0, -20)) / (std::sqrt(0.5) * std::exp(-0.5)),
             std::string(to_string(b.verdict)).c_str(), b.limit_estimate));
}

void ac9() {
  const CompactnessProbe a =
      compactness_probe(OperatorKind::JG, gallery_symbol("exp_isqrtz"), 0.0, 16, SearchRegion{}, QuadConfig{});
  const CompactnessProbe b =
      compactness_probe(OperatorKind::JG, gallery_symbol("exp_iz"), 0.0, 16, SearchRegion{}, QuadConfig{});
  const double limit = 1 / (8 * kSqrtPi);
  const double la = a.levels.back().lower_stat;
  const double lb = b.levels.back().lower_stat;
  const bool ok = a.verdict == ProbeVerdict::Obstructed && std::abs(la - limit) <= 0.05 * limit &&
                  b.verdict == ProbeVerdict::Decaying && lb < 1e-3;
  report(9, "compactness probe dichotomy", ok,
         fmt("exp_isqrtz %s L(w_16) %.6f (%.6f +- 5%%); exp_iz %s L(w_16) %.3e (< 1e-3)",
             std::string(to_string(a.verdict)).c_str(), la, limit, std::string(to_string(b.verdict)).c_str(), lb));
}

void ac10() {
  const HoloFun fi = extremal_fw(kImagUnit);
  double change = 0;
  double c0 = 0;
  for (int n = 0; n <= 2; ++n) {
    const GrowthConstantReport g = growth_constant_estimate(fi, n, SearchRegion{}, QuadConfig{});
    change = std::max(change, g.relative_change);
    if (n == 0) c0 = g.value;
  }
  report(10, "growth-constant stability", change < 0.05 && c0 >= 0.199,
         fmt("max relative change %.3e (< 5e-2), C0(f_i) %.5f (>= 0.199)", change, c0));
}

void ac11() {
  const StripDecayReport s = strip_decay_check(extremal_fw(kImagUnit), Strip(0.5, 2), SearchRegion{}, QuadConfig{});
  report(11, "strip decay", s.decaying && s.sups.back() < 1e-6,
         fmt("verdict %s, sup beyond |Re z| > 1e4 = %.3e (< 1e-6)", s.decaying ? "DECAYING" : "NOT-DECAYING",
             s.sups.back()));
}

std::string capture(const std::string& command) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

void ac12() {
  const std::string cmd = std::string("\"") + VLAB_TOOL_PATH + "\" --seed 7 verify 2>/dev/null";
  const std::string a = capture(cmd);
  const std::string b = capture(cmd);
  report(12, "reproducibility", !a.empty() && a == b,
         fmt("two verify runs, seed 7: %zu and %zu bytes, %s", a.size(), b.size(), a == b ? "identical" : "different"));
}

}  // namespace

int main() {
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();
  ac10();
  ac11();
  ac12();
  std::printf("%d of 12 criteria failed\n", failures);
  return failures;
}
