#include <atomic>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vlab/errors.hpp"
#include "vlab/gallery.hpp"
#include "vlab/parallel.hpp"
#include "vlab/rng.hpp"
#include "vlab/sup_search.hpp"

using namespace vlab;
using namespace std::complex_literals;

namespace {

// Central difference on a step well inside the half-plane.
cplx fd_derivative(const HoloFun& f, cplx z) {
  const double h = 1e-5 * z.imag();
  return (f.eval_fn()(z + h) - f.eval_fn()(z - h)) / (2 * h);
}

std::string field_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("Point rejects the real axis and non-finite input") {
  CHECK_THROWS_AS(Point(0.0, 0.0), ConfigError);
  CHECK_THROWS_AS(Point(1.0, -1e-300), ConfigError);
  CHECK_THROWS_AS(Point(NAN, 1.0), ConfigError);
  CHECK_THROWS_AS(Point(0.0, INFINITY), ConfigError);
  const Point p(-2.5, 1e-300);
  CHECK(p.z() == cplx(-2.5, 1e-300));
  CHECK(kImagUnit.z() == 1i);
}

TEST_CASE("Strip bounds") {
  CHECK_THROWS_AS(Strip(0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(Strip(2.0, 1.0), ConfigError);
  const Strip s(0.5, 2.0);
  CHECK(s.contains(Point(1e9, 0.5)));
  CHECK(s.contains(Point(0, 2.0)));
  CHECK_FALSE(s.contains(Point(0, 2.0000001)));
}

TEST_CASE("SearchRegion validation names the field") {
  SearchRegion r;
  r.y_min = 0;
  CHECK(field_of([&] { r.validate(); }) == "region.y_min");
  r = {};
  r.y_max = 1e-7;
  CHECK(field_of([&] { r.validate(); }) == "region.y_max");
  r = {};
  r.x_max = -1;
  CHECK(field_of([&] { r.validate(); }) == "region.x_max");
  r = {};
  r.x_grid = 1;
  CHECK(field_of([&] { r.validate(); }) == "region.x_grid");
  r = {};
  r.y_grid = 0;
  CHECK(field_of([&] { r.validate(); }) == "region.y_grid");
}

TEST_CASE("Region axes") {
  SearchRegion r;
  const auto ys = r.heights();
  REQUIRE(ys.size() == 61);
  CHECK(ys.front() == 1e-6);
  CHECK(ys.back() == 1e6);
  CHECK(ys[30] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t k = 1; k < ys.size(); ++k) CHECK(ys[k] / ys[k - 1] == doctest::Approx(std::pow(10.0, 0.2)));

  const auto xs = r.abscissae();
  REQUIRE(xs.size() == 129);
  CHECK(xs.front() == doctest::Approx(-1e6));
  CHECK(xs.back() == doctest::Approx(1e6));
  CHECK(xs[64] == 0.0);
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(xs[k] == doctest::Approx(-xs[xs.size() - 1 - k]));

  r.x_shift = 3.0;
  CHECK(r.abscissae()[64] == 3.0);
}

TEST_CASE("Degenerate one-point region") {
  SearchRegion r{1.0, 1.0, 0.0, 1, 1, 0.0};
  REQUIRE_NOTHROW(r.validate());
  const auto pts = region_points(r);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == kImagUnit);
}

TEST_CASE("region_points is row-major and pure") {
  SearchRegion r{0.1, 10.0, 5.0, 3, 5, 0.0};
  const auto pts = region_points(r);
  REQUIRE(pts.size() == 15);
  CHECK(pts[0].y() == pts[4].y());
  CHECK(pts[5].y() > pts[4].y());
  CHECK(pts == region_points(r));
}

TEST_CASE("Refined region keeps every original node") {
  SearchRegion r{1e-3, 1e3, 100.0, 7, 9, 0.5};
  const SearchRegion f = r.refined();
  CHECK(f.y_grid == 13);
  CHECK(f.x_grid == 17);
  const auto ys = r.heights();
  const auto fys = f.heights();
  for (std::size_t k = 0; k < ys.size(); ++k) CHECK(fys[2 * k] == ys[k]);
  const auto xs = r.abscissae();
  const auto fxs = f.abscissae();
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(fxs[2 * k] == xs[k]);
}

TEST_CASE("log_space") {
  CHECK(log_space(2.0, 2.0, 1) == std::vector<double>{2.0});
  const auto v = log_space(1e-4, 1e3, 41);
  CHECK(v.front() == 1e-4);
  CHECK(v.back() == 1e3);
  CHECK(v[4] == doctest::Approx(std::pow(10.0, -4.0 + 4 * 7.0 / 40)));
}

TEST_CASE("Gallery values against closed forms") {
  const cplx z(0.7, 1.3);
  CHECK(std::abs(gallery_symbol("zero")(Point(z)) - 0.0) == 0.0);
  CHECK(gallery_symbol("const:2")(Point(z)) == cplx(2.0));
  CHECK(gallery_symbol("const:1,-0.5")(Point(z)) == cplx(1.0, -0.5));
  CHECK(std::abs(gallery_symbol("cayley")(Point(z)) - (z - 1i) / (z + 1i)) < 1e-15);
  CHECK(std::abs(gallery_symbol("inv")(Point(z)) - 1i / (z + 1i)) < 1e-15);
  CHECK(std::abs(gallery_symbol("exp_iz")(Point(z)) - std::exp(1i * z)) < 1e-15);

  // Principal branch: sqrt(i) = e^{i pi/4}.
  const HoloFun s = gallery_symbol("exp_isqrtz");
  const cplx root_i(std::sqrt(0.5), std::sqrt(0.5));
  CHECK(std::abs(s(kImagUnit) - std::exp(1i * root_i)) < 1e-15);
  CHECK(std::abs(s(kImagUnit)) == doctest::Approx(std::exp(-std::sqrt(0.5))));
}

TEST_CASE("Gallery derivatives match finite differences") {
  for (const auto& id : gallery_ids()) {
    const HoloFun g = gallery_symbol(id);
    REQUIRE(g.has_derivative());
    for (cplx z : {cplx(0.3, 0.8), cplx(-2.0, 0.1), cplx(5.0, 3.0)}) {
      INFO(id << " at " << z);
      CHECK(std::abs(g.derivative(Point(z)) - fd_derivative(g, z)) < 1e-7 * (1 + std::abs(g.derivative(Point(z)))));
    }
  }
}

TEST_CASE("Gallery invariants") {
  const HoloFun e = gallery_symbol("exp_iz");
  const HoloFun c = gallery_symbol("cayley");
  SearchRegion r{1e-3, 1e3, 1e3, 31, 65, 0.0};
  for (const auto& p : region_points(r)) {
    CHECK(std::abs(std::abs(e(p)) - std::exp(-p.y())) <= 1e-12);
    CHECK(std::abs(c(p)) < 1.0);
  }
}

TEST_CASE("Gallery errors and parsing") {
  CHECK(field_of([] { gallery_symbol("nope"); }) == "symbol");
  CHECK(field_of([] { gallery_symbol("const:abc"); }) == "symbol");
  CHECK(parse_complex("1.5,-2") == cplx(1.5, -2.0));
  CHECK(parse_complex("-3") == cplx(-3.0, 0.0));
  CHECK_THROWS_AS(parse_complex("1,2,3", "z"), ConfigError);
  CHECK(gallery_expression("cayley") == "(z-i)/(z+i)");
}

TEST_CASE("HoloFun combinators") {
  const HoloFun f = gallery_symbol("exp_iz");
  const HoloFun g = gallery_symbol("inv");
  const HoloFun h = HoloFun::linear_combination(2.0, f, 1i, g);
  const Point p(0.4, 0.9);
  CHECK(std::abs(h(p) - (2.0 * f(p) + 1i * g(p))) < 1e-15);
  CHECK(std::abs(h.derivative(p) - (2.0 * f.derivative(p) + 1i * g.derivative(p))) < 1e-15);
  CHECK_FALSE(HoloFun::linear_combination(1.0, f.without_derivative(), 1.0, g).has_derivative());
  CHECK_THROWS_AS(f.without_derivative().derivative(p), std::logic_error);

  const HoloFun t = f.translated(1.25);
  CHECK(std::abs(t(p) - f(Point(1.65, 0.9))) < 1e-15);
  CHECK(std::abs(t.derivative(p) - f.derivative(Point(1.65, 0.9))) < 1e-15);
}

TEST_CASE("SampleRng is the documented 64-bit LCG") {
  SampleRng rng(42);
  std::uint64_t x = 42;
  for (int k = 0; k < 5; ++k) {
    x = 6364136223846793005ULL * x + 1442695040888963407ULL;
    CHECK(rng.next() == x);
  }
  SampleRng a(7);
  SampleRng b(7);
  for (int k = 0; k < 100; ++k) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
  }
  SampleRng c(9);
  for (int k = 0; k < 100; ++k) {
    const double v = c.log_uniform(0.05, 4.0);
    CHECK(v >= 0.05);
    CHECK(v <= 4.0);
  }
}

TEST_CASE("parallel_for visits each index once and rethrows") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }),
                  std::runtime_error);
}

TEST_CASE("golden_maximize") {
  const auto r = golden_maximize([](double t) { return -(t - 0.3) * (t - 0.3); }, -1.0, 2.0, 1e-12);
  CHECK(r.argmax == doctest::Approx(0.3).epsilon(1e-9));
  int visits = 0;
  golden_maximize([](double t) { return t; }, 0.0, 1.0, 1e-6, [&](double, double) { ++visits; });
  CHECK(visits > 10);
}

TEST_CASE("estimate_sup finds an interior maximum") {
  // y/(y+1)^2 * 1/(1+x^2): max 1/4 at (0, 1).
  const Statistic stat = [](const Point& p) { return p.y() / ((p.y() + 1) * (p.y() + 1)) / (1 + p.x() * p.x()); };
  const SupEstimate s = estimate_sup(stat, SearchRegion{});
  CHECK(s.value == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(s.argmax.x() == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(s.argmax.y() == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_FALSE(s.divergent);
  CHECK_FALSE(s.at_boundary);
  REQUIRE(s.levels.size() == 4);
  for (std::size_t k = 1; k < s.levels.size(); ++k) CHECK(s.levels[k].sup >= s.levels[k - 1].sup);
}

TEST_CASE("estimate_sup flags growth towards the boundary") {
  const SupEstimate s = estimate_sup([](const Point& p) { return 1 / std::sqrt(p.y()); }, SearchRegion{});
  CHECK(s.divergent);
  CHECK(s.at_boundary);
  CHECK(s.value == doctest::Approx(1e3));

  const SupEstimate n = estimate_sup([](const Point&) { return NAN; }, SearchRegion{});
  CHECK(std::isinf(n.value));
  CHECK(n.divergent);
}

TEST_CASE("estimate_sup seeds splice into the grid") {
  // A spike of width 1e-9 around an off-grid point is found only through the seed.
  const Point seed(0.123456789, 0.0345);
  const Statistic stat = [&](const Point& p) {
    return std::abs(p.x() - seed.x()) < 1e-9 && std::abs(p.y() - seed.y()) < 1e-9 ? 1.0 : 0.0;
  };
  CHECK(estimate_sup(stat, SearchRegion{}).value == 0.0);
  SupOptions o;
  o.seeds = {seed};
  CHECK(estimate_sup(stat, SearchRegion{}, o).value == 1.0);
}

TEST_CASE("estimate_sup is independent of the thread count") {
  const Statistic stat = [](const Point& p) { return std::sqrt(p.y()) * std::exp(-p.y()) / (1 + 0.01 * p.x() * p.x()); };
  SupOptions one;
  SupOptions four;
  four.jobs = 4;
  const SupEstimate a = estimate_sup(stat, SearchRegion{}, one);
  const SupEstimate b = estimate_sup(stat, SearchRegion{}, four);
  CHECK(a.value == b.value);
  CHECK(a.argmax == b.argmax);
}
