#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "vlab/errors.hpp"
#include "vlab/expr.hpp"
#include "vlab/gallery.hpp"
#include "vlab/quad.hpp"
#include "vlab/rng.hpp"
#include "vlab/verify.hpp"

using namespace vlab;
using namespace vlab::expr;
using namespace std::complex_literals;

namespace {

cplx ev(const std::string& text, cplx z) { return eval(parse(text), z); }

// Random trees over the whole grammar. Depth-limited; leaves are z or
// small literals, including negative and complex ones.
Expr random_expr(SampleRng& rng, int depth) {
  const auto pick = [&](int n) { return static_cast<int>(rng.next() >> 33) % n; };
  if (depth == 0 || pick(4) == 0) {
    switch (pick(5)) {
      case 0: return variable();
      case 1: return constant(static_cast<double>(pick(9) + 1));
      case 2: return constant(cplx(0, pick(3) + 1));
      case 3: return constant(cplx(-0.5 * (pick(4) + 1), 0));
      default: return constant(cplx(pick(3) + 1, -(pick(3) + 1)));
    }
  }
  switch (pick(8)) {
    case 0: return std::make_shared<const Node>(Negate{random_expr(rng, depth - 1)});
    case 1: return std::make_shared<const Node>(Apply{static_cast<Func>(pick(5)), random_expr(rng, depth - 1)});
    case 2: return std::make_shared<const Node>(Binary{BinaryOp::Pow, random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    default:
      return std::make_shared<const Node>(
          Binary{static_cast<BinaryOp>(pick(4)), random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
  }
}

}  // namespace

TEST_CASE("Precedence and associativity") {
  const cplx z(0.3, 0.7);
  CHECK(std::abs(ev("1+2*z", z) - (1.0 + 2.0 * z)) < 1e-15);
  CHECK(std::abs(ev("2^3^2", z) - 512.0) < 1e-12);
  CHECK(std::abs(ev("-z^2", z) - (-(z * z))) < 1e-15);
  CHECK(std::abs(ev("(-z)^2", z) - z * z) < 1e-15);
  CHECK(std::abs(ev("z-1-z", z) - (-1.0)) < 1e-15);
  CHECK(std::abs(ev("8/2/2", z) - 2.0) < 1e-15);
  CHECK(std::abs(ev("2^-1", z) - 0.5) < 1e-15);
  CHECK(std::abs(ev("3i*z", z) - 3i * z) < 1e-15);
  CHECK(std::abs(ev("i", z) - 1i) == 0.0);
  CHECK(std::abs(ev("(1-2i)", z) - cplx(1, -2)) == 0.0);
  CHECK(std::abs(ev("2.5e-3", z) - 0.0025) == 0.0);
}

TEST_CASE("Functions use principal branches") {
  const cplx z(-1.0, 1e-3);
  CHECK(std::abs(ev("log(z)", z) - std::log(z)) < 1e-14);
  CHECK(std::abs(ev("sqrt(z)", z) - std::sqrt(z)) < 1e-14);
  CHECK(ev("sqrt(z)", z).imag() > 0);
  CHECK(std::abs(ev("exp(i*z)", z) - std::exp(1i * z)) < 1e-14);
  CHECK(std::abs(ev("sin(z)*cos(z)", z) - std::sin(z) * std::cos(z)) < 1e-14);
  CHECK(std::abs(ev("z^0.5", z) - std::exp(0.5 * std::log(z))) < 1e-14);
  CHECK(std::abs(ev("z^3", z) - z * z * z) < 1e-15);
}

TEST_CASE("Evaluation errors") {
  CHECK_THROWS_AS(ev("1/(z-z)", 1i), EvalError);
  CHECK_THROWS_AS(ev("log(z-i)", 1i), EvalError);
  CHECK_THROWS_AS(ev("sqrt(z-i)", 1i), EvalError);
  CHECK_NOTHROW(ev("1/z", 1i));
}

TEST_CASE("Printer") {
  CHECK(print(parse("1+2*z")) == "1 + 2*z");
  CHECK(print(parse("z-(1-z)")) == "z - (1 - z)");
  CHECK(print(parse("(-z)^2")) == "(-z)^2");
  CHECK(print(parse("2^3^2")) == "2^3^2");
  CHECK(print(parse("(2^3)^2")) == "(2^3)^2");
  CHECK(print(parse("(1-2i)*z")) == "(1-2i)*z");
  CHECK(print(parse("2.5e-3*z")) == "0.0025*z");
  CHECK(print(parse("exp(i*sqrt(z))")) == "exp(i*sqrt(z))");
  CHECK(print(constant(cplx(-3, 0))) == "(-3)");
  CHECK(print(constant(cplx(0, 2))) == "2i");
}

TEST_CASE("Syntax errors carry offset and expected tokens") {
  auto fails = [](const std::string& text) -> SyntaxError {
    try {
      parse(text);
    } catch (const SyntaxError& e) {
      return e;
    }
    FAIL("no error for " << text);
    return SyntaxError(0, {}, "");
  };
  const auto a = fails("z +");
  CHECK(a.offset() == 3);
  CHECK(a.expected().count("z") == 1);
  CHECK(fails("foo(z)").offset() == 0);
  const auto b = fails("(z");
  CHECK(b.offset() == 2);
  CHECK(b.expected() == std::set<std::string>{")"});
  CHECK(fails("z)").offset() == 1);
  CHECK(fails("").offset() == 0);
  CHECK(fails("1e400").offset() == 0);
}

TEST_CASE("Folding constructors") {
  CHECK(structurally_equal(binary(BinaryOp::Add, constant(2.0), constant(3.0)), constant(5.0)));
  CHECK(structurally_equal(binary(BinaryOp::Add, variable(), constant(0.0)), variable()));
  CHECK(structurally_equal(binary(BinaryOp::Mul, constant(1.0), variable()), variable()));
  CHECK(structurally_equal(binary(BinaryOp::Mul, constant(0.0), variable()), constant(0.0)));
  CHECK(structurally_equal(binary(BinaryOp::Pow, variable(), constant(1.0)), variable()));
  CHECK(structurally_equal(binary(BinaryOp::Pow, variable(), constant(0.0)), constant(1.0)));
  // parse itself does not fold.
  CHECK_FALSE(structurally_equal(parse("2*3"), constant(6.0)));
  CHECK(depends_on_z(parse("exp(z)")));
  CHECK_FALSE(depends_on_z(parse("exp(2)")));
}

TEST_CASE("Derivatives against closed forms") {
  const cplx z(0.4, 0.9);
  struct Case {
    const char* text;
    cplx expected;
  };
  const Case cases[] = {
      {"z^2", 2.0 * z},
      {"1/z", -1.0 / (z * z)},
      {"exp(i*z)", 1i * std::exp(1i * z)},
      {"sqrt(z)", 0.5 / std::sqrt(z)},
      {"log(z)", 1.0 / z},
      {"sin(z)", std::cos(z)},
      {"cos(z)", -std::sin(z)},
      {"(z-i)/(z+i)", 2i / ((z + 1i) * (z + 1i))},
      {"z^z", std::pow(z, z) * (std::log(z) + 1.0)},
      {"exp(i*sqrt(z))", 1i * std::exp(1i * std::sqrt(z)) / (2.0 * std::sqrt(z))},
  };
  for (const auto& c : cases) {
    INFO(c.text);
    CHECK(std::abs(eval(differentiate(parse(c.text)), z) - c.expected) < 1e-13 * (1 + std::abs(c.expected)));
  }
}

TEST_CASE("Gallery expressions agree with the gallery closed forms") {
  const auto pts = seeded_points(11, 50);
  for (const auto& id : gallery_ids()) {
    const HoloFun g = gallery_symbol(id);
    const Expr e = parse(gallery_expression(id));
    const Expr de = differentiate(e);
    for (const auto& p : pts) {
      INFO(id);
      CHECK(std::abs(eval(e, p) - g(p)) < 1e-13 * (1 + std::abs(g(p))));
      CHECK(std::abs(eval(de, p) - g.derivative(p)) < 1e-12 * (1 + std::abs(g.derivative(p))));
    }
  }
}

TEST_CASE("Property: print/parse round trip on random trees") {
  SampleRng rng(2024);
  for (int k = 0; k < 2000; ++k) {
    const Expr e = random_expr(rng, 4);
    const std::string text = print(e);
    INFO(text);
    const Expr back = parse(text);
    CHECK(structurally_equal(back, e));
    CHECK(print(back) == text);
  }
}

TEST_CASE("Property: symbolic derivative matches Cauchy on random entire trees") {
  // Sums, products, integer powers and exp/sin/cos only: entire functions,
  // so no branch cut or pole can fall inside a Cauchy circle.
  SampleRng rng(77);
  const auto pick = [&](int n) { return static_cast<int>(rng.next() >> 33) % n; };
  std::function<Expr(int)> entire = [&](int depth) -> Expr {
    if (depth == 0 || pick(3) == 0) return pick(2) ? variable() : constant(cplx(0.5 * (pick(4) + 1), pick(3) - 1));
    switch (pick(6)) {
      case 0: return negate(entire(depth - 1));
      case 1: return apply(static_cast<Func>(std::array{0, 3, 4}[static_cast<std::size_t>(pick(3))]), entire(depth - 1));
      case 2: return binary(BinaryOp::Pow, entire(depth - 1), constant(static_cast<double>(pick(3) + 2)));
      case 3: return binary(BinaryOp::Mul, entire(depth - 1), entire(depth - 1));
      default: return binary(pick(2) ? BinaryOp::Add : BinaryOp::Sub, entire(depth - 1), entire(depth - 1));
    }
  };
  std::vector<Point> pts;
  for (const auto& p : seeded_points(5, 10)) pts.emplace_back(p.x() / 4, p.y() / 4);
  QuadConfig cfg;
  for (int k = 0; k < 300; ++k) {
    const Expr e = entire(3);
    const Expr de = differentiate(e);
    const HoloFun f = to_holofun(e).without_derivative();
    for (const auto& p : pts) {
      const cplx d = eval(de, p);
      // The circle rule's error scale: max |f| on the circle over its radius.
      const double r = cfg.circle_ratio * p.y();
      double peak = 0;
      for (int k = 0; k < 64; ++k)
        peak = std::max(peak, std::abs(eval(e, Point(p.z() + std::polar(r, k * std::numbers::pi / 32)))));
      const double scale = 1 + std::abs(d) + peak / r;
      INFO(print(e) << " at " << p.z());
      CHECK(std::abs(d - cauchy_derivative(f, p, 1, cfg)) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("to_holofun carries the symbolic derivative") {
  const HoloFun f = to_holofun(parse("z^3"), "cube");
  CHECK(f.label() == "cube");
  REQUIRE(f.has_derivative());
  CHECK(std::abs(f.derivative(Point(1, 1)) - 3.0 * cplx(1, 1) * cplx(1, 1)) < 1e-14);
}
