#include "vlab/gallery.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "vlab/errors.hpp"
#include "vlab/rng.hpp"

namespace vlab {

namespace {

constexpr cplx kI{0.0, 1.0};

double parse_real(std::string_view text, const std::string& field) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw ConfigError(field, "expected a real number, got '" + std::string(text) + "'");
  return value;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

cplx parse_complex(std::string_view text, const std::string& field) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return {parse_real(text, field), 0.0};
  return {parse_real(text.substr(0, comma), field), parse_real(text.substr(comma + 1), field)};
}

HoloFun gallery_symbol(std::string_view id) {
  const std::string label(id);
  if (id == "zero") {
    return HoloFun(label, [](cplx) { return cplx{}; }, [](cplx) { return cplx{}; });
  }
  if (id.starts_with("const:")) {
    const cplx c = parse_complex(id.substr(6), "symbol");
    return HoloFun(label, [c](cplx) { return c; }, [](cplx) { return cplx{}; });
  }
  if (id == "cayley") {
    return HoloFun(
        label, [](cplx z) { return (z - kI) / (z + kI); },
        [](cplx z) {
          const cplx d = z + kI;
          return 2.0 * kI / (d * d);
        });
  }
  if (id == "inv") {
    return HoloFun(
        label, [](cplx z) { return kI / (z + kI); },
        [](cplx z) {
          const cplx d = z + kI;
          return -kI / (d * d);
        });
  }
  if (id == "exp_iz") {
    return HoloFun(
        label, [](cplx z) { return std::exp(kI * z); }, [](cplx z) { return kI * std::exp(kI * z); });
  }
  if (id == "exp_isqrtz") {
    // std::sqrt is the principal branch: arg sqrt z in (0, pi/2) on the half-plane.
    return HoloFun(
        label, [](cplx z) { return std::exp(kI * std::sqrt(z)); },
        [](cplx z) {
          const cplx s = std::sqrt(z);
          return kI * std::exp(kI * s) / (2.0 * s);
        });
  }
  throw ConfigError("symbol", "unknown gallery id '" + label + "'");
}

std::string gallery_expression(std::string_view id) {
  if (id == "zero") return "0";
  if (id.starts_with("const:")) {
    const cplx c = parse_complex(id.substr(6), "symbol");
    if (c.imag() == 0.0 && !std::signbit(c.real())) return format_real(c.real());
    std::string out = "(" + format_real(c.real());
    out += std::signbit(c.imag()) ? "-" : "+";
    out += format_real(std::abs(c.imag())) + "i)";
    return out;
  }
  if (id == "cayley") return "(z-i)/(z+i)";
  if (id == "inv") return "i/(z+i)";
  if (id == "exp_iz") return "exp(i*z)";
  if (id == "exp_isqrtz") return "exp(i*sqrt(z))";
  throw ConfigError("symbol", "unknown gallery id '" + std::string(id) + "'");
}

const std::vector<std::string>& gallery_ids() {
  static const std::vector<std::string> ids{"zero", "const:2", "const:1,-0.5", "cayley", "inv", "exp_iz",
                                            "exp_isqrtz"};
  return ids;
}

HoloFun identity_function() {
  return HoloFun("z", [](cplx z) { return z; }, [](cplx) { return cplx{1.0, 0.0}; });
}

double SampleRng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

}  // namespace vlab
