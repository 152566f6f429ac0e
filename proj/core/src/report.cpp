#include "vlab/report.hpp"

#include <cmath>

namespace vlab {

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string format_number(double v) {
  const Json j = number(v);
  return j.is_string() ? j.get<std::string>() : j.dump();
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_json_text(const Report& report) {
  Json j;
  j["command"] = report.command;
  j["config"] = report.config;
  j["inputs"] = report.inputs;
  j["results"] = report.results;
  j["warnings"] = report.warnings;
  j["wall_ms"] = number(report.wall_ms);
  return j.dump(2) + "\n";
}

std::string to_csv_text(const Report& report) {
  std::string out;
  auto line = [&](const auto& cells, auto&& text) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += csv_escape(text(cells[k]));
    }
    out += "\r\n";
  };
  line(report.table.columns, [](const std::string& s) { return s; });
  for (const auto& row : report.table.rows) {
    line(row, [](const Table::Cell& cell) {
      return std::visit(
          [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) return v;
            else if constexpr (std::is_same_v<T, double>) return format_number(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return std::to_string(v);
          },
          cell);
    });
  }
  return out;
}

std::string render(const Report& report, OutputFormat format) {
  return format == OutputFormat::Json ? to_json_text(report) : to_csv_text(report);
}

Json to_json(const Point& p) { return Json{{"x", number(p.x())}, {"y", number(p.y())}}; }

Json to_json(const cplx& z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

Json to_json(const SupEstimate& s) {
  Json levels = Json::array();
  for (const auto& l : s.levels)
    levels.push_back({{"scale", number(l.scale)}, {"sup", number(l.sup)}, {"argmax", to_json(l.argmax)}});
  return Json{{"value", number(s.value)},
              {"argmax", to_json(s.argmax)},
              {"divergent", s.divergent},
              {"at_boundary", s.at_boundary},
              {"levels", levels}};
}

Json to_json(const HardyNorm& h) {
  Json lines = Json::array();
  for (const auto& l : h.lines)
    lines.push_back({{"height", number(l.height)},
                     {"l2", number(l.value)},
                     {"error", number(l.error)},
                     {"extent", number(l.extent)},
                     {"truncated", l.truncated}});
  return Json{{"estimate", to_json(h.estimate)}, {"truncated", h.truncated}, {"lines", lines}};
}

Json to_json(const BlochNorm& b) {
  return Json{{"value", number(b.value)},
              {"value_at_i", to_json(b.value_at_i)},
              {"divergent", b.divergent},
              {"seminorm", to_json(b.seminorm)}};
}

Json to_json(const OperatorResult& r) {
  Json path = Json::array();
  for (const auto& p : r.path) path.push_back(to_json(p));
  return Json{{"value", to_json(r.value)},
              {"abs", number(std::abs(r.value))},
              {"quad_error", number(r.quad_error)},
              {"path", path}};
}

Json to_json(const VanishingReport& v) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < v.radii.size(); ++k)
    rows.push_back({{"k", k}, {"radius", number(v.radii[k])}, {"sup", number(v.sups[k])}, {"argmax", to_json(v.argmax[k])}});
  return Json{{"form", std::string(to_string(v.form))},
              {"verdict", std::string(to_string(v.verdict))},
              {"limit_estimate", number(v.limit_estimate)},
              {"divergent", v.divergent},
              {"height_floor", number(v.height_floor)},
              {"radii", rows}};
}

Json to_json(const CompactnessProbe& p) {
  Json levels = Json::array();
  for (std::size_t n = 0; n < p.levels.size(); ++n) {
    const auto& l = p.levels[n];
    levels.push_back({{"n", n + 1},
                      {"w", to_json(l.w)},
                      {"lower_stat", number(l.lower_stat)},
                      {"lower_stat_numeric", number(l.lower_stat_numeric)},
                      {"full_norm", number(l.full_norm)},
                      {"nonconverged", l.nonconverged}});
  }
  return Json{{"op", std::string(to_string(p.kind))},
              {"x_anchor", number(p.x_anchor)},
              {"verdict", std::string(to_string(p.verdict))},
              {"levels", levels}};
}

namespace {

Json to_json(const LowerBound& b) {
  return Json{{"value", number(b.value)}, {"w", vlab::to_json(b.w)}, {"scale", number(b.scale)}};
}

}  // namespace

Json to_json(const BoundednessCertificate& c) {
  return Json{{"op", std::string(to_string(c.kind))},
              {"verdict", std::string(to_string(c.verdict))},
              {"criterion", std::string(c.kind == OperatorKind::JG ? "m1" : "m2")},
              {"criterion_estimate", to_json(c.criterion)},
              {"lower_bound", to_json(c.lower_bound)},
              {"lower_bound_previous", to_json(c.lower_bound_previous)},
              {"lower_bound_grows", c.lower_bound_grows},
              {"ratio", number(c.ratio)},
              {"sup_abs_g", to_json(c.sup_abs_g)},
              {"bloch_g", to_json(c.bloch_g)}};
}

Json to_json(const StripDecayReport& s) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < s.cutoffs.size(); ++k)
    rows.push_back({{"cutoff", number(s.cutoffs[k])}, {"sup", number(s.sups[k])}});
  return Json{{"strip", {{"a", number(s.strip.lower())}, {"b", number(s.strip.upper())}}},
              {"verdict", s.decaying ? "DECAYING" : "NOT-DECAYING"},
              {"cutoffs", rows}};
}

Json to_json(const GrowthConstantReport& g) {
  return Json{{"order", g.order},
              {"hardy_norm", number(g.hardy_norm)},
              {"value", number(g.value)},
              {"argmax", to_json(g.argmax)},
              {"refined_value", number(g.refined_value)},
              {"relative_change", number(g.relative_change)}};
}

}  // namespace vlab
