#pragma once

#include <string>
#include <variant>
#include <vector>

#include "vlab/config.hpp"
#include "vlab/criteria.hpp"
#include "vlab/json.hpp"

namespace vlab {

/// One CSV row per level, grid point or radius.
struct Table {
  using Cell = std::variant<std::string, double, long long, bool>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Output of one command.
///
/// JSON layout: {command, config, inputs, results, warnings, wall_ms}.
/// `table` is the CSV view of `results`; both are built from the same
/// doubles and print them with the same shortest round-trip formatting.
struct Report {
  std::string command;
  Json config;
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<std::string> warnings;
  double wall_ms = 0.0;
  Table table;
};

std::string to_json_text(const Report& report);
std::string to_csv_text(const Report& report);
std::string render(const Report& report, OutputFormat format);

/// Finite doubles become JSON numbers; inf and nan become the strings
/// "inf", "-inf", "nan" so every report is valid JSON.
Json number(double v);
/// Text of a double as it appears in both output formats.
std::string format_number(double v);

Json to_json(const Point& p);
Json to_json(const cplx& z);
Json to_json(const SupEstimate& s);
Json to_json(const HardyNorm& h);
Json to_json(const BlochNorm& b);
Json to_json(const OperatorResult& r);
Json to_json(const VanishingReport& v);
Json to_json(const CompactnessProbe& p);
Json to_json(const BoundednessCertificate& c);
Json to_json(const StripDecayReport& s);
Json to_json(const GrowthConstantReport& g);

/// RFC 4180: quote when the field holds a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

}  // namespace vlab
