#include "steklov/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "steklov/errors.hpp"
#include "steklov/jsonw.hpp"

namespace steklov {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// CSV field quoting per RFC 4180: quote when the field contains a comma,
// a quote, or a newline; embedded quotes are doubled.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string params_compact(const std::vector<std::pair<std::string, std::string>>& params) {
  std::string out;
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) out += ';';
    out += params[i].first;
    out += '=';
    out += params[i].second;
  }
  return out;
}

}  // namespace

double InequalityReport::relative_slack() const {
  const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  return slack() / scale;
}

InequalityReport make_report(std::string name,
                             std::vector<std::pair<std::string, std::string>> params,
                             std::string display, std::string inputs, double lhs,
                             double rhs, double tolerance, double sharp_tolerance) {
  require(std::isfinite(lhs) && std::isfinite(rhs), ErrorKind::Internal,
          "inequality report '" + name + "' has a non-finite side");
  require(std::isfinite(tolerance) && tolerance >= 0.0, ErrorKind::Parameter,
          "tolerance must be finite and nonnegative");
  require(std::isfinite(sharp_tolerance) && sharp_tolerance >= 0.0, ErrorKind::Parameter,
          "sharp tolerance must be finite and nonnegative");
  InequalityReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.display = std::move(display);
  r.inputs = std::move(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.sharp_tolerance = sharp_tolerance;
  r.pass = lhs <= rhs * (1.0 + tolerance) + tolerance;
  r.sharp = r.pass && std::fabs(r.relative_slack()) <= sharp_tolerance;
  return r;
}

InequalityReport make_report_geq(std::string name,
                                 std::vector<std::pair<std::string, std::string>> params,
                                 std::string display, std::string inputs,
                                 double displayed_lhs, double displayed_rhs,
                                 double tolerance, double sharp_tolerance) {
  params.push_back(param("display_lhs", displayed_lhs));
  params.push_back(param("display_rhs", displayed_rhs));
  return make_report(std::move(name), std::move(params), std::move(display),
                     std::move(inputs), displayed_rhs, displayed_lhs, tolerance,
                     sharp_tolerance);
}

std::pair<std::string, std::string> param(const std::string& key, double value) {
  return {key, format_double(value)};
}

std::pair<std::string, std::string> param(const std::string& key, int value) {
  return {key, std::to_string(value)};
}

std::pair<std::string, std::string> param(const std::string& key, const std::string& value) {
  return {key, value};
}

std::string to_json(const ReportEnvelope& envelope) {
  JsonWriter w;
  w.begin_object();
  w.key("schema_version");
  w.value(1);
  w.key("tool");
  w.value(envelope.tool);
  w.key("tool_version");
  w.value(envelope.tool_version);
  if (!envelope.timestamp.empty()) {
    w.key("timestamp");
    w.value(envelope.timestamp);
  }
  w.key("config");
  w.begin_object();
  for (const auto& [k, v] : envelope.config) {
    w.key(k);
    w.value(v);
  }
  w.end_object();
  w.key("reports");
  w.begin_array();
  for (const auto& r : envelope.reports) {
    w.begin_object();
    w.key("name");
    w.value(r.name);
    w.key("params");
    w.begin_object();
    for (const auto& [k, v] : r.params) {
      w.key(k);
      w.value(v);
    }
    w.end_object();
    w.key("display");
    w.value(r.display);
    w.key("inputs");
    w.value(r.inputs);
    w.key("lhs");
    w.value(r.lhs);
    w.key("rhs");
    w.value(r.rhs);
    w.key("slack");
    w.value(r.slack());
    w.key("relative_slack");
    w.value(r.relative_slack());
    w.key("tolerance");
    w.value(r.tolerance);
    w.key("sharp_tolerance");
    w.value(r.sharp_tolerance);
    w.key("pass");
    w.value(r.pass);
    w.key("sharp");
    w.value(r.sharp);
    w.end_object();
  }
  w.end_array();
  w.key("summary");
  w.begin_object();
  w.key("total");
  w.value(static_cast<long long>(envelope.reports.size()));
  long long passed = 0, sharp = 0;
  for (const auto& r : envelope.reports) {
    if (r.pass) ++passed;
    if (r.sharp) ++sharp;
  }
  w.key("passed");
  w.value(passed);
  w.key("sharp");
  w.value(sharp);
  w.end_object();
  w.end_object();
  return w.take();
}

std::string to_csv(const ReportEnvelope& envelope) {
  std::string out =
      "name,params,display,inputs,lhs,rhs,slack,relative_slack,tolerance,"
      "sharp_tolerance,pass,sharp\n";
  for (const auto& r : envelope.reports) {
    out += csv_field(r.name);
    out += ',';
    out += csv_field(params_compact(r.params));
    out += ',';
    out += csv_field(r.display);
    out += ',';
    out += csv_field(r.inputs);
    out += ',';
    out += format_double(r.lhs);
    out += ',';
    out += format_double(r.rhs);
    out += ',';
    out += format_double(r.slack());
    out += ',';
    out += format_double(r.relative_slack());
    out += ',';
    out += format_double(r.tolerance);
    out += ',';
    out += format_double(r.sharp_tolerance);
    out += ',';
    out += r.pass ? "true" : "false";
    out += ',';
    out += r.sharp ? "true" : "false";
    out += '\n';
  }
  return out;
}

}  // namespace steklov
