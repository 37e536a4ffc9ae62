#pragma once

#include <string>
#include <utility>
#include <vector>

namespace steklov {

// Outcome of one scalar inequality check.  The recorded claim is always
// normalized to `lhs <= rhs`, so `pass` has a single meaning regardless of
// how the original statement was oriented; `display` spells out the statement
// in its natural orientation for readers.  `slack` is nonnegative exactly
// when the inequality holds with room to spare, and `sharp` flags numerical
// equality within `sharp_tolerance`.
struct InequalityReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // ordered key/value
  std::string display;
  std::string inputs;  // provenance of the spectra or matrices involved
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  double sharp_tolerance = 0.0;
  bool pass = false;
  bool sharp = false;

  double slack() const { return rhs - lhs; }
  double relative_slack() const;
};

// Builds a report and evaluates pass/sharp:
//   pass  <=>  lhs <= rhs * (1 + tolerance) + tolerance
//   sharp <=>  pass and |relative slack| <= sharp_tolerance
InequalityReport make_report(std::string name,
                             std::vector<std::pair<std::string, std::string>> params,
                             std::string display, std::string inputs, double lhs,
                             double rhs, double tolerance, double sharp_tolerance);

// For statements displayed as `displayed_lhs >= displayed_rhs`: swaps the
// sides into the normalized lhs <= rhs slots and records the displayed values
// under params display_lhs / display_rhs.
InequalityReport make_report_geq(std::string name,
                                 std::vector<std::pair<std::string, std::string>> params,
                                 std::string display, std::string inputs,
                                 double displayed_lhs, double displayed_rhs,
                                 double tolerance, double sharp_tolerance);

std::pair<std::string, std::string> param(const std::string& key, double value);
std::pair<std::string, std::string> param(const std::string& key, int value);
std::pair<std::string, std::string> param(const std::string& key, const std::string& value);

// A batch of reports plus run metadata, serialized to JSON or CSV with fixed
// key order and 17-significant-digit numbers: reruns with equal inputs and an
// empty timestamp produce byte-identical output.
struct ReportEnvelope {
  std::string tool = "steklov-lab";
  std::string tool_version = "1.0.0";
  std::string timestamp;  // empty = omitted
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<InequalityReport> reports;
};

std::string to_json(const ReportEnvelope& envelope);
std::string to_csv(const ReportEnvelope& envelope);

}  // namespace steklov
