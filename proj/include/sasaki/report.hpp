#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sasaki {

// One verified quantity. A check normally passes when its residual stays below
// tol; checks flagged expect_violation pass when the residual reaches tol
// (used where a classification predicts that a property fails).
struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tol = 0.0;
  bool expect_violation = false;

  bool pass() const;
};

struct SuiteParams {
  int n = 2;
  int nu = 0;
  double c = 1.0;
  int eps = 1;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  double fd_step = 1e-5;
};

struct CheckReport {
  std::string suite;
  SuiteParams params;
  std::vector<CheckResult> checks;
  double runtime_ms = 0.0;
  // Diagnostics; shown in the text format only.
  std::vector<std::string> notes;

  // Adds a check or raises the residual of an existing one (max reduction).
  void record(const std::string& name, double residual, double tol, bool expect_violation = false);
  void merge(const CheckReport& other, const std::string& prefix = "");
  const CheckResult* find(const std::string& name) const;
  double residual(const std::string& name) const;
  bool pass() const;
};

enum class ReportFormat { kJson, kText };

std::string to_json(const CheckReport& report, bool include_runtime = true);
std::string to_text(const CheckReport& report);
std::string emit_report(const CheckReport& report, ReportFormat format);

}  // namespace sasaki
