#include "sasaki/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace sasaki {

bool CheckResult::pass() const {
  if (!std::isfinite(max_residual)) return false;
  return expect_violation ? max_residual >= tol : max_residual < tol;
}

void CheckReport::record(const std::string& name, double residual, double tol,
                         bool expect_violation) {
  for (CheckResult& c : checks) {
    if (c.name == name) {
      // NaN must stick so that a broken sample cannot be hidden by the max.
      if (std::isnan(residual) || std::isnan(c.max_residual)) {
        c.max_residual = std::nan("");
      } else {
        c.max_residual = std::max(c.max_residual, residual);
      }
      return;
    }
  }
  checks.push_back({name, residual, tol, expect_violation});
}

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (const CheckResult& c : other.checks) record(prefix + c.name, c.max_residual, c.tol, c.expect_violation);
  for (const std::string& note : other.notes) notes.push_back(prefix + note);
}

const CheckResult* CheckReport::find(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

double CheckReport::residual(const std::string& name) const {
  const CheckResult* c = find(name);
  return c ? c->max_residual : std::nan("");
}

bool CheckReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

std::string to_json(const CheckReport& report, bool include_runtime) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  nlohmann::ordered_json params;
  params["n"] = report.params.n;
  params["nu"] = report.params.nu;
  params["c"] = report.params.c;
  params["eps"] = report.params.eps;
  params["seed"] = report.params.seed;
  params["tol"] = report.params.tol ? nlohmann::ordered_json(*report.params.tol) : nullptr;
  params["fd_step"] = report.params.fd_step;
  j["params"] = params;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["max_residual"] = c.max_residual;
    cj["tol"] = c.tol;
    cj["pass"] = c.pass();
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["pass"] = report.pass();
  if (include_runtime) j["runtime_ms"] = report.runtime_ms;
  return j.dump(2) + "\n";
}

std::string to_text(const CheckReport& report) {
  std::ostringstream out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "suite %s  n=%d nu=%d c=%.17g eps=%d seed=%llu\n",
                report.suite.c_str(), report.params.n, report.params.nu, report.params.c,
                report.params.eps, static_cast<unsigned long long>(report.params.seed));
  out << buf;
  for (const CheckResult& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%-4s %-60s residual=%.3e %s %.1e\n", c.pass() ? "PASS" : "FAIL",
                  c.name.c_str(), c.max_residual, c.expect_violation ? ">=" : "<", c.tol);
    out << buf;
  }
  for (const std::string& note : report.notes) out << "note " << note << "\n";
  std::snprintf(buf, sizeof buf, "%s  (%.1f ms)\n", report.pass() ? "PASS" : "FAIL", report.runtime_ms);
  out << buf;
  return out.str();
}

std::string emit_report(const CheckReport& report, ReportFormat format) {
  return format == ReportFormat::kJson ? to_json(report) : to_text(report);
}

}  // namespace sasaki
