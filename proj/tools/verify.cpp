// verify <suite> [options]: run a verification suite on a space-form base and
// print a report. Exit status 0 = pass, 1 = some check failed, 2 = bad config.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sasaki/suites.hpp"

int main(int argc, char** argv) {
  using namespace sasaki;
  SuiteConfig cfg;
  if (const char* env = std::getenv("SASAKI_SEED")) {
    try {
      cfg.params.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: SASAKI_SEED is not an unsigned integer: " << env << "\n";
      return 2;
    }
  }

  CLI::App app{"Verify Sasaki geometry of tangent sphere bundles over space forms"};
  std::string format = "json";
  double tol = 0.0;
  bool serial = false;
  app.add_option("suite", cfg.suite, "Suite to run")->required()->check(CLI::IsMember(suite_names()));
  app.add_option("--n", cfg.params.n, "Base dimension");
  app.add_option("--nu", cfg.params.nu, "Index of the base metric");
  app.add_option("--c", cfg.params.c, "Sectional curvature of the base");
  app.add_option("--eps", cfg.params.eps, "Sign of g(u,u) on the sphere bundle (+1 or -1)");
  app.add_option("--seed", cfg.params.seed, "Random seed (default from SASAKI_SEED, else 42)");
  auto* tol_opt = app.add_option("--tol", tol, "Override every tolerance");
  app.add_option("--fd-step", cfg.params.fd_step, "Finite-difference step for FD checks");
  app.add_option("--points", cfg.points, "Sampled points of T_eps M");
  app.add_option("--samples", cfg.samples, "Samples per point");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--serial", serial, "Disable the OpenMP sample loop");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*tol_opt) cfg.params.tol = tol;
  if (serial) cfg.execution = Execution::kSerial;

  CheckReport report;
  try {
    report = run_suite(cfg);
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInvalidConfig ? 2 : 1;
  }

  const ReportFormat fmt = format == "json" ? ReportFormat::kJson : ReportFormat::kText;
  if (fmt == ReportFormat::kJson)
    for (const std::string& note : report.notes) std::cerr << "note: " << note << "\n";
  std::cout << emit_report(report, fmt);
  std::cout.flush();
  if (!std::cout) {
    std::cerr << "error: IOFailure: could not write the report\n";
    return 1;
  }
  return report.pass() ? 0 : 1;
}
