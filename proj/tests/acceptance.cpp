// Acceptance criteria, one PASS/FAIL line each. Exits 1 if any criterion fails.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sasaki/contact.hpp"
#include "sasaki/oracle.hpp"
#include "sasaki/suites.hpp"

using namespace sasaki;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string label(int n, int nu, int eps, double c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "n=%d nu=%d eps=%+d c=%.6g", n, nu, eps, c);
  return buf;
}

CheckReport run(const std::string& suite, int n, int nu, int eps, double c, int points = 10, int samples = 20) {
  SuiteConfig cfg;
  cfg.suite = suite;
  cfg.params.n = n;
  cfg.params.nu = nu;
  cfg.params.eps = eps;
  cfg.params.c = c;
  cfg.points = points;
  cfg.samples = samples;
  return run_suite(cfg);
}

// Tracks the worst residual against a bound and remembers where it occurred.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& w) {
    if (!(v <= value)) {
      value = v;
      where = w;
    }
  }
};

Outcome structure_axioms() {
  Outcome out;
  int failing = 0;
  std::string first;
  for (const MatrixEntry& e : default_matrix()) {
    const CheckReport r = run("axioms", e.n, e.nu, e.eps, e.c);
    for (const CheckResult& c : r.checks) {
      if (c.pass()) continue;
      if (failing++ == 0) first = label(e.n, e.nu, e.eps, e.c) + " " + c.name + "=" + fmt("%.3g", c.max_residual);
    }
  }
  out.pass = failing == 0;
  out.detail = out.pass ? "all 36 configurations" : std::to_string(failing) + " failing checks, first: " + first;
  return out;
}

Outcome kappa_mu_theorem() {
  Worst residual, perturbed_min;
  perturbed_min.value = INFINITY;
  for (const MatrixEntry& e : default_matrix()) {
    const CheckReport r = run("kappa-mu", e.n, e.nu, e.eps, e.c);
    residual.update(r.residual("kappa_mu"), label(e.n, e.nu, e.eps, e.c));
    const double p = r.residual("kappa_perturbed_by_0.1");
    if (!(p >= perturbed_min.value)) perturbed_min = {p, label(e.n, e.nu, e.eps, e.c)};
  }
  Outcome out;
  out.pass = residual.value < 1e-8 && perturbed_min.value > 1e-2;
  out.detail = "max residual " + fmt("%.3g", residual.value) + " (tol 1e-8), min perturbed residual " +
               fmt("%.3g", perturbed_min.value) + " (> 1e-2)";
  return out;
}

double sasakian(int eps, double c) {
  double worst = 0.0;
  for (int n : {2, 3}) {
    const CheckReport r = run("sasakian", n, eps == 1 ? 0 : 1, eps, c);
    for (const CheckResult& x : r.checks)
      if (x.name != "model_curvature") worst = std::max(worst, x.max_residual);
  }
  return worst;
}

Outcome sasakian_cases() {
  Outcome out;
  const double r2 = 2.0 * std::sqrt(2.0);
  struct Case {
    int eps;
    double c;
    bool sasakian;
  };
  for (const Case& k : {Case{1, 1.0, true}, Case{-1, -3.0 + r2, true}, Case{-1, -3.0 - r2, true},
                        Case{1, 0.0, false}, Case{1, 2.0, false}}) {
    const double r = sasakian(k.eps, k.c);
    const bool ok = k.sasakian ? r < 1e-5 : r >= 1e-1;
    out.pass = out.pass && ok;
    out.detail += (out.detail.empty() ? "" : ", ") + std::string(ok ? "" : "!") + "(eps=" + std::to_string(k.eps) +
                  ", c=" + fmt("%.4g", k.c) + ") " + fmt("%.3g", r);
  }
  return out;
}

Outcome k_contact_theorem() {
  Outcome out;
  std::string bad;
  for (int eps : {1, -1})
    for (double c : {-1.0, 0.0, 1.0, 2.0})
      for (int n : {2, 3}) {
        const CheckReport r = run("k-contact", n, 1, eps, c);
        const bool holds = r.residual("killing") < 1e-5 && r.residual("plane_curvature") < 1e-5;
        if (holds != (c == eps)) {
          out.pass = false;
          bad += " " + label(n, 1, eps, c);
        }
      }
  const double gap = run("k-contact", 2, 0, 1, 2.0).residual("plane_curvature");
  const bool gap_ok = std::abs(gap - 5.0) <= 0.01;
  out.pass = out.pass && gap_ok;
  out.detail = "K-contact iff c = eps over 16 configurations" + (bad.empty() ? "" : ", mismatched:" + bad) +
               "; gap at (eps=1, c=2) " + fmt("%.6g", gap) + " (expect 5 +- 0.01)";
  return out;
}

// Spread of K(a, phi a) over `planes` accepted phi-planes at one point, and the
// largest deviation from 4c(eps - 1) + eps c^2.
std::pair<double, double> phi_sectional_spread(double c, int planes) {
  const CheckReport r = run("phi-sectional", 3, 0, 1, c, 1, planes);
  return {r.residual("phi_sectional_spread"), r.residual("phi_sectional_value")};
}

Outcome phi_sectional_theorem() {
  const double c = 2.0 + std::sqrt(5.0);
  const auto [spread, deviation] = phi_sectional_spread(c, 50);
  const double spread_one = phi_sectional_spread(1.0, 50).first;
  Outcome out;
  out.pass = spread < 1e-6 && deviation < 1e-6 && spread_one > 1e-2;
  out.detail = "c=2+sqrt5: |K - (9+4sqrt5)| " + fmt("%.3g", deviation) + ", spread " + fmt("%.3g", spread) +
               " over 50 planes (< 1e-6); c=1 spread " + fmt("%.3g", spread_one) + " (> 1e-2)";
  return out;
}

Outcome h_eigenvalues() {
  Worst worst;
  for (const MatrixEntry& e : default_matrix()) {
    const ChartedMetric m = space_form_chart({e.n, e.nu, e.c});
    for (int i = 0; i < 10; ++i) {
      Rng rng(split_seed(42, static_cast<std::uint64_t>(i)));
      const SBPoint p = sample_sb_point(m, e.eps, rng, sample_radius(e.c));
      const CheckReport r = h_operator_checks(m, p, e.c);
      for (const char* name : {"h_tangential_eigenvalues", "h_horizontal_eigenvalues", "h_xi"})
        worst.update(r.residual(name), label(e.n, e.nu, e.eps, e.c) + " " + name);
    }
  }
  Outcome out;
  out.pass = worst.value < 1e-9;
  out.detail = "max eigenvalue / h(xi) error " + fmt("%.3g", worst.value) + " (tol 1e-9) at " + worst.where;
  return out;
}

Outcome oracle_equivalence() {
  constexpr int kPoints = 10;
  constexpr int kTriples = 10;
  Worst gauss, projection, fd_nabla;
  for (const MatrixEntry& e : default_matrix()) {
    const ChartedMetric m = space_form_chart({e.n, e.nu, e.c});
    std::vector<double> g(kPoints, 0.0);
    for_each_index(kPoints, Execution::kParallel, [&](int i) {
      Rng rng(split_seed(7, static_cast<std::uint64_t>(i)));
      const SBPoint p = sample_sb_point(m, e.eps, rng, sample_radius(e.c));
      const SBFrame frame = frame_at(m, p);
      const oracle::AmbientGeometry amb = oracle::ambient_geometry(m, stack(p.x, p.u));
      for (int s = 0; s < kTriples; ++s) {
        const SBVec a = random_sb_vec(frame, rng), b = random_sb_vec(frame, rng), c = random_sb_vec(frame, rng);
        const Vec expected = oracle::gauss_curvature(m, p, amb, oracle::to_induced(m, a), oracle::to_induced(m, b),
                                                     oracle::to_induced(m, c));
        const Vec got = oracle::to_induced(m, sb_curvature(m, p, a, b, c));
        g[static_cast<std::size_t>(i)] = std::max(g[static_cast<std::size_t>(i)], (got - expected).cwiseAbs().maxCoeff());
      }
    });
    for (double v : g) gauss.update(v, label(e.n, e.nu, e.eps, e.c));
    const CheckReport conn = run("connection", e.n, e.nu, e.eps, e.c);
    projection.update(conn.residual("sb_nabla_vs_projection"), label(e.n, e.nu, e.eps, e.c));
    const CheckReport cross = run("oracle-crosscheck", e.n, e.nu, e.eps, e.c);
    fd_nabla.update(cross.residual("sb_nabla_vs_fd"), label(e.n, e.nu, e.eps, e.c));
  }
  Outcome out;
  out.pass = gauss.value < 1e-5 && projection.value < 1e-9 && fd_nabla.value < 1e-5;
  out.detail = "Gauss oracle " + fmt("%.3g", gauss.value) + " (tol 1e-5, 100 samples/config), nabla vs projection " +
               fmt("%.3g", projection.value) + " (tol 1e-9), nabla vs FD ambient " + fmt("%.3g", fd_nabla.value) +
               " (tol 1e-5)";
  return out;
}

Outcome bracket_identities() {
  Worst worst;
  for (const MatrixEntry& e : default_matrix()) {
    const CheckReport r = run("brackets", e.n, e.nu, e.eps, e.c);
    for (const CheckResult& c : r.checks)
      if (c.name != "model_curvature") worst.update(c.max_residual, label(e.n, e.nu, e.eps, e.c) + " " + c.name);
  }
  Outcome out;
  out.pass = worst.value < 1e-5;
  out.detail = "max residual " + fmt("%.3g", worst.value) + " (tol 1e-5) at " + worst.where;
  return out;
}

Outcome signature() {
  Outcome out;
  int checked = 0;
  for (const MatrixEntry& e : default_matrix()) {
    const ChartedMetric m = space_form_chart({e.n, e.nu, e.c});
    for (int i = 0; i < 10; ++i) {
      Rng rng(split_seed(42, static_cast<std::uint64_t>(i)));
      const SBPoint p = sample_sb_point(m, e.eps, rng, sample_radius(e.c));
      const bool ok = sasaki_index(m, p.x, p.u) == 2 * e.nu &&
                      induced_index(m, p) == 2 * e.nu - (e.eps == -1 ? 1 : 0);
      if (!ok && out.pass) out.detail = "mismatch at " + label(e.n, e.nu, e.eps, e.c) + "; ";
      out.pass = out.pass && ok;
      ++checked;
    }
  }
  out.detail += std::to_string(checked) + " points: index(Tg) = 2nu, index(gbar) = 2nu - [eps=-1]";
  return out;
}

Outcome determinism() {
  SuiteConfig cfg;
  cfg.suite = "all";
  cfg.params.seed = 42;
  const std::string first = to_json(run_suite(cfg), false);
  const std::string second = to_json(run_suite(cfg), false);
  Outcome out;
  out.pass = first == second;
  out.detail = std::string(out.pass ? "identical" : "different") + " JSON (" + std::to_string(first.size()) +
               " bytes, runtime excluded)";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"structure axioms", structure_axioms},
      {"(kappa, mu) nullity", kappa_mu_theorem},
      {"Sasakian cases", sasakian_cases},
      {"K-contact iff c = eps", k_contact_theorem},
      {"constant phi-sectional curvature", phi_sectional_theorem},
      {"eigenvalues of h", h_eigenvalues},
      {"oracle equivalence", oracle_equivalence},
      {"bracket identities", bracket_identities},
      {"signature", signature},
      {"determinism", determinism},
  };
  int failed = 0;
  int id = 0;
  for (const Criterion& c : criteria) {
    ++id;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", id - failed, id);
  return failed == 0 ? 0 : 1;
}
