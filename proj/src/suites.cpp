#include "sasaki/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "sasaki/contact.hpp"
#include "sasaki/oracle.hpp"

namespace sasaki {

namespace {

constexpr double kSymmetryTolerance = 1e-10;
constexpr double kIntegerTolerance = 0.5;

bool near(double a, double b) { return std::abs(a - b) < 1e-9; }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Smooth non-constant test field a + B x + 0.2 (D x) * x.
VectorField random_field(int n, Rng& rng) {
  const Vec a = rng.uniform_vec(n, -1.0, 1.0);
  const Mat B = Mat::NullaryExpr(n, n, [&rng]() { return rng.uniform(-1.0, 1.0); });
  const Mat D = Mat::NullaryExpr(n, n, [&rng]() { return rng.uniform(-1.0, 1.0); });
  return [a, B, D](const Vec& x) -> Vec { return a + B * x + 0.2 * (D * x).cwiseProduct(x); };
}

double max_abs(const TMVec& v) { return std::max(v.h.cwiseAbs().maxCoeff(), v.v.cwiseAbs().maxCoeff()); }

LiftKind tm_kind(int k) { return k == 0 ? LiftKind::kHorizontal : LiftKind::kVertical; }
SBKind sb_kind(int k) { return k == 0 ? SBKind::kHorizontal : SBKind::kTangential; }
const char* kind_name(int k, bool sphere) { return k == 0 ? "h" : (sphere ? "t" : "v"); }

// Per-point context shared by the suites.
struct PointContext {
  const ChartedMetric& m;
  const SuiteConfig& cfg;
  SBPoint p;
  std::uint64_t seed;
};

using PointSuite = std::function<CheckReport(const PointContext&)>;

// Lift fields as functions of induced coordinates for FD derivatives of metric pairings.
double directional(const std::function<double(const Vec&)>& f, const Vec& P, const Vec& dir, double step) {
  return (f(P + step * dir) - f(P - step * dir)) / (2.0 * step);
}

CheckReport connection_point(const PointContext& ctx) {
  const ChartedMetric& m = ctx.m;
  const SBPoint& p = ctx.p;
  const int n = m.dim();
  const double e = p.eps;
  const double step = ctx.cfg.params.fd_step;
  CheckReport r;
  Rng rng(ctx.seed);
  const TMPoint at = p.tm();
  const Vec P = stack(p.x, p.u);

  for (int s = 0; s < std::max(1, ctx.cfg.samples / 4); ++s) {
    const VectorField X = random_field(n, rng);
    const VectorField Y = random_field(n, rng);
    const VectorField Z = random_field(n, rng);
    for (int kx = 0; kx < 2; ++kx)
      for (int ky = 0; ky < 2; ++ky) {
        // TM: torsion and metric compatibility
        const TMVec torsion = tm_nabla(m, X(p.x), Y, tm_kind(kx), tm_kind(ky), at) -
                              tm_nabla(m, Y(p.x), X, tm_kind(ky), tm_kind(kx), at) -
                              lift_bracket(m, X, Y, tm_kind(kx), tm_kind(ky), at);
        r.record("tm_torsion_free", max_abs(torsion), kConnectionTolerance);
        const SBVec sb_torsion = sb_nabla(m, X(p.x), Y, sb_kind(kx), sb_kind(ky), p) -
                                 sb_nabla(m, Y(p.x), X, sb_kind(ky), sb_kind(kx), p) -
                                 sb_bracket(m, X, Y, sb_kind(kx), sb_kind(ky), p);
        r.record("sb_torsion_free", std::max(sb_torsion.h.cwiseAbs().maxCoeff(), sb_torsion.t.cwiseAbs().maxCoeff()),
                 kConnectionTolerance);
        const SBVec direct = sb_nabla(m, X(p.x), Y, sb_kind(kx), sb_kind(ky), p);
        const SBVec projected = sb_nabla_via_projection(m, X(p.x), Y, sb_kind(kx), sb_kind(ky), p);
        r.record("sb_nabla_vs_projection",
                 std::max((direct.h - projected.h).cwiseAbs().maxCoeff(), (direct.t - projected.t).cwiseAbs().maxCoeff()),
                 kConnectionTolerance);

        for (int kz = 0; kz < 2; ++kz) {
          for (int ka = 0; ka < 2; ++ka) {
            // TM metric: A Tg(Y, Z) = Tg(nabla_A Y, Z) + Tg(Y, nabla_A Z)
            const Vec a = X(p.x);
            const TMVec A = ka == 0 ? horizontal_lift({p.x, a}, at) : vertical_lift({p.x, a}, at);
            const Vec dir = to_induced_coords(m, A);
            auto tm_pair = [&](const Vec& Q) {
              if (kx != kz) return 0.0;  // reuse kx as the kind of Y
              return bilinear(m.metric(Q.head(n)), Y(Q.head(n)), Z(Q.head(n)));
            };
            const TMVec yv = kx == 0 ? horizontal_lift({p.x, Y(p.x)}, at) : vertical_lift({p.x, Y(p.x)}, at);
            const TMVec zv = kz == 0 ? horizontal_lift({p.x, Z(p.x)}, at) : vertical_lift({p.x, Z(p.x)}, at);
            const double lhs = directional(tm_pair, P, dir, step);
            const double rhs = sasaki_metric_at(m, tm_nabla(m, a, Y, tm_kind(ka), tm_kind(kx), at), zv) +
                               sasaki_metric_at(m, yv, tm_nabla(m, a, Z, tm_kind(ka), tm_kind(kz), at));
            r.record("tm_metric_compatible", std::abs(lhs - rhs), kFiniteDifferenceTolerance);

            // T_eps M metric
            const SBVec As = ka == 0 ? sb_horizontal_lift(p, a) : tangential_lift(m, p, a);
            const Vec sdir = to_induced_coords(m, embed(As));
            auto sb_pair = [&](const Vec& Q) {
              if (kx != kz) return 0.0;
              const Vec x = Q.head(n);
              const Vec u = Q.tail(n);
              const Mat g = m.metric(x);
              const Vec y = Y(x);
              const Vec z = Z(x);
              if (kx == 0) return bilinear(g, y, z);
              return bilinear(g, y, z) - e * bilinear(g, y, u) * bilinear(g, z, u);
            };
            const SBVec ys = kx == 0 ? sb_horizontal_lift(p, Y(p.x)) : tangential_lift(m, p, Y(p.x));
            const SBVec zs = kz == 0 ? sb_horizontal_lift(p, Z(p.x)) : tangential_lift(m, p, Z(p.x));
            const double slhs = directional(sb_pair, P, sdir, step);
            const double srhs = induced_metric_at(m, sb_nabla(m, a, Y, sb_kind(ka), sb_kind(kx), p), zs) +
                                induced_metric_at(m, ys, sb_nabla(m, a, Z, sb_kind(ka), sb_kind(kz), p));
            r.record("sb_metric_compatible", std::abs(slhs - srhs), kFiniteDifferenceTolerance);
          }
        }
      }
  }
  // J is Hermitian
  for (int s = 0; s < ctx.cfg.samples; ++s) {
    const TMVec v{at, rng.uniform_vec(n, -1, 1), rng.uniform_vec(n, -1, 1)};
    const TMVec w{at, rng.uniform_vec(n, -1, 1), rng.uniform_vec(n, -1, 1)};
    r.record("j_hermitian",
             std::abs(sasaki_metric_at(m, almost_complex_J(v), almost_complex_J(w)) - sasaki_metric_at(m, v, w)),
             kExactTolerance);
    r.record("j_squared", max_abs(almost_complex_J(almost_complex_J(v)) + v), kExactTolerance);
  }
  r.merge(nabla_checks(m, p, ctx.cfg.samples, ctx.seed));
  return r;
}

CheckReport curvature_point(const PointContext& ctx) {
  const ChartedMetric& m = ctx.m;
  const SBPoint& p = ctx.p;
  CheckReport r;
  const SBFrame frame = frame_at(m, p, ctx.seed);
  const ContactData cd(m, p);
  Rng rng(ctx.seed);

  const Mat g = metric_at(m, p.x);
  const Tensor4 low = riemann_at(m, p.x).lowered(g);
  const int n = m.dim();
  double sym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          sym = std::max({sym, std::abs(low(i, j, k, l) + low(i, j, l, k)), std::abs(low(i, j, k, l) + low(j, i, k, l)),
                          std::abs(low(i, j, k, l) - low(k, l, i, j)),
                          std::abs(low(i, j, k, l) + low(i, k, l, j) + low(i, l, j, k))});
        }
  r.record("base_riemann_symmetries", sym, kSymmetryTolerance);

  auto R4 = [&](const SBVec& a, const SBVec& b, const SBVec& c, const SBVec& d) {
    return cd.gbar(sb_curvature(m, p, a, b, c), d);
  };
  for (int s = 0; s < ctx.cfg.samples; ++s) {
    const SBVec a = random_sb_vec(frame, rng);
    const SBVec b = random_sb_vec(frame, rng);
    const SBVec c = random_sb_vec(frame, rng);
    const SBVec d = random_sb_vec(frame, rng);
    const double abcd = R4(a, b, c, d);
    r.record("sb_antisymmetry_ab", std::abs(abcd + R4(b, a, c, d)), kClosedFormTolerance);
    r.record("sb_antisymmetry_cd", std::abs(abcd + R4(a, b, d, c)), kClosedFormTolerance);
    r.record("sb_pair_symmetry", std::abs(abcd - R4(c, d, a, b)), kClosedFormTolerance);
    r.record("sb_first_bianchi",
             frame_norm(m, frame, sb_curvature(m, p, a, b, c) + sb_curvature(m, p, b, c, a) + sb_curvature(m, p, c, a, b)),
             kClosedFormTolerance);
    // all-tangential case: eps(-gbar(X^t,Z^t) Y^t + gbar(Z^t,Y^t) X^t)
    const SBVec xt{p, Vec::Zero(n), a.t}, yt{p, Vec::Zero(n), b.t}, zt{p, Vec::Zero(n), c.t};
    const SBVec expected = (yt * -cd.gbar(xt, zt) + xt * cd.gbar(zt, yt)) * p.eps;
    r.record("sb_tangential_case", frame_norm(m, frame, sb_curvature(m, p, xt, yt, zt) - expected), kExactTolerance);
  }
  return r;
}

CheckReport axioms_point(const PointContext& ctx) {
  return check_contact_axioms(ctx.m, ctx.p, ctx.cfg.samples, ctx.seed, ctx.cfg.params.fd_step);
}

CheckReport kappa_mu_point(const PointContext& ctx) {
  const KappaMu km = kappa_mu_for_space_form(ctx.cfg.params.c, ctx.cfg.params.eps);
  CheckReport r = kappa_mu_residual(ctx.m, ctx.p, km, ctx.cfg.samples, ctx.seed);
  r.merge(psi_u_quadratics(ctx.m, ctx.p, km, ctx.cfg.params.c));
  r.merge(h_operator_checks(ctx.m, ctx.p, ctx.cfg.params.c));
  return r;
}

CheckReport k_contact_point(const PointContext& ctx) {
  return k_contact_residual(ctx.m, ctx.p, ctx.cfg.samples, ctx.seed, ctx.cfg.params.fd_step);
}

CheckReport sasakian_point(const PointContext& ctx) { return sasakian_residual(ctx.m, ctx.p, ctx.cfg.params.fd_step); }

CheckReport phi_sectional_point(const PointContext& ctx) {
  const ChartedMetric& m = ctx.m;
  const SBPoint& p = ctx.p;
  const ContactData cd(m, p);
  const SBFrame frame = frame_at(m, p, ctx.seed);
  Rng rng(ctx.seed);
  const double c = ctx.cfg.params.c;
  const double e = p.eps;
  const double predicted = 4.0 * c * (e - 1.0) + e * c * c;
  double lo = INFINITY, hi = -INFINITY, worst = 0.0;
  int accepted = 0;
  for (int attempt = 0; accepted < ctx.cfg.samples && attempt < 50 * ctx.cfg.samples; ++attempt) {
    const SBVec a = random_horizontal_kernel_vec(frame, rng);
    const SBVec b = cd.phi(a);
    const double den = cd.gbar(a, a) * cd.gbar(b, b) - cd.gbar(a, b) * cd.gbar(a, b);
    if (std::abs(den) < 0.05) continue;
    const double k = phi_sectional(m, p, a);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
    worst = std::max(worst, std::abs(k - predicted));
    ++accepted;
  }
  CheckReport r;
  r.record("phi_sectional_spread", accepted > 0 ? hi - lo : NAN, 1e-6);
  r.record("phi_sectional_value", accepted > 0 ? worst : NAN, 1e-6);
  return r;
}

CheckReport oracle_point(const PointContext& ctx) {
  const ChartedMetric& m = ctx.m;
  const SBPoint& p = ctx.p;
  const int n = m.dim();
  const double e = p.eps;
  CheckReport r;
  Rng rng(ctx.seed);
  const SBFrame frame = frame_at(m, p, ctx.seed);
  const oracle::MatrixField metric = [&m](const Vec& x) { return m.metric(x); };

  r.record("christoffel_vs_fd", (christoffel_at(m, p.x).gamma - oracle::fd_christoffel(metric, p.x)).max_abs(), 1e-6);
  const Tensor4 fd_r = oracle::fd_riemann([&m](const Vec& x) { return oracle::base_christoffel(m, x); }, p.x);
  r.record("riemann_vs_fd", (riemann_at(m, p.x).r - fd_r).max_abs(), kFiniteDifferenceTolerance);

  const Vec P = stack(p.x, p.u);
  const oracle::AmbientGeometry amb = oracle::ambient_geometry(m, P);
  for (int s = 0; s < ctx.cfg.samples; ++s) {
    const SBVec a = random_sb_vec(frame, rng);
    const SBVec b = random_sb_vec(frame, rng);
    const SBVec c = random_sb_vec(frame, rng);
    const Vec expected = oracle::gauss_curvature(m, p, amb, oracle::to_induced(m, a), oracle::to_induced(m, b),
                                                 oracle::to_induced(m, c));
    const Vec got = oracle::to_induced(m, sb_curvature(m, p, a, b, c));
    r.record("gauss_curvature", (got - expected).cwiseAbs().maxCoeff(), kFiniteDifferenceTolerance);
    r.record("second_fundamental_form_symmetry",
             std::abs(oracle::second_fundamental_form(m, p, amb, oracle::to_induced(m, a), oracle::to_induced(m, b)) -
                      oracle::second_fundamental_form(m, p, amb, oracle::to_induced(m, b), oracle::to_induced(m, a))),
             kClosedFormTolerance);
  }

  for (int s = 0; s < std::max(1, ctx.cfg.samples / 4); ++s) {
    const VectorField X = random_field(n, rng);
    const VectorField Y = random_field(n, rng);
    const Vec x = X(p.x);
    for (int kx = 0; kx < 2; ++kx)
      for (int ky = 0; ky < 2; ++ky) {
        const Vec A = kx == 0 ? stack(x, -oracle::contract(oracle::base_christoffel(m, p.x), x, p.u))
                              : stack(Vec::Zero(n), x);
        const oracle::VecField B = ky == 0 ? oracle::horizontal_lift_field(m, Y) : oracle::vertical_lift_field(Y);
        const Vec expected = oracle::fd_covariant_derivative(amb, A, B);
        const Vec got = to_induced_coords(m, tm_nabla(m, x, Y, tm_kind(kx), tm_kind(ky), p.tm()));
        r.record("tm_nabla_vs_fd", (got - expected).cwiseAbs().maxCoeff(), kFiniteDifferenceTolerance);

        const SBVec As = kx == 0 ? sb_horizontal_lift(p, x) : tangential_lift(m, p, x);
        const oracle::VecField Bs = ky == 0 ? oracle::horizontal_lift_field(m, Y) : oracle::tangential_lift_field(m, Y, p.eps);
        Vec w = oracle::fd_covariant_derivative(amb, oracle::to_induced(m, As), Bs);
        const Vec N = stack(Vec::Zero(n), p.u);
        w -= e * bilinear(amb.G, w, N) * N;
        const Vec sgot = oracle::to_induced(m, sb_nabla(m, x, Y, sb_kind(kx), sb_kind(ky), p));
        r.record("sb_nabla_vs_fd", (sgot - w).cwiseAbs().maxCoeff(), kFiniteDifferenceTolerance);
      }
  }

  oracle::HypersurfaceChart chart;
  const Mat pulled = oracle::hypersurface_pullback(m, p, &chart);
  r.record("chart_min_singular_value", chart.smallest_singular_value, 1e-6, true);
  std::vector<Vec> q;
  for (const SBVec& f : frame.vectors) q.push_back(oracle::chart_components(chart, oracle::to_induced(m, f)));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      r.record("pullback_metric", std::abs(bilinear(pulled, q[i], q[j]) -
                                           induced_metric_at(m, frame.vectors[i], frame.vectors[j])),
               kClosedFormTolerance);
  for (int s = 0; s < 5; ++s) {
    const Vec qs = chart.base_params + rng.uniform_vec(2 * n - 1, -1e-2, 1e-2);
    const Vec Q = chart.param_fn(qs);
    r.record("chart_constraint", std::abs(bilinear(m.metric(Q.head(n)), Q.tail(n), Q.tail(n)) - e), 1e-9);
  }
  return r;
}

CheckReport index_point(const PointContext& ctx) {
  const ChartedMetric& m = ctx.m;
  const SBPoint& p = ctx.p;
  const int nu = ctx.cfg.params.nu;
  CheckReport r;
  const Signature base = signature_at(m, p.x);
  r.record("base_signature", std::abs(base.neg - nu) + std::abs(base.pos - (m.dim() - nu)), kIntegerTolerance);
  r.record("tm_index", std::abs(sasaki_index(m, p.x, p.u) - 2 * nu), kIntegerTolerance);
  const int expected_sb = 2 * nu - (p.eps == -1 ? 1 : 0);
  r.record("sb_index", std::abs(induced_index(m, p) - expected_sb), kIntegerTolerance);
  const SBFrame frame = frame_at(m, p, ctx.seed);
  const Mat gram = induced_gram(m, frame);
  Mat diag = Mat::Zero(gram.rows(), gram.cols());
  int negatives = 0;
  for (std::size_t k = 0; k < frame.signs.size(); ++k) {
    diag(static_cast<int>(k), static_cast<int>(k)) = frame.signs[k];
    negatives += frame.signs[k] < 0;
  }
  r.record("frame_gram", (gram - diag).cwiseAbs().maxCoeff(), kAlgebraicTolerance);
  r.record("frame_negative_count", std::abs(negatives - expected_sb), kIntegerTolerance);
  r.record("normal_norm", std::abs(sasaki_metric_at(m, normal_at(p), normal_at(p)) - p.eps), kExactTolerance);
  return r;
}

CheckReport brackets_point(const PointContext& ctx) {
  const ChartedMetric& m = ctx.m;
  const SBPoint& p = ctx.p;
  const int n = m.dim();
  CheckReport r;
  Rng rng(ctx.seed);
  const Vec P = stack(p.x, p.u);
  const double step = ctx.cfg.params.fd_step;
  for (int s = 0; s < std::max(1, ctx.cfg.samples / 4); ++s) {
    const VectorField X = random_field(n, rng);
    const VectorField Y = random_field(n, rng);
    for (int kx = 0; kx < 2; ++kx)
      for (int ky = 0; ky < 2; ++ky) {
        auto tm_field = [&](const VectorField& F, int k) {
          return k == 0 ? oracle::horizontal_lift_field(m, F) : oracle::vertical_lift_field(F);
        };
        const Vec fd = oracle::fd_lie_bracket(tm_field(X, kx), tm_field(Y, ky), P, step);
        const Vec got = to_induced_coords(m, lift_bracket(m, X, Y, tm_kind(kx), tm_kind(ky), p.tm()));
        r.record(std::string("tm_bracket_") + kind_name(kx, false) + kind_name(ky, false),
                 (got - fd).cwiseAbs().maxCoeff(), kFiniteDifferenceTolerance);

        auto sb_field = [&](const VectorField& F, int k) {
          return k == 0 ? oracle::horizontal_lift_field(m, F) : oracle::tangential_lift_field(m, F, p.eps);
        };
        const Vec sfd = oracle::fd_lie_bracket(sb_field(X, kx), sb_field(Y, ky), P, step);
        const Vec sgot = oracle::to_induced(m, sb_bracket(m, X, Y, sb_kind(kx), sb_kind(ky), p));
        r.record(std::string("sb_bracket_") + kind_name(kx, true) + kind_name(ky, true),
                 (sgot - sfd).cwiseAbs().maxCoeff(), kFiniteDifferenceTolerance);
      }
  }
  return r;
}

const std::map<std::string, PointSuite>& point_suites() {
  static const std::map<std::string, PointSuite> suites{
      {"axioms", axioms_point},     {"connection", connection_point},       {"curvature", curvature_point},
      {"kappa-mu", kappa_mu_point}, {"k-contact", k_contact_point},         {"sasakian", sasakian_point},
      {"phi-sectional", phi_sectional_point}, {"oracle-crosscheck", oracle_point}, {"index", index_point},
      {"brackets", brackets_point}};
  return suites;
}

CheckReport run_point_suite(const SuiteConfig& cfg, const PointSuite& body) {
  const SuiteParams& prm = cfg.params;
  const ChartedMetric m = space_form_chart({prm.n, prm.nu, prm.c});
  CheckReport report;
  report.suite = cfg.suite;
  report.params = prm;
  report.record("model_curvature", space_form_curvature_deviation(m, prm.c, 20, 1, prm.seed), kClosedFormTolerance);

  std::vector<CheckReport> parts(static_cast<std::size_t>(cfg.points));
  const double radius = sample_radius(prm.c);
  for_each_index(cfg.points, cfg.execution, [&](int i) {
    Rng rng(split_seed(prm.seed, static_cast<std::uint64_t>(i)));
    const SBPoint p = sample_sb_point(m, prm.eps, rng, radius);
    const PointContext ctx{m, cfg, p, rng.next()};
    parts[static_cast<std::size_t>(i)] = body(ctx);
  });
  for (const CheckReport& part : parts) report.merge(part);
  return report;
}

void apply_tolerance_override(CheckReport& r, const std::optional<double>& tol) {
  if (!tol) return;
  for (CheckResult& c : r.checks)
    if (!c.expect_violation) c.tol = *tol;
}

void mark_expected_violations(CheckReport& r) {
  for (CheckResult& c : r.checks) {
    if (c.name == "model_curvature") continue;
    c.expect_violation = true;
    c.name += " [violation expected]";
  }
}

CheckReport run_all(const SuiteConfig& cfg) {
  CheckReport report;
  report.suite = "all";
  report.params = cfg.params;
  for (const MatrixEntry& entry : default_matrix()) {
    SuiteConfig sub = cfg;
    sub.params.n = entry.n;
    sub.params.nu = entry.nu;
    sub.params.eps = entry.eps;
    sub.params.c = entry.c;
    const std::string prefix = "n=" + std::to_string(entry.n) + " nu=" + std::to_string(entry.nu) +
                               " eps=" + std::to_string(entry.eps) + " c=" + format_double(entry.c) + " / ";
    for (const auto& [name, body] : point_suites()) {
      if (name == "phi-sectional" && entry.n < 3) continue;  // the phi-plane is unique when n = 2
      sub.suite = name;
      CheckReport part = run_point_suite(sub, body);
      apply_tolerance_override(part, cfg.params.tol);
      const bool expect_fail = (name == "k-contact" && !predicted_k_contact(entry.c, entry.eps)) ||
                               (name == "sasakian" && !predicted_sasakian(entry.c, entry.eps)) ||
                               (name == "phi-sectional" && !predicted_constant_phi_sectional(entry.c, entry.eps));
      if (expect_fail) mark_expected_violations(part);
      report.merge(part, prefix + name + " / ");
    }
  }
  return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms",   "connection",    "curvature",         "kappa-mu",
                                              "k-contact", "sasakian",     "phi-sectional",     "oracle-crosscheck",
                                              "index",    "brackets",      "all"};
  return names;
}

void validate_config(const SuiteConfig& cfg) {
  const SuiteParams& p = cfg.params;
  auto fail = [](const std::string& msg) { throw GeometryError(ErrorCode::kInvalidConfig, msg); };
  bool known = false;
  for (const auto& s : suite_names()) known = known || s == cfg.suite;
  if (!known) fail("unknown suite '" + cfg.suite + "'");
  if (p.n < 2) fail("n must be at least 2");
  if (p.nu < 0 || p.nu > p.n) fail("nu must satisfy 0 <= nu <= n");
  if (p.eps != 1 && p.eps != -1) fail("eps must be +1 or -1");
  if (p.eps == -1 && p.nu < 1) fail("eps = -1 requires nu >= 1");
  if (p.eps == 1 && p.nu == p.n) fail("eps = +1 requires nu < n");
  if (cfg.points < 1) fail("points must be at least 1");
  if (cfg.samples < 1) fail("samples must be at least 1");
  if (!(p.fd_step > 0.0)) fail("fd-step must be positive");
  if (p.tol && !(*p.tol > 0.0)) fail("tol must be positive");
  if (!std::isfinite(p.c)) fail("c must be finite");
}

CheckReport run_suite(const SuiteConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  if (cfg.suite == "all") {
    report = run_all(cfg);
  } else {
    report = run_point_suite(cfg, point_suites().at(cfg.suite));
    apply_tolerance_override(report, cfg.params.tol);
    if (cfg.suite == "kappa-mu") {
      const KappaMu km = kappa_mu_for_space_form(cfg.params.c, cfg.params.eps);
      report.notes.push_back("kappa=" + format_double(km.kappa) + " mu=" + format_double(km.mu) +
                             " (space-form formula)");
      const ChartedMetric m = space_form_chart({cfg.params.n, cfg.params.nu, cfg.params.c});
      Rng rng(split_seed(cfg.params.seed, 0));
      const SBPoint p = sample_sb_point(m, cfg.params.eps, rng, sample_radius(cfg.params.c));
      const KappaMu fit = fit_kappa_mu(m, p, cfg.samples, rng.next());
      std::string fit_note = "least-squares fit kappa=" + format_double(fit.kappa) + " mu=" + format_double(fit.mu);
      if (near(cfg.params.c, cfg.params.eps)) fit_note += " (h is a multiple of the identity on ker eta; mu not determined)";
      report.notes.push_back(fit_note);
    }
  }
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<MatrixEntry> default_matrix() {
  const double cs[] = {0.0, 1.0, -1.0, 2.0, -3.0 + 2.0 * std::sqrt(2.0), 2.0 + std::sqrt(5.0)};
  std::vector<MatrixEntry> out;
  for (int n : {2, 3})
    for (int nu : {0, 1})
      for (int eps : {1, -1}) {
        if (eps == -1 && nu == 0) continue;
        for (double c : cs) out.push_back({n, nu, eps, c});
      }
  return out;
}

bool predicted_k_contact(double c, int eps) { return near(c, eps); }

bool predicted_sasakian(double c, int eps) {
  if (eps == 1) return near(c, 1.0);
  return near(c, -3.0 + 2.0 * std::sqrt(2.0)) || near(c, -3.0 - 2.0 * std::sqrt(2.0));
}

bool predicted_constant_phi_sectional(double c, int eps) {
  return near(c, 2.0 * eps + std::sqrt(5.0)) || near(c, 2.0 * eps - std::sqrt(5.0));
}

}  // namespace sasaki
