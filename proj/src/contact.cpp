#include "sasaki/contact.hpp"

#include <algorithm>
#include <cmath>

#include "sasaki/oracle.hpp"
#include "sasaki/sampling.hpp"

namespace sasaki {

namespace {

VectorField constant_field(const Vec& v) {
  return [v](const Vec&) { return v; };
}

SBVec lift(const ChartedMetric& m, const SBPoint& p, const Vec& X, SBKind kind) {
  return kind == SBKind::kHorizontal ? sb_horizontal_lift(p, X) : tangential_lift(m, p, X);
}

// The generators used for tensor checks: lifts of the frame base vectors
// (both kinds) and u^h.
struct LiftGenerator {
  Vec X;
  SBKind kind;
};

std::vector<LiftGenerator> lift_generators(const SBFrame& frame) {
  std::vector<LiftGenerator> out;
  for (const Vec& e : frame.base) out.push_back({e, SBKind::kTangential});
  for (const Vec& e : frame.base) out.push_back({e, SBKind::kHorizontal});
  out.push_back({frame.at.u, SBKind::kHorizontal});
  return out;
}

Vec sorted_real_eigenvalues(const Mat& a, double* imag_max) {
  Eigen::EigenSolver<Mat> es(a, false);
  Vec re = es.eigenvalues().real();
  if (imag_max) *imag_max = es.eigenvalues().imag().cwiseAbs().maxCoeff();
  std::sort(re.data(), re.data() + re.size());
  return re;
}

}  // namespace

// ---------------------------------------------------------------------------

ContactData::ContactData(const ChartedMetric& m, const SBPoint& p)
    : p_(p), g_(metric_at(m, p.x)), xi_{p, 2.0 * p.u, Vec::Zero(p.u.size())} {}

double ContactData::eta(const SBVec& a) const { return 0.5 * p_.eps * bilinear(g_, a.h, p_.u); }

SBVec ContactData::phi(const SBVec& a) const {
  return {p_, -orthogonal_to_fiber(g_, p_, a.t), orthogonal_to_fiber(g_, p_, a.h)};
}

double ContactData::gbar(const SBVec& a, const SBVec& b) const {
  return bilinear(g_, a.h, b.h) + bilinear(g_, a.t, b.t);
}

double ContactData::gcm(const SBVec& a, const SBVec& b) const { return 0.25 * gbar(a, b); }

ContactData contact_data_at(const ChartedMetric& m, const SBPoint& p) { return ContactData(m, p); }

double frame_norm(const ChartedMetric& m, const SBFrame& frame, const SBVec& v) {
  return frame_coordinates(m, frame, v).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

HOperator::HOperator(const ChartedMetric& m, const SBPoint& p)
    : m_(&m), p_(p), g_(metric_at(m, p.x)), r_(riemann_at(m, p.x)) {}

SBVec HOperator::apply(const SBVec& a) const {
  const double e = p_.eps;
  const Vec& u = p_.u;
  const Vec x = orthogonal_to_fiber(g_, p_, a.h);
  const Vec t = orthogonal_to_fiber(g_, p_, a.t);
  const Vec h = -e * x + r_.apply(x, u, u);
  return {p_, h, orthogonal_to_fiber(g_, p_, (2.0 - e) * t - r_.apply(t, u, u))};
}

Mat HOperator::matrix_in(const SBFrame& frame) const {
  const int d = static_cast<int>(frame.vectors.size());
  Mat out(d, d);
  for (int l = 0; l < d; ++l) out.col(l) = frame_coordinates(*m_, frame, apply(frame.vectors[l]));
  return out;
}

HOperator h_at(const ChartedMetric& m, const SBPoint& p) { return HOperator(m, p); }

// ---------------------------------------------------------------------------

SBVec nabla_xi(const ChartedMetric& m, const SBPoint& p, const SBVec& a) {
  const RiemannTensor r = riemann_at(m, p.x);
  const Vec& u = p.u;
  const Vec h = 2.0 * a.t - r.apply(a.t, u, u);
  return make_sb_vec(m, p, h, -r.apply(a.h, u, u));
}

SBVec nabla_xi_via_connection(const ChartedMetric& m, const SBPoint& p, const SBVec& a) {
  const VectorField fiber = constant_field(p.u);
  SBVec out = zero_sb_vec(p);
  auto add_part = [&](const Vec& X, SBKind kind) {
    const Vec du = fiber_coordinate_derivative(m, X, kind, p);
    out = out + SBVec{p, 2.0 * du, Vec::Zero(du.size())} +
          sb_nabla(m, X, fiber, kind, SBKind::kHorizontal, p) * 2.0;
  };
  add_part(a.h, SBKind::kHorizontal);
  add_part(a.t, SBKind::kTangential);
  return make_sb_vec(m, p, out.h, out.t);
}

SBVec nabla_phi(const ChartedMetric& m, const SBPoint& p, const SBVec& a, const SBVec& b,
                NablaPhiForm form) {
  const Mat g = metric_at(m, p.x);
  const RiemannTensor r = riemann_at(m, p.x);
  const Vec& u = p.u;
  const double e = p.eps;
  const Vec& X = a.h;
  const Vec Xt = orthogonal_to_fiber(g, p, a.t);
  const Vec& Y = b.h;
  const Vec Yt = orthogonal_to_fiber(g, p, b.t);
  const double eta_y = 0.5 * e * bilinear(g, Y, u);
  const double vh_factor = form == NablaPhiForm::kCorrected ? 0.5 : 1.0;

  Vec h = 0.5 * r.apply(u, X, Y);                             // (h, h)
  Vec t = 0.5 * r.apply(X, u, Yt);                            // (h, t)
  t += vh_factor * r.apply(Xt, u, Y) - 2.0 * eta_y * Xt;      // (t, h)
  h += 0.5 * r.apply(Xt, u, Yt) + e * bilinear(g, Xt, Yt) * u;  // (t, t): 2 eps g_cm(X^t,Y^t) xi
  return make_sb_vec(m, p, h, t);
}

SBVec nabla_phi_by_definition(const ChartedMetric& m, const SBPoint& p, const Vec& X, SBKind kx,
                              const VectorField& Y, SBKind ky) {
  const ContactData cd(m, p);
  const double e = p.eps;
  const SBVec a = lift(m, p, X, kx);
  if (ky == SBKind::kHorizontal) {
    // phi(Y^h) = Y^t
    return sb_nabla(m, X, Y, kx, SBKind::kTangential, p) - cd.phi(sb_nabla(m, X, Y, kx, SBKind::kHorizontal, p));
  }
  // phi(Y^t) = -Y^h + eps g(Y,u) u^h
  const Vec y = Y(p.x);
  const SBVec uh = sb_horizontal_lift(p, p.u);
  const SBVec nabla_phi_b = -sb_nabla(m, X, Y, kx, SBKind::kHorizontal, p) +
                            uh * (e * pairing_derivative(m, X, kx, Y, p)) +
                            nabla_xi_via_connection(m, p, a) * (0.5 * e * bilinear(cd.base_metric(), y, p.u));
  const SBVec out = nabla_phi_b - cd.phi(sb_nabla(m, X, Y, kx, SBKind::kTangential, p));
  return make_sb_vec(m, p, out.h, out.t);
}

KappaMu kappa_mu_for_space_form(double c, int eps) { return {c * (4.0 - eps * (c + 2.0)), -2.0 * c}; }

SBVec kappa_mu_defect(const ChartedMetric& m, const SBPoint& p, const KappaMu& km, const SBVec& a,
                      const SBVec& b) {
  const ContactData cd(m, p);
  const HOperator h(m, p);
  const double e = p.eps;
  const double ea = cd.eta(a);
  const double eb = cd.eta(b);
  return sb_curvature(m, p, a, b, cd.xi()) - (a * eb - b * ea) * (e * km.kappa) -
         (h.apply(a) * eb - h.apply(b) * ea) * (e * km.mu);
}

double contact_sectional_curvature(const ChartedMetric& m, const SBPoint& p, const SBVec& a,
                                   const SBVec& b) {
  const ContactData cd(m, p);
  const double den = cd.gbar(a, a) * cd.gbar(b, b) - cd.gbar(a, b) * cd.gbar(a, b);
  if (std::abs(den) <= kPlaneDegeneracy) {
    throw GeometryError(ErrorCode::kDegeneratePlane, "plane section is degenerate");
  }
  const double num = cd.gbar(sb_curvature(m, p, a, b, b), a);
  return 4.0 * num / den;
}

double phi_sectional(const ChartedMetric& m, const SBPoint& p, const SBVec& a) {
  const ContactData cd(m, p);
  const SBVec a0 = a - cd.xi() * cd.eta(a);
  return contact_sectional_curvature(m, p, a0, cd.phi(a0));
}

double d_eta_fd(const ChartedMetric& m, const SBPoint& p, const Vec& X, SBKind kx, const Vec& Y,
                SBKind ky, double step) {
  const ContactData cd(m, p);
  const int n = m.dim();
  const double e = p.eps;
  // eta(Z^kind) as a function of induced coordinates (x; u)
  auto eta_of = [&](const Vec& Z, SBKind kind) {
    return [&m, Z, kind, e, n](const Vec& P) {
      if (kind == SBKind::kTangential) return 0.0;
      return 0.5 * e * bilinear(m.metric(P.head(n)), Z, P.tail(n));
    };
  };
  auto derivative = [&](const Vec& D, SBKind kd, const std::function<double(const Vec&)>& f) {
    const Vec P = stack(p.x, p.u);
    const Vec dir = to_induced_coords(m, embed(lift(m, p, D, kd)));
    return (f(P + step * dir) - f(P - step * dir)) / (2.0 * step);
  };
  const double a_eta_b = derivative(X, kx, eta_of(Y, ky));
  const double b_eta_a = derivative(Y, ky, eta_of(X, kx));
  const double eta_bracket = cd.eta(sb_bracket(m, constant_field(X), constant_field(Y), kx, ky, p));
  return 0.5 * (a_eta_b - b_eta_a - eta_bracket);
}

// ---------------------------------------------------------------------------
// Per-point checks

CheckReport check_contact_axioms(const ChartedMetric& m, const SBPoint& p, int samples, std::uint64_t seed,
                                 double fd_step) {
  CheckReport r;
  const ContactData cd(m, p);
  const SBFrame frame = frame_at(m, p, seed);
  const double e = p.eps;
  const SBVec& xi = cd.xi();
  r.record("eta_xi", std::abs(cd.eta(xi) - 1.0), kExactTolerance);
  r.record("phi_xi", frame_norm(m, frame, cd.phi(xi)), kExactTolerance);
  r.record("gcm_xi_xi", std::abs(cd.gcm(xi, xi) - e), kExactTolerance);

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const SBVec a = random_sb_vec(frame, rng);
    const SBVec b = random_sb_vec(frame, rng);
    r.record("phi_squared", frame_norm(m, frame, cd.phi(cd.phi(a)) + a - xi * cd.eta(a)), kAlgebraicTolerance);
    r.record("compatibility",
             std::abs(cd.gcm(cd.phi(a), cd.phi(b)) - cd.gcm(a, b) + e * cd.eta(a) * cd.eta(b)),
             kAlgebraicTolerance);
  }

  const auto gens = lift_generators(frame);
  const int n = m.dim();
  const oracle::VecField omega_prime = [&m, e, n](const Vec& P) {
    return stack(e * (m.metric(P.head(n)) * P.tail(n)), Vec::Zero(n));
  };
  const Mat d_omega = oracle::fd_exterior_derivative(omega_prime, stack(p.x, p.u), fd_step);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i == j) continue;
      const SBVec A = lift(m, p, gens[i].X, gens[i].kind);
      const SBVec B = lift(m, p, gens[j].X, gens[j].kind);
      const double d_eta = d_eta_fd(m, p, gens[i].X, gens[i].kind, gens[j].X, gens[j].kind, fd_step);
      r.record("d_eta", std::abs(d_eta - cd.gcm(A, cd.phi(B))), kFiniteDifferenceTolerance);
      const double two_d_eta_prime =
          bilinear(d_omega, to_induced_coords(m, embed(A)), to_induced_coords(m, embed(B)));
      r.record("eta_prime_factor_two", std::abs(cd.gbar(A, cd.phi_prime(B)) - two_d_eta_prime),
               kFiniteDifferenceTolerance);
    }
  }
  return r;
}

CheckReport h_operator_checks(const ChartedMetric& m, const SBPoint& p, double c) {
  CheckReport r;
  const HOperator h(m, p);
  const ContactData cd(m, p);
  const SBFrame frame = frame_at(m, p);
  const Mat hm = h.matrix_in(frame);
  const int k = m.dim() - 1;
  const double e = p.eps;
  const double expected_t = 2.0 - e * (1.0 + c);
  const double expected_h = e * (c - 1.0);

  double imag_t = 0.0;
  double imag_h = 0.0;
  const Vec eig_t = sorted_real_eigenvalues(hm.block(0, 0, k, k), &imag_t);
  const Vec eig_h = sorted_real_eigenvalues(hm.block(k, k, k, k), &imag_h);
  r.record("h_tangential_eigenvalues", (eig_t.array() - expected_t).abs().maxCoeff() + imag_t,
           kConnectionTolerance);
  r.record("h_horizontal_eigenvalues", (eig_h.array() - expected_h).abs().maxCoeff() + imag_h,
           kConnectionTolerance);
  const double coupling =
      std::max(hm.block(0, k, k, k).cwiseAbs().maxCoeff(), hm.block(k, 0, k, k).cwiseAbs().maxCoeff());
  r.record("h_block_coupling", coupling, kConnectionTolerance);
  r.record("h_xi", std::max(hm.col(2 * k).cwiseAbs().maxCoeff(), hm.row(2 * k).cwiseAbs().maxCoeff()),
           kConnectionTolerance);
  for (const SBVec& a : frame.vectors)
    for (const SBVec& b : frame.vectors)
      r.record("h_self_adjoint", std::abs(cd.gcm(h.apply(a), b) - cd.gcm(a, h.apply(b))), kClosedFormTolerance);
  return r;
}

CheckReport nabla_checks(const ChartedMetric& m, const SBPoint& p, int samples, std::uint64_t seed) {
  CheckReport r;
  const ContactData cd(m, p);
  const HOperator h(m, p);
  const SBFrame frame = frame_at(m, p, seed);
  const double e = p.eps;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const SBVec a = random_sb_vec(frame, rng);
    const SBVec closed = nabla_xi(m, p, a);
    r.record("nabla_xi_closed_vs_connection", frame_norm(m, frame, closed - nabla_xi_via_connection(m, p, a)),
             kConnectionTolerance);
    r.record("nabla_xi_identity", frame_norm(m, frame, closed + cd.phi(a) * e + cd.phi(h.apply(a))),
             kConnectionTolerance);
  }
  r.record("nabla_xi_xi", frame_norm(m, frame, nabla_xi(m, p, cd.xi())), kAlgebraicTolerance);
  for (const auto& ga : lift_generators(frame)) {
    for (const auto& gb : lift_generators(frame)) {
      const SBVec a = lift(m, p, ga.X, ga.kind);
      const SBVec b = lift(m, p, gb.X, gb.kind);
      const SBVec def = nabla_phi_by_definition(m, p, ga.X, ga.kind, constant_field(gb.X), gb.kind);
      r.record("nabla_phi_closed_vs_definition", frame_norm(m, frame, nabla_phi(m, p, a, b) - def),
               kConnectionTolerance);
    }
  }
  return r;
}

CheckReport kappa_mu_residual(const ChartedMetric& m, const SBPoint& p, const KappaMu& km, int samples,
                              std::uint64_t seed) {
  CheckReport r;
  const SBFrame frame = frame_at(m, p, seed);
  const KappaMu perturbed{km.kappa + 0.1, km.mu};
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const SBVec a = random_sb_vec(frame, rng);
    const SBVec b = random_sb_vec(frame, rng);
    r.record("kappa_mu", frame_norm(m, frame, kappa_mu_defect(m, p, km, a, b)), kClosedFormTolerance);
    r.record("kappa_perturbed_by_0.1", frame_norm(m, frame, kappa_mu_defect(m, p, perturbed, a, b)), 1e-2, true);
  }
  return r;
}

CheckReport psi_u_quadratics(const ChartedMetric& m, const SBPoint& p, const KappaMu& km, double c) {
  CheckReport r;
  const SBFrame frame = frame_at(m, p);
  const Mat g = metric_at(m, p.x);
  const RiemannTensor rt = riemann_at(m, p.x);
  const int k = m.dim() - 1;
  const double e = p.eps;
  Mat psi(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      psi(i, j) = frame.base_signs[i] * bilinear(g, rt.apply(frame.base[j], p.u, p.u), frame.base[i]);
  const Mat I = Mat::Identity(k, k);
  const Mat q1 = psi * psi + e * km.mu * psi - e * (km.kappa + (2.0 - e) * km.mu) * I;
  const Mat q2 = 3.0 * psi * psi + (e * km.mu - 4.0) * psi + (e * km.kappa - km.mu) * I;
  r.record("quadratic_1", q1.cwiseAbs().maxCoeff(), kClosedFormTolerance);
  r.record("quadratic_2", q2.cwiseAbs().maxCoeff(), kClosedFormTolerance);
  const double root = e * c;
  const double p1 = root * root + e * km.mu * root - e * (km.kappa + (2.0 - e) * km.mu);
  const double p2 = 3.0 * root * root + (e * km.mu - 4.0) * root + (e * km.kappa - km.mu);
  double imag = 0.0;
  const Vec eig = sorted_real_eigenvalues(psi, &imag);
  r.record("common_root", std::max({std::abs(p1), std::abs(p2)}), 1e-10);
  r.record("psi_u_eigenvalues", (eig.array() - root).abs().maxCoeff() + imag, kClosedFormTolerance);
  return r;
}

CheckReport k_contact_residual(const ChartedMetric& m, const SBPoint& p, int samples, std::uint64_t seed,
                               double fd_step) {
  CheckReport r;
  const ContactData cd(m, p);
  const SBFrame frame = frame_at(m, p, seed);
  const int n = m.dim();
  const double e = p.eps;

  // Geodesic spray 2 u^h in induced coordinates, tangent to every level set of g(u,u).
  const oracle::VecField spray = [&m, n](const Vec& P) {
    const Vec x = P.head(n);
    const Vec u = P.tail(n);
    return stack(2.0 * u, -2.0 * oracle::contract(oracle::base_christoffel(m, x), u, u));
  };
  const Mat lie = oracle::fd_lie_derivative_metric(spray, oracle::sasaki_metric_field(m), stack(p.x, p.u), fd_step);
  std::vector<Vec> induced;
  for (const SBVec& f : frame.vectors) induced.push_back(oracle::to_induced(m, f));
  for (const Vec& a : induced)
    for (const Vec& b : induced) r.record("killing", 0.25 * std::abs(bilinear(lie, a, b)), kFiniteDifferenceTolerance);

  const int kernel = 2 * n - 2;
  for (int k = 0; k < kernel; ++k) {
    r.record("plane_curvature", std::abs(contact_sectional_curvature(m, p, cd.xi(), frame.vectors[k]) - e),
             kFiniteDifferenceTolerance);
  }
  Rng rng(seed ^ 0x6b636f6e74616374ULL);
  for (int s = 0; s < samples; ++s) {
    const int sign = frame.signs[static_cast<std::size_t>(rng.next() % kernel)];
    Vec coeffs = Vec::Zero(static_cast<int>(frame.vectors.size()));
    for (int k = 0; k < kernel; ++k)
      if (frame.signs[k] == sign) coeffs[k] = rng.uniform(-1.0, 1.0);
    const SBVec a = frame_combination(frame, coeffs);
    if (std::abs(cd.gbar(a, a)) < 1e-3) continue;
    r.record("plane_curvature", std::abs(contact_sectional_curvature(m, p, cd.xi(), a) - e),
             kFiniteDifferenceTolerance);
  }
  return r;
}

CheckReport sasakian_residual(const ChartedMetric& m, const SBPoint& p, double fd_step) {
  CheckReport r;
  const ContactData cd(m, p);
  const SBFrame frame = frame_at(m, p);
  const int n = m.dim();
  const double e = p.eps;

  for (const SBVec& a : frame.vectors) {
    for (const SBVec& b : frame.vectors) {
      const SBVec expected = cd.xi() * cd.gcm(a, b) - a * (e * cd.eta(b));
      r.record("sasakian_nabla_phi", frame_norm(m, frame, nabla_phi(m, p, a, b) - expected),
               kFiniteDifferenceTolerance);
    }
  }

  // N_phi + 2 d eta (x) xi with phi extended to TM by replacing eps with g(u,u).
  const oracle::MatrixField phi_field = [&m, n](const Vec& P) {
    const Vec x = P.head(n);
    const Vec u = P.tail(n);
    const Mat g = metric_at(m, x);
    const Mat A = christoffel_at(m, x).with_second_slot(u);
    const double lambda = bilinear(g, u, u);
    auto perp = [&](const Vec& v) { return Vec(v - bilinear(g, v, u) / lambda * u); };
    Mat out(2 * n, 2 * n);
    for (int c = 0; c < 2 * n; ++c) {
      const Vec w = Vec::Unit(2 * n, c);
      const Vec h = w.head(n);
      const Vec v = w.tail(n) + A * h;
      const Vec h2 = -perp(v);
      const Vec v2 = perp(h);
      out.col(c) = stack(h2, v2 - A * h2);
    }
    return out;
  };
  const oracle::VecField omega = [&m, e, n](const Vec& P) {
    return stack(0.5 * e * (m.metric(P.head(n)) * P.tail(n)), Vec::Zero(n));
  };
  const Vec P = stack(p.x, p.u);
  const Mat d_omega = oracle::fd_exterior_derivative(omega, P, fd_step);
  const Vec xi_induced = to_induced_coords(m, embed(cd.xi()));

  std::vector<oracle::VecField> fields;
  for (const auto& gen : lift_generators(frame)) {
    const VectorField X = constant_field(gen.X);
    fields.push_back(gen.kind == SBKind::kHorizontal ? oracle::horizontal_lift_field(m, X)
                                                     : oracle::tangential_lift_field(m, X, p.eps));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      const Vec nij = oracle::fd_nijenhuis(phi_field, fields[i], fields[j], P, fd_step);
      const Vec total = nij + bilinear(d_omega, fields[i](P), fields[j](P)) * xi_induced;
      const SBVec v = tangent_part(m, p, from_induced_coords(m, p.tm(), total));
      r.record("sasakian_nijenhuis", frame_norm(m, frame, v), kFiniteDifferenceTolerance);
    }
  }
  return r;
}

KappaMu fit_kappa_mu(const ChartedMetric& m, const SBPoint& p, int samples, std::uint64_t seed) {
  const ContactData cd(m, p);
  const HOperator h(m, p);
  const SBFrame frame = frame_at(m, p, seed);
  const int d = static_cast<int>(frame.vectors.size());
  const double e = p.eps;
  Mat design(d * samples, 2);
  Vec rhs(d * samples);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const SBVec a = random_sb_vec(frame, rng);
    const SBVec b = random_sb_vec(frame, rng);
    const double ea = cd.eta(a);
    const double eb = cd.eta(b);
    design.block(s * d, 0, d, 1) = frame_coordinates(m, frame, (a * eb - b * ea) * e);
    design.block(s * d, 1, d, 1) = frame_coordinates(m, frame, (h.apply(a) * eb - h.apply(b) * ea) * e);
    rhs.segment(s * d, d) = frame_coordinates(m, frame, sb_curvature(m, p, a, b, cd.xi()));
  }
  const Vec sol = design.colPivHouseholderQr().solve(rhs);
  return {sol[0], sol[1]};
}

}  // namespace sasaki
