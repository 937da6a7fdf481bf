#pragma once

// Standard contact pseudo-metric structure on T_eps M:
//   xi = 2 u^h,  eta = eta'/2 with eta'(X^h) = eps g(X,u), eta'(X^t) = 0,
//   phi = phi' with phi'(X^h) = X^t, phi'(X^t) = -X^h + eps g(X,u) u^h,
//   g_cm = gbar / 4.
// Residual checks take the sup norm of frame coordinates, which stays
// meaningful when the frame contains timelike vectors.

#include <cstdint>

#include "sasaki/report.hpp"
#include "sasaki/sphere_bundle.hpp"

namespace sasaki {

inline constexpr double kAlgebraicTolerance = 1e-10;
inline constexpr double kExactTolerance = 1e-12;
inline constexpr double kClosedFormTolerance = 1e-8;
inline constexpr double kConnectionTolerance = 1e-9;
inline constexpr double kFiniteDifferenceTolerance = 1e-5;

struct KappaMu {
  double kappa = 0.0;
  double mu = 0.0;
};

class ContactData {
 public:
  ContactData(const ChartedMetric& m, const SBPoint& p);

  const SBPoint& at() const { return p_; }
  const Mat& base_metric() const { return g_; }
  const SBVec& xi() const { return xi_; }
  SBVec xi_prime() const { return xi_ * 0.5; }
  double eta(const SBVec& a) const;
  double eta_prime(const SBVec& a) const { return 2.0 * eta(a); }
  SBVec phi(const SBVec& a) const;
  SBVec phi_prime(const SBVec& a) const { return phi(a); }
  double gcm(const SBVec& a, const SBVec& b) const;
  double gbar(const SBVec& a, const SBVec& b) const;

 private:
  SBPoint p_;
  Mat g_;
  SBVec xi_;
};

ContactData contact_data_at(const ChartedMetric& m, const SBPoint& p);

// Largest |frame coordinate| of v.
double frame_norm(const ChartedMetric& m, const SBFrame& frame, const SBVec& v);

// Operator h on ker(eta), extended by h(xi) = 0:
//   h X^h = (-eps X + R(X,u)u)^h for X orthogonal to u,  h Y^t = ((2-eps) Y - R(Y,u)u)^t.
class HOperator {
 public:
  HOperator(const ChartedMetric& m, const SBPoint& p);
  SBVec apply(const SBVec& a) const;
  // Column l holds the frame coordinates of h(f_l).
  Mat matrix_in(const SBFrame& frame) const;

 private:
  const ChartedMetric* m_;
  SBPoint p_;
  Mat g_;
  RiemannTensor r_;
};

HOperator h_at(const ChartedMetric& m, const SBPoint& p);

// nabla-bar_a xi from the closed forms
//   nabla_{X^h} xi = -t{R(X,u)u},  nabla_{X^t} xi = -2 phi X^t - h{R(X,u)u}.
SBVec nabla_xi(const ChartedMetric& m, const SBPoint& p, const SBVec& a);
// Same vector from sb_nabla applied to xi = 2 u^i (d_i)^h.
SBVec nabla_xi_via_connection(const ChartedMetric& m, const SBPoint& p, const SBVec& a);

enum class NablaPhiForm {
  kCorrected,  // (nabla_{X^t} phi) Y^h = 1/2 t{R(X,u)Y} - 2 eta(Y^h) X^t
  kAsPrinted,  // same term without the factor 1/2
};

// (nabla-bar_a phi) b, tensorial closed forms over the lift parts of a and b.
SBVec nabla_phi(const ChartedMetric& m, const SBPoint& p, const SBVec& a, const SBVec& b,
                NablaPhiForm form = NablaPhiForm::kCorrected);
// nabla-bar_a (phi B) - phi(nabla-bar_a B) for a = X^kx at p and the lift field B = Y^ky.
SBVec nabla_phi_by_definition(const ChartedMetric& m, const SBPoint& p, const Vec& X, SBKind kx,
                              const VectorField& Y, SBKind ky);

KappaMu kappa_mu_for_space_form(double c, int eps);

// R-bar(a,b)xi - eps kappa (eta(b)a - eta(a)b) - eps mu (eta(b)ha - eta(a)hb)
SBVec kappa_mu_defect(const ChartedMetric& m, const SBPoint& p, const KappaMu& km, const SBVec& a,
                      const SBVec& b);

// Sectional curvature of g_cm = gbar/4 on span(a, b).
double contact_sectional_curvature(const ChartedMetric& m, const SBPoint& p, const SBVec& a,
                                   const SBVec& b);
// K_cm(a, phi a) for a in ker(eta); a is projected onto ker(eta) first.
double phi_sectional(const ChartedMetric& m, const SBPoint& p, const SBVec& a);

// dη by the coordinate formula 1/2 (A eta(B) - B eta(A) - eta([A,B])) on lift
// fields of constant chart vectors, derivatives of eta(B) by central differences.
double d_eta_fd(const ChartedMetric& m, const SBPoint& p, const Vec& X, SBKind kx, const Vec& Y,
                SBKind ky, double step = kFirstDerivativeStep);

// Per-point checks. Sample counts refer to random pairs drawn with `seed`.
CheckReport check_contact_axioms(const ChartedMetric& m, const SBPoint& p, int samples,
                                 std::uint64_t seed, double fd_step = kFirstDerivativeStep);
CheckReport h_operator_checks(const ChartedMetric& m, const SBPoint& p, double c);
CheckReport nabla_checks(const ChartedMetric& m, const SBPoint& p, int samples, std::uint64_t seed);
CheckReport kappa_mu_residual(const ChartedMetric& m, const SBPoint& p, const KappaMu& km, int samples,
                              std::uint64_t seed);
CheckReport psi_u_quadratics(const ChartedMetric& m, const SBPoint& p, const KappaMu& km, double c);
CheckReport k_contact_residual(const ChartedMetric& m, const SBPoint& p, int samples, std::uint64_t seed,
                               double fd_step = kFirstDerivativeStep);
CheckReport sasakian_residual(const ChartedMetric& m, const SBPoint& p,
                              double fd_step = kFirstDerivativeStep);

// Least-squares (kappa, mu) from sampled R-bar(a,b)xi; diagnostics only.
KappaMu fit_kappa_mu(const ChartedMetric& m, const SBPoint& p, int samples, std::uint64_t seed);

}  // namespace sasaki
