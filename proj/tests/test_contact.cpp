#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "sasaki/contact.hpp"

using namespace sasaki;
using sasaki::testing::max_abs;
using sasaki::testing::sample_point;
using sasaki::testing::space_form_configs;

namespace {

struct Case {
  ChartedMetric m;
  SBPoint p;
  double c;
};

Case make_case(int n, int nu, int eps, double c, std::uint64_t seed) {
  const ChartedMetric m = space_form_chart({n, nu, c});
  return {m, sample_point(m, eps, seed, sample_radius(c)), c};
}

std::vector<Case> all_cases() {
  std::vector<Case> out;
  std::uint64_t seed = 1000;
  for (const auto& cfg : space_form_configs()) out.push_back(make_case(cfg.n, cfg.nu, cfg.eps, cfg.c, ++seed));
  return out;
}

void expect_all_pass(const CheckReport& r, const std::string& context) {
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass()) << context << ": " << c.name << " = " << c.max_residual;
}

std::string describe(const Case& c) {
  return "n=" + std::to_string(c.m.dim()) + " nu=" + std::to_string(c.m.index()) + " eps=" +
         std::to_string(c.p.eps) + " c=" + std::to_string(c.c);
}

// Spread and mean of K(a, phi a) over random a in ker(eta).
std::pair<double, double> phi_sectional_range(const Case& c, int samples) {
  const SBFrame frame = frame_at(c.m, c.p);
  Rng rng(3);
  double lo = INFINITY, hi = -INFINITY;
  for (int s = 0; s < samples; ++s) {
    const SBVec a = random_horizontal_kernel_vec(frame, rng);
    const ContactData cd(c.m, c.p);
    const double den = cd.gcm(a, a) * cd.gcm(cd.phi(a), cd.phi(a)) - std::pow(cd.gcm(a, cd.phi(a)), 2);
    if (std::abs(den) < 0.05) continue;
    const double k = phi_sectional(c.m, c.p, a);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  return {hi - lo, 0.5 * (hi + lo)};
}

}  // namespace

TEST(KappaMu, ClosedFormForSpacelikeFibers) {
  // kappa = c(2 - c), mu = -2c
  EXPECT_DOUBLE_EQ(kappa_mu_for_space_form(1.0, 1).kappa, 1.0);
  EXPECT_DOUBLE_EQ(kappa_mu_for_space_form(1.0, 1).mu, -2.0);
  EXPECT_DOUBLE_EQ(kappa_mu_for_space_form(2.0, 1).kappa, 0.0);
  EXPECT_DOUBLE_EQ(kappa_mu_for_space_form(-1.0, 1).kappa, -3.0);
  EXPECT_DOUBLE_EQ(kappa_mu_for_space_form(0.0, 1).kappa, 0.0);
}

TEST(KappaMu, ClosedFormForTimelikeFibers) {
  // kappa = c(6 + c), mu = -2c
  EXPECT_DOUBLE_EQ(kappa_mu_for_space_form(1.0, -1).kappa, 7.0);
  EXPECT_DOUBLE_EQ(kappa_mu_for_space_form(-1.0, -1).kappa, -5.0);
  EXPECT_DOUBLE_EQ(kappa_mu_for_space_form(-1.0, -1).mu, 2.0);
  EXPECT_NEAR(kappa_mu_for_space_form(-3.0 + 2.0 * std::sqrt(2.0), -1).kappa, -1.0, 1e-14);
}

TEST(ContactAxioms, HoldForSpacelikeFibers) {
  for (const auto& c : all_cases()) {
    if (c.p.eps != 1) continue;
    expect_all_pass(check_contact_axioms(c.m, c.p, 10, 7), describe(c));
  }
}

TEST(ContactAxioms, AlgebraicPartHoldsForTimelikeFibers) {
  for (const auto& c : all_cases()) {
    if (c.p.eps != -1) continue;
    const CheckReport r = check_contact_axioms(c.m, c.p, 10, 7);
    for (const char* name : {"eta_xi", "phi_xi", "gcm_xi_xi", "phi_squared", "compatibility"})
      EXPECT_TRUE(r.find(name)->pass()) << describe(c) << " " << name;
  }
}

TEST(ContactAxioms, DEtaCarriesTheFiberSign) {
  // d eta = eps g_cm(., phi .): the axiom d eta = g_cm(., phi .) fails by a sign when eps = -1.
  for (const auto& c : all_cases()) {
    const ContactData cd(c.m, c.p);
    const SBFrame frame = frame_at(c.m, c.p);
    const Vec X = frame.base.front();
    const Vec Y = c.p.u + 0.5 * frame.base.back();
    for (SBKind kx : {SBKind::kHorizontal, SBKind::kTangential})
      for (SBKind ky : {SBKind::kHorizontal, SBKind::kTangential}) {
        auto lift = [&](const Vec& v, SBKind k) {
          return k == SBKind::kHorizontal ? sb_horizontal_lift(c.p, v) : tangential_lift(c.m, c.p, v);
        };
        const double d_eta = d_eta_fd(c.m, c.p, X, kx, Y, ky);
        EXPECT_NEAR(d_eta, c.p.eps * cd.gcm(lift(X, kx), cd.phi(lift(Y, ky))), 1e-7) << describe(c);
      }
    const CheckReport r = check_contact_axioms(c.m, c.p, 10, 7);
    EXPECT_EQ(r.find("d_eta")->pass(), c.p.eps == 1) << describe(c);
  }
}

TEST(ContactAxioms, XiIsTwiceTheGeodesicFlow) {
  const Case c = make_case(3, 1, 1, 1.0, 4);
  const ContactData cd(c.m, c.p);
  EXPECT_EQ(cd.xi().h, 2.0 * c.p.u);
  EXPECT_TRUE(cd.xi().t.isZero(0.0));
  EXPECT_DOUBLE_EQ(cd.eta_prime(cd.xi_prime()), 1.0);
  EXPECT_DOUBLE_EQ(cd.gcm(cd.xi(), cd.xi()), 1.0);
}

TEST(HOperator, EigenvaluesSelfAdjointnessAndXi) {
  for (const auto& c : all_cases()) expect_all_pass(h_operator_checks(c.m, c.p, c.c), describe(c));
}

TEST(HOperator, TraceDependsOnlyOnFiberSign) {
  // Eigenvalue pairs (1 - c, c - 1) for eps = 1 and (3 + c, 1 - c) for eps = -1.
  for (const auto& c : all_cases()) {
    const SBFrame frame = frame_at(c.m, c.p);
    const double expected = 2.0 * (1 - c.p.eps) * (c.m.dim() - 1);
    EXPECT_NEAR(h_at(c.m, c.p).matrix_in(frame).trace(), expected, 1e-9) << describe(c);
  }
}

TEST(NablaXi, ClosedFormsAndIdentity) {
  for (const auto& c : all_cases()) expect_all_pass(nabla_checks(c.m, c.p, 8, 3), describe(c));
}

TEST(NablaXi, HoldsOnGenericMetric) {
  const ChartedMetric m = trig_perturbed_chart(3, 1, 0.2, 9);
  for (int eps : {1, -1}) {
    const SBPoint p = sample_point(m, eps, 33 + eps, 0.4);
    const CheckReport r = nabla_checks(m, p, 8, 3);
    EXPECT_TRUE(r.find("nabla_xi_closed_vs_connection")->pass());
    EXPECT_TRUE(r.find("nabla_phi_closed_vs_definition")->pass());
  }
}

TEST(NablaPhi, AsPrintedFormDiffersOnCurvedBase) {
  for (double c : {0.0, 1.5}) {
    const Case cs = make_case(3, 0, 1, c, 17);
    const SBFrame frame = frame_at(cs.m, cs.p);
    double gap = 0.0;
    std::vector<Vec> ys = frame.base;
    ys.push_back(cs.p.u + frame.base.front());
    for (const Vec& X : frame.base)
      for (const Vec& Y : ys) {
        const SBVec a = tangential_lift(cs.m, cs.p, X);
        const SBVec b = sb_horizontal_lift(cs.p, Y);
        const SBVec corrected = nabla_phi(cs.m, cs.p, a, b, NablaPhiForm::kCorrected);
        const SBVec printed = nabla_phi(cs.m, cs.p, a, b, NablaPhiForm::kAsPrinted);
        const VectorField Yf = [Y](const Vec&) { return Y; };
        const SBVec def = nabla_phi_by_definition(cs.m, cs.p, X, SBKind::kTangential, Yf, SBKind::kHorizontal);
        EXPECT_LT(frame_norm(cs.m, frame, corrected - def), 1e-8);
        gap = std::max(gap, frame_norm(cs.m, frame, printed - def));
      }
    if (c == 0.0) {
      EXPECT_LT(gap, 1e-12);
    } else {
      EXPECT_GT(gap, 0.1);
    }
  }
}

TEST(KappaMu, NullityConditionOnSpaceForms) {
  for (const auto& c : all_cases()) {
    const CheckReport r = kappa_mu_residual(c.m, c.p, kappa_mu_for_space_form(c.c, c.p.eps), 10, 5);
    expect_all_pass(r, describe(c));
  }
}

TEST(KappaMu, LeastSquaresFitRecoversFormula) {
  for (const auto& c : all_cases()) {
    const KappaMu fit = fit_kappa_mu(c.m, c.p, 20, 8);
    EXPECT_TRUE(kappa_mu_residual(c.m, c.p, fit, 10, 5).find("kappa_mu")->pass()) << describe(c);
    // At c = eps, h is a multiple of the identity on ker(eta) and only a
    // combination of kappa and mu is determined.
    if (c.c == c.p.eps) continue;
    const KappaMu km = kappa_mu_for_space_form(c.c, c.p.eps);
    EXPECT_NEAR(fit.kappa, km.kappa, 1e-7) << describe(c);
    EXPECT_NEAR(fit.mu, km.mu, 1e-7) << describe(c);
  }
}

TEST(KappaMu, FailsOffSpaceForms) {
  const ChartedMetric m = trig_perturbed_chart(3, 0, 0.25, 10);
  const SBPoint p = sample_point(m, 1, 3, 0.4);
  const KappaMu fit = fit_kappa_mu(m, p, 20, 8);
  const CheckReport r = kappa_mu_residual(m, p, fit, 10, 5);
  EXPECT_FALSE(r.find("kappa_mu")->pass());
}

TEST(PsiU, QuadraticsShareTheEigenvalue) {
  for (const auto& c : all_cases())
    expect_all_pass(psi_u_quadratics(c.m, c.p, kappa_mu_for_space_form(c.c, c.p.eps), c.c), describe(c));
}

TEST(KContact, HoldsExactlyWhenCurvatureEqualsFiberSign) {
  for (int eps : {1, -1})
    for (double c : {-1.0, 0.0, 1.0, 2.0}) {
      const Case cs = make_case(3, 1, eps, c, 60);
      const CheckReport r = k_contact_residual(cs.m, cs.p, 10, 4);
      EXPECT_EQ(r.pass(), c == eps) << describe(cs);
    }
}

TEST(KContact, PlaneCurvatureGapAtCurvatureTwo) {
  // K(xi, X^h) = 4c - 3 eps c^2, so |K - eps| = 5 at eps = 1, c = 2.
  const Case cs = make_case(2, 0, 1, 2.0, 61);
  EXPECT_NEAR(k_contact_residual(cs.m, cs.p, 10, 4).residual("plane_curvature"), 5.0, 1e-8);
}

TEST(Sasakian, UnitSphereBundleOfUnitSphere) {
  const Case yes = make_case(3, 0, 1, 1.0, 70);
  expect_all_pass(sasakian_residual(yes.m, yes.p), describe(yes));
  for (double c : {0.0, 2.0}) {
    const Case no = make_case(3, 0, 1, c, 71);
    const CheckReport r = sasakian_residual(no.m, no.p);
    EXPECT_FALSE(r.find("sasakian_nabla_phi")->pass());
    EXPECT_FALSE(r.find("sasakian_nijenhuis")->pass());
  }
}

TEST(Sasakian, TimelikeFibersAreNormalOnlyAtCurvatureMinusOne) {
  const Case normal = make_case(3, 1, -1, -1.0, 72);
  EXPECT_TRUE(sasakian_residual(normal.m, normal.p).find("sasakian_nijenhuis")->pass());
  const Case other = make_case(3, 1, -1, -3.0 + 2.0 * std::sqrt(2.0), 73);
  EXPECT_FALSE(sasakian_residual(other.m, other.p).find("sasakian_nijenhuis")->pass());
}

TEST(PhiSectional, ConstantAtPredictedCurvatureForSpacelikeFibers) {
  const double c = 2.0 + std::sqrt(5.0);
  const auto [spread, value] = phi_sectional_range(make_case(3, 0, 1, c, 80), 40);
  EXPECT_LT(spread, 1e-8);
  EXPECT_NEAR(value, c * c, 1e-8);  // 4c(eps - 1) + eps c^2 at eps = 1
  EXPECT_GT(phi_sectional_range(make_case(3, 0, 1, 1.0, 81), 40).first, 1.0);
}

TEST(PhiSectional, TimelikeFibersConstantValue) {
  const double c = -2.0 + std::sqrt(5.0);
  const auto [spread, value] = phi_sectional_range(make_case(3, 1, -1, c, 82), 60);
  EXPECT_LT(spread, 1e-8);
  EXPECT_NEAR(value, -c * c, 1e-8);
}

TEST(FrameNorm, ZeroOnlyForZero) {
  const Case cs = make_case(3, 1, -1, 1.0, 90);
  const SBFrame frame = frame_at(cs.m, cs.p);
  EXPECT_EQ(frame_norm(cs.m, frame, zero_sb_vec(cs.p)), 0.0);
  for (const SBVec& f : frame.vectors) EXPECT_NEAR(frame_norm(cs.m, frame, f), 1.0, 1e-12);
}
