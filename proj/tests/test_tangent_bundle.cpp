#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "sasaki/oracle.hpp"

using namespace sasaki;
using sasaki::testing::max_abs;

namespace {

VectorField wavy_field(int n, double shift) {
  return [n, shift](const Vec& x) {
    Vec y(n);
    for (int i = 0; i < n; ++i) y[i] = std::sin(x[i] + shift + i) + x[0] * x[(i + 1) % n];
    return y;
  };
}

VectorField constant_field(const Vec& v) {
  return [v](const Vec&) { return v; };
}

struct Fixture {
  ChartedMetric m;
  TMPoint at;
};

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  Rng rng(77);
  for (const ChartedMetric& m : {space_form_chart({2, 0, 1.0}), space_form_chart({3, 1, -2.0}),
                                 trig_perturbed_chart(3, 1, 0.2, 4)}) {
    const Vec x = rng.uniform_vec(m.dim(), -0.3, 0.3);
    out.push_back({m, make_tm_point(m, x, rng.normal_vec(m.dim()))});
  }
  return out;
}

LiftKind kinds[] = {LiftKind::kHorizontal, LiftKind::kVertical};

}  // namespace

TEST(Lifts, CarryTheBaseVectorInTheRightSlot) {
  const ChartedMetric m = space_form_chart({2, 0, 1.0});
  const TMPoint at = make_tm_point(m, Vec::Zero(2), Vec::Ones(2));
  const Vec X = Vec::Unit(2, 1);
  const TMVec h = horizontal_lift({at.x, X}, at);
  const TMVec v = vertical_lift({at.x, X}, at);
  EXPECT_EQ(h.h, X);
  EXPECT_TRUE(h.v.isZero(0.0));
  EXPECT_EQ(v.v, X);
  EXPECT_TRUE(v.h.isZero(0.0));
  const Projection p = project(h + v * 2.0);
  EXPECT_EQ(p.pi_star.comps, X);
  EXPECT_EQ(p.K.comps, 2.0 * X);
}

TEST(Lifts, RejectVectorsAtOtherBasePoints) {
  const ChartedMetric m = space_form_chart({2, 0, 1.0});
  const TMPoint at = make_tm_point(m, Vec::Zero(2), Vec::Ones(2));
  try {
    horizontal_lift({Vec::Constant(2, 0.1), Vec::Ones(2)}, at);
    FAIL() << "expected BasePointMismatch";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBasePointMismatch);
  }
  EXPECT_THROW(make_tm_point(m, Vec::Zero(2), Vec::Ones(3)), GeometryError);
}

TEST(InducedCoordinates, RoundTrip) {
  Rng rng(3);
  for (const auto& f : fixtures()) {
    for (int s = 0; s < 10; ++s) {
      const TMVec v{f.at, rng.normal_vec(f.m.dim()), rng.normal_vec(f.m.dim())};
      const TMVec back = from_induced_coords(f.m, f.at, to_induced_coords(f.m, v));
      EXPECT_LT(max_abs(back - v), 1e-12);
    }
  }
}

TEST(InducedCoordinates, HorizontalLiftFollowsParallelTransport) {
  // X^h = X^i d_i - Gamma^k_ij X^i u^j d/du^k
  for (const auto& f : fixtures()) {
    const Vec X = Vec::LinSpaced(f.m.dim(), 0.5, 1.5);
    const Vec induced = to_induced_coords(f.m, horizontal_lift({f.at.x, X}, f.at));
    const Vec expected = lift_field_induced(f.m, constant_field(X), LiftKind::kHorizontal, stack(f.at.x, f.at.u));
    EXPECT_LT((induced - expected).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(SasakiMetric, LiftFormulaMatchesInducedGram) {
  Rng rng(5);
  for (const auto& f : fixtures()) {
    const Mat G = sasaki_metric_induced(f.m, f.at.x, f.at.u);
    const Mat oracle_G = oracle::sasaki_metric_field(f.m)(stack(f.at.x, f.at.u));
    EXPECT_LT((G - oracle_G).cwiseAbs().maxCoeff(), 1e-12);
    for (int s = 0; s < 10; ++s) {
      const TMVec a{f.at, rng.normal_vec(f.m.dim()), rng.normal_vec(f.m.dim())};
      const TMVec b{f.at, rng.normal_vec(f.m.dim()), rng.normal_vec(f.m.dim())};
      EXPECT_NEAR(sasaki_metric_at(f.m, a, b), bilinear(G, to_induced_coords(f.m, a), to_induced_coords(f.m, b)),
                  1e-12);
    }
  }
}

TEST(SasakiMetric, HorizontalAndVerticalAreOrthogonal) {
  for (const auto& f : fixtures()) {
    const int n = f.m.dim();
    const Mat g = metric_at(f.m, f.at.x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const TMVec h = horizontal_lift({f.at.x, Vec::Unit(n, i)}, f.at);
        const TMVec v = vertical_lift({f.at.x, Vec::Unit(n, j)}, f.at);
        EXPECT_EQ(sasaki_metric_at(f.m, h, v), 0.0);
        EXPECT_DOUBLE_EQ(sasaki_metric_at(f.m, v, vertical_lift({f.at.x, Vec::Unit(n, i)}, f.at)), g(i, j));
      }
  }
}

TEST(SasakiMetric, IndexIsTwiceTheBaseIndex) {
  for (int n : {2, 3})
    for (int nu = 0; nu <= n; ++nu) {
      const ChartedMetric m = space_form_chart({n, nu, 0.8});
      Rng rng(static_cast<std::uint64_t>(10 * n + nu));
      const Vec x = rng.uniform_vec(n, -0.3, 0.3);
      EXPECT_EQ(sasaki_index(m, x, rng.normal_vec(n)), 2 * nu);
    }
}

TEST(AlmostComplex, SquaresToMinusOneAndIsAnIsometry) {
  Rng rng(8);
  for (const auto& f : fixtures()) {
    const TMVec a{f.at, rng.normal_vec(f.m.dim()), rng.normal_vec(f.m.dim())};
    const TMVec b{f.at, rng.normal_vec(f.m.dim()), rng.normal_vec(f.m.dim())};
    EXPECT_LT(max_abs(almost_complex_J(almost_complex_J(a)) + a), 1e-15);
    EXPECT_NEAR(sasaki_metric_at(f.m, almost_complex_J(a), almost_complex_J(b)), sasaki_metric_at(f.m, a, b),
                1e-12);
  }
}

TEST(Connection, TorsionFree) {
  for (const auto& f : fixtures()) {
    const int n = f.m.dim();
    const VectorField X = wavy_field(n, 0.0), Y = wavy_field(n, 1.3);
    for (LiftKind kx : kinds)
      for (LiftKind ky : kinds) {
        const TMVec t = tm_nabla(f.m, X(f.at.x), Y, kx, ky, f.at) - tm_nabla(f.m, Y(f.at.x), X, ky, kx, f.at) -
                        lift_bracket(f.m, X, Y, kx, ky, f.at);
        EXPECT_LT(max_abs(t), 1e-8);
      }
  }
}

TEST(Connection, MatchesFiniteDifferenceOracle) {
  for (const auto& f : fixtures()) {
    const int n = f.m.dim();
    const Vec P = stack(f.at.x, f.at.u);
    const oracle::AmbientGeometry amb = oracle::ambient_geometry(f.m, P, false);
    const VectorField X = wavy_field(n, 0.4), Y = wavy_field(n, 2.1);
    for (LiftKind kx : kinds)
      for (LiftKind ky : kinds) {
        const Vec A = lift_field_induced(f.m, X, kx, P);
        const oracle::VecField B = ky == LiftKind::kHorizontal ? oracle::horizontal_lift_field(f.m, Y)
                                                               : oracle::vertical_lift_field(Y);
        const Vec expected = oracle::fd_covariant_derivative(amb, A, B);
        const Vec got = to_induced_coords(f.m, tm_nabla(f.m, X(f.at.x), Y, kx, ky, f.at));
        EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-6);
      }
  }
}

TEST(Connection, MetricCompatibleAlongLiftFields) {
  // A(Tg(B, C)) = Tg(nabla_A B, C) + Tg(B, nabla_A C) with A, B, C lifts of
  // constant-free base fields, the left side by central differences in TM.
  for (const auto& f : fixtures()) {
    const int n = f.m.dim();
    const Vec P = stack(f.at.x, f.at.u);
    const VectorField X = wavy_field(n, 0.2), Y = wavy_field(n, 0.9), Z = wavy_field(n, 1.7);
    const oracle::MatrixField G = oracle::sasaki_metric_field(f.m);
    for (LiftKind kx : kinds)
      for (LiftKind ky : kinds)
        for (LiftKind kz : kinds) {
          auto pairing = [&](const Vec& Q) {
            return bilinear(G(Q), lift_field_induced(f.m, Y, ky, Q), lift_field_induced(f.m, Z, kz, Q));
          };
          const Vec A = lift_field_induced(f.m, X, kx, P);
          const double h = 1e-5;
          const double lhs = (pairing(P + h * A) - pairing(P - h * A)) / (2 * h);
          const TMVec y_lift = ky == LiftKind::kHorizontal ? horizontal_lift({f.at.x, Y(f.at.x)}, f.at)
                                                           : vertical_lift({f.at.x, Y(f.at.x)}, f.at);
          const TMVec z_lift = kz == LiftKind::kHorizontal ? horizontal_lift({f.at.x, Z(f.at.x)}, f.at)
                                                           : vertical_lift({f.at.x, Z(f.at.x)}, f.at);
          const double rhs = sasaki_metric_at(f.m, tm_nabla(f.m, X(f.at.x), Y, kx, ky, f.at), z_lift) +
                             sasaki_metric_at(f.m, y_lift, tm_nabla(f.m, X(f.at.x), Z, kx, kz, f.at));
          EXPECT_NEAR(lhs, rhs, 1e-6);
        }
  }
}

TEST(Brackets, MatchFiniteDifferenceLieBracket) {
  for (const auto& f : fixtures()) {
    const int n = f.m.dim();
    const Vec P = stack(f.at.x, f.at.u);
    const VectorField X = wavy_field(n, 0.6), Y = wavy_field(n, 1.1);
    for (LiftKind kx : kinds)
      for (LiftKind ky : kinds) {
        const oracle::VecField A = [&](const Vec& Q) { return lift_field_induced(f.m, X, kx, Q); };
        const oracle::VecField B = [&](const Vec& Q) { return lift_field_induced(f.m, Y, ky, Q); };
        const Vec expected = oracle::fd_lie_bracket(A, B, P);
        const Vec got = to_induced_coords(f.m, lift_bracket(f.m, X, Y, kx, ky, f.at));
        EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-6);
      }
  }
}

TEST(Brackets, VerticalLiftsCommute) {
  const auto f = fixtures().front();
  const VectorField X = wavy_field(2, 0.0);
  EXPECT_EQ(max_abs(lift_bracket(f.m, X, X, LiftKind::kVertical, LiftKind::kVertical, f.at)), 0.0);
}
