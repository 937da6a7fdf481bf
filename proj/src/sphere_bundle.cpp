#include "sasaki/sphere_bundle.hpp"

#include <cmath>
#include <random>

namespace sasaki {

namespace {

void require_same_point(const SBPoint& a, const SBPoint& b) {
  if ((a.x - b.x).cwiseAbs().maxCoeff() > 1e-12 || (a.u - b.u).cwiseAbs().maxCoeff() > 1e-12) {
    throw GeometryError(ErrorCode::kPointMismatch, "vectors live at different points of T_eps M");
  }
}

bool is_tangential(SBKind k) { return k == SBKind::kTangential; }

}  // namespace

SBPoint make_sb_point(const ChartedMetric& m, const Point& x, const Vec& u, int eps) {
  if (eps != 1 && eps != -1) throw GeometryError(ErrorCode::kInvalidConfig, "eps must be +1 or -1");
  if (eps == -1 && m.index() == 0) {
    throw GeometryError(ErrorCode::kInvalidConfig, "eps = -1 needs a metric of index >= 1");
  }
  const Mat g = metric_at(m, x);
  if (u.size() != m.dim() || std::abs(bilinear(g, u, u) - eps) >= kOnShellTolerance) {
    throw GeometryError(ErrorCode::kInvalidConfig, "u is not on the pseudo-sphere g(u,u) = eps");
  }
  return {x, u, eps};
}

Vec orthogonal_to_fiber(const Mat& g, const SBPoint& p, const Vec& Y) {
  return Y - p.eps * bilinear(g, Y, p.u) * p.u;
}

SBVec make_sb_vec(const ChartedMetric& m, const SBPoint& p, const Vec& h, const Vec& t) {
  return {p, h, orthogonal_to_fiber(metric_at(m, p.x), p, t)};
}

SBVec zero_sb_vec(const SBPoint& p) {
  return {p, Vec::Zero(p.x.size()), Vec::Zero(p.x.size())};
}

TMVec normal_at(const SBPoint& p) { return {p.tm(), Vec::Zero(p.x.size()), p.u}; }

SBVec tangential_lift(const ChartedMetric& m, const SBPoint& p, const Vec& X) {
  return make_sb_vec(m, p, Vec::Zero(X.size()), X);
}

SBVec sb_horizontal_lift(const SBPoint& p, const Vec& X) { return {p, X, Vec::Zero(X.size())}; }

TMVec embed(const SBVec& a) { return {a.at.tm(), a.h, a.t}; }

SBVec tangent_part(const ChartedMetric& m, const SBPoint& p, const TMVec& w) {
  return make_sb_vec(m, p, w.h, w.v);
}

double induced_metric_at(const ChartedMetric& m, const SBVec& a, const SBVec& b) {
  require_same_point(a.at, b.at);
  const Mat g = metric_at(m, a.at.x);
  return bilinear(g, a.h, b.h) + bilinear(g, a.t, b.t);
}

// ---------------------------------------------------------------------------
// Frames

SBFrame frame_at(const ChartedMetric& m, const SBPoint& p, std::uint64_t seed) {
  const int n = m.dim();
  const Mat g = metric_at(m, p.x);
  std::vector<Vec> basis{p.u};
  std::vector<int> signs{p.eps};

  auto project = [&](Vec w) {
    for (std::size_t b = 0; b < basis.size(); ++b) w -= signs[b] * bilinear(g, w, basis[b]) * basis[b];
    return w;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr double kPivotFloor = 1e-6;
  while (static_cast<int>(basis.size()) < n) {
    Vec best;
    double best_norm = 0.0;
    for (int k = 0; k < n; ++k) {
      const Vec w = project(Vec::Unit(n, k));
      const double q = std::abs(bilinear(g, w, w));
      if (q > best_norm) {
        best_norm = q;
        best = w;
      }
    }
    for (int attempt = 0; best_norm < kPivotFloor && attempt < 64; ++attempt) {
      Vec r(n);
      for (int i = 0; i < n; ++i) r[i] = normal(rng);
      const Vec w = project(r);
      const double q = std::abs(bilinear(g, w, w));
      if (q > best_norm) {
        best_norm = q;
        best = w;
      }
    }
    if (best_norm < kPivotFloor) {
      throw GeometryError(ErrorCode::kFrameConstructionFailure, "no non-null complement vector found");
    }
    const double q = bilinear(g, best, best);
    basis.push_back(best / std::sqrt(std::abs(q)));
    signs.push_back(q > 0 ? 1 : -1);
  }

  SBFrame frame;
  frame.at = p;
  frame.base.assign(basis.begin() + 1, basis.end());
  frame.base_signs.assign(signs.begin() + 1, signs.end());
  for (std::size_t k = 0; k < frame.base.size(); ++k) {
    frame.vectors.push_back(make_sb_vec(m, p, Vec::Zero(n), frame.base[k]));
    frame.signs.push_back(frame.base_signs[k]);
  }
  for (std::size_t k = 0; k < frame.base.size(); ++k) {
    frame.vectors.push_back(sb_horizontal_lift(p, frame.base[k]));
    frame.signs.push_back(frame.base_signs[k]);
  }
  frame.vectors.push_back(sb_horizontal_lift(p, p.u));
  frame.signs.push_back(p.eps);
  return frame;
}

Vec frame_coordinates(const ChartedMetric& m, const SBFrame& frame, const SBVec& v) {
  Vec out(static_cast<int>(frame.vectors.size()));
  for (std::size_t k = 0; k < frame.vectors.size(); ++k) {
    out[static_cast<int>(k)] = frame.signs[k] * induced_metric_at(m, v, frame.vectors[k]);
  }
  return out;
}

SBVec frame_combination(const SBFrame& frame, const Vec& coeffs) {
  SBVec out = zero_sb_vec(frame.at);
  for (std::size_t k = 0; k < frame.vectors.size(); ++k) {
    out = out + frame.vectors[k] * coeffs[static_cast<int>(k)];
  }
  return out;
}

Mat induced_gram(const ChartedMetric& m, const SBFrame& frame) {
  const int d = static_cast<int>(frame.vectors.size());
  Mat gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = induced_metric_at(m, frame.vectors[i], frame.vectors[j]);
  return gram;
}

// ---------------------------------------------------------------------------
// Brackets and connection

SBVec sb_bracket(const ChartedMetric& m, const VectorField& X, const VectorField& Y, SBKind kx,
                 SBKind ky, const SBPoint& p) {
  const BaseGeometry geo = base_geometry_at(m, p.x);
  const Vec x = X(p.x);
  const Vec y = Y(p.x);
  const int n = m.dim();
  if (!is_tangential(kx) && !is_tangential(ky)) {
    const Vec h = directional_derivative(Y, p.x, x) - directional_derivative(X, p.x, y);
    return make_sb_vec(m, p, h, -geo.riemann.apply(x, y, p.u));
  }
  if (!is_tangential(kx)) {
    return make_sb_vec(m, p, Vec::Zero(n), covariant_derivative(geo.gamma, Y, p.x, x));
  }
  if (!is_tangential(ky)) {
    return make_sb_vec(m, p, Vec::Zero(n), -covariant_derivative(geo.gamma, X, p.x, y));
  }
  const double e = p.eps;
  return make_sb_vec(m, p, Vec::Zero(n),
                     e * bilinear(geo.g, x, p.u) * y - e * bilinear(geo.g, y, p.u) * x);
}

SBVec sb_nabla(const ChartedMetric& m, const Vec& X, const VectorField& Y, SBKind kx, SBKind ky,
               const SBPoint& p) {
  const BaseGeometry geo = base_geometry_at(m, p.x);
  const Vec& u = p.u;
  const Vec y = Y(p.x);
  const int n = m.dim();
  if (is_tangential(kx)) {
    if (is_tangential(ky)) {
      return make_sb_vec(m, p, Vec::Zero(n), -p.eps * bilinear(geo.g, y, u) * X);
    }
    return make_sb_vec(m, p, 0.5 * geo.riemann.apply(u, X, y), Vec::Zero(n));
  }
  const Vec nabla_xy = covariant_derivative(geo.gamma, Y, p.x, X);
  if (is_tangential(ky)) {
    return make_sb_vec(m, p, 0.5 * geo.riemann.apply(u, y, X), nabla_xy);
  }
  return make_sb_vec(m, p, nabla_xy, -0.5 * geo.riemann.apply(X, y, u));
}

SBVec sb_nabla_via_projection(const ChartedMetric& m, const Vec& X, const VectorField& Y,
                              SBKind kx, SBKind ky, const SBPoint& p) {
  const int n = m.dim();
  const TMPoint at = p.tm();
  const Vec& u = p.u;
  const double e = p.eps;
  const Mat g = metric_at(m, p.x);
  const VectorField fiber = [u](const Vec&) { return u; };

  // nabla~_A along A = X^h, or A = X^t = X^v - eps g(X,u) N split into its two
  // vertical pieces.
  auto ambient = [&](const VectorField& field, LiftKind kind) {
    if (!is_tangential(kx)) return tm_nabla(m, X, field, LiftKind::kHorizontal, kind, at);
    return tm_nabla(m, X, field, LiftKind::kVertical, kind, at) -
           tm_nabla(m, u, field, LiftKind::kVertical, kind, at) * (e * bilinear(g, X, u));
  };
  const Vec du = fiber_coordinate_derivative(m, X, kx, p);

  TMVec w = zero_tm_vec(at);
  if (!is_tangential(ky)) {
    w = ambient(Y, LiftKind::kHorizontal);
  } else {
    // Y^t = Y^v - eps f N with f = g(Y, u)
    const Vec y = Y(p.x);
    const double df = pairing_derivative(m, X, kx, Y, p);
    const TMVec nabla_n = TMVec{at, Vec::Zero(n), du} + ambient(fiber, LiftKind::kVertical);
    const TMVec normal = normal_at(p);
    w = ambient(Y, LiftKind::kVertical) - normal * (e * df) - nabla_n * (e * bilinear(g, y, u));
  }
  const TMVec normal = normal_at(p);
  w = w - normal * (e * sasaki_metric_at(m, w, normal));
  return tangent_part(m, p, w);
}

Vec fiber_coordinate_derivative(const ChartedMetric& m, const Vec& X, SBKind kx, const SBPoint& p) {
  if (is_tangential(kx)) return orthogonal_to_fiber(metric_at(m, p.x), p, X);
  return -christoffel_at(m, p.x).contract(X, p.u);
}

double pairing_derivative(const ChartedMetric& m, const Vec& X, SBKind kx, const VectorField& Y,
                          const SBPoint& p) {
  const int n = m.dim();
  const Mat g = metric_at(m, p.x);
  const Vec y = Y(p.x);
  double df = bilinear(g, y, fiber_coordinate_derivative(m, X, kx, p));
  if (!is_tangential(kx)) {
    const Tensor3 dg = m.d1(p.x);
    Mat dg_x = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dg_x(i, j) += dg(k, i, j) * X[k];
    df += bilinear(dg_x, y, p.u) + bilinear(g, directional_derivative(Y, p.x, X), p.u);
  }
  return df;
}

// ---------------------------------------------------------------------------
// Curvature

namespace {

struct CurvatureContext {
  const BaseGeometry& geo;
  const SBPoint& p;
  Vec R(const Vec& a, const Vec& b, const Vec& c) const { return geo.riemann.apply(a, b, c); }
  double g(const Vec& a, const Vec& b) const { return bilinear(geo.g, a, b); }
};

struct Lifted {
  Vec h;
  Vec t;
};

// R(X^t, Y^t) Z^t
Lifted case_ttt(const CurvatureContext& cx, const Vec& X, const Vec& Y, const Vec& Z) {
  const double e = cx.p.eps;
  return {Vec::Zero(X.size()), e * (-cx.g(X, Z) * Y + cx.g(Z, Y) * X)};
}

// R(X^t, Y^t) Z^h
Lifted case_tth(const CurvatureContext& cx, const Vec& X, const Vec& Y, const Vec& Z) {
  const Vec& u = cx.p.u;
  const double e = cx.p.eps;
  Vec h = cx.R(X, Y, Z) - e * (cx.g(Y, u) * cx.R(X, u, Z) + cx.g(X, u) * cx.R(u, Y, Z)) +
          0.25 * (cx.R(u, X, cx.R(u, Y, Z)) - cx.R(u, Y, cx.R(u, X, Z)));
  return {h, Vec::Zero(X.size())};
}

// R(X^h, Y^t) Z^t
Lifted case_htt(const CurvatureContext& cx, const Vec& X, const Vec& Y, const Vec& Z) {
  const Vec& u = cx.p.u;
  const double e = cx.p.eps;
  Vec h = -0.5 * cx.R(Y, Z, X) + 0.5 * e * (cx.g(Y, u) * cx.R(u, Z, X) + cx.g(Z, u) * cx.R(Y, u, X)) -
          0.25 * cx.R(u, Y, cx.R(u, Z, X));
  return {h, Vec::Zero(X.size())};
}

// R(X^h, Y^t) Z^h; nabla_x_r = nabla_X R
Lifted case_hth(const CurvatureContext& cx, const Vec& X, const Vec& Y, const Vec& Z,
                const RiemannTensor& nabla_x_r) {
  const Vec& u = cx.p.u;
  const double e = cx.p.eps;
  Vec t = 0.5 * cx.R(X, Z, Y) - 0.5 * e * cx.g(Y, u) * cx.R(X, Z, u) - 0.25 * cx.R(X, cx.R(u, Y, Z), u);
  return {0.5 * nabla_x_r.apply(u, Y, Z), t};
}

// R(X^h, Y^h) Z^t
Lifted case_hht(const CurvatureContext& cx, const Vec& X, const Vec& Y, const Vec& Z,
                const RiemannTensor& nabla_x_r, const RiemannTensor& nabla_y_r) {
  const Vec& u = cx.p.u;
  const double e = cx.p.eps;
  Vec t = cx.R(X, Y, Z) - e * cx.g(Z, u) * cx.R(X, Y, u) +
          0.25 * (cx.R(Y, cx.R(u, Z, X), u) - cx.R(X, cx.R(u, Z, Y), u));
  Vec h = 0.5 * (nabla_x_r.apply(u, Z, Y) - nabla_y_r.apply(u, Z, X));
  return {h, t};
}

// R(X^h, Y^h) Z^h; nabla_z_r = nabla_Z R
Lifted case_hhh(const CurvatureContext& cx, const Vec& X, const Vec& Y, const Vec& Z,
                const RiemannTensor& nabla_z_r) {
  const Vec& u = cx.p.u;
  Vec h = cx.R(X, Y, Z) + 0.5 * cx.R(u, cx.R(X, Y, u), Z) -
          0.25 * (cx.R(u, cx.R(Y, Z, u), X) - cx.R(u, cx.R(X, Z, u), Y));
  return {h, 0.5 * nabla_z_r.apply(X, Y, u)};
}

}  // namespace

SBVec sb_curvature(const ChartedMetric& m, const SBPoint& p, const SBVec& a, const SBVec& b,
                   const SBVec& c) {
  require_same_point(a.at, p);
  require_same_point(b.at, p);
  require_same_point(c.at, p);
  const BaseGeometry geo = base_geometry_at(m, p.x);
  const CurvatureContext cx{geo, p};
  const RiemannTensor na = nabla_riemann_at(m, p.x, a.h);
  const RiemannTensor nb = nabla_riemann_at(m, p.x, b.h);
  const RiemannTensor nc = nabla_riemann_at(m, p.x, c.h);

  Vec h = Vec::Zero(m.dim());
  Vec t = Vec::Zero(m.dim());
  auto add = [&](const Lifted& l, double sign) {
    h += sign * l.h;
    t += sign * l.t;
  };
  add(case_ttt(cx, a.t, b.t, c.t), 1.0);
  add(case_tth(cx, a.t, b.t, c.h), 1.0);
  add(case_htt(cx, a.h, b.t, c.t), 1.0);
  add(case_htt(cx, b.h, a.t, c.t), -1.0);
  add(case_hth(cx, a.h, b.t, c.h, na), 1.0);
  add(case_hth(cx, b.h, a.t, c.h, nb), -1.0);
  add(case_hht(cx, a.h, b.h, c.t, na, nb), 1.0);
  add(case_hhh(cx, a.h, b.h, c.h, nc), 1.0);
  return {p, h, orthogonal_to_fiber(geo.g, p, t)};
}

int sasaki_index(const ChartedMetric& m, const Point& x, const Vec& u) {
  return signature_of(sasaki_metric_induced(m, x, u)).neg;
}

int induced_index(const ChartedMetric& m, const SBPoint& p) {
  return signature_of(induced_gram(m, frame_at(m, p))).neg;
}

}  // namespace sasaki
