#include "sasaki/tangent_bundle.hpp"

namespace sasaki {

namespace {

void require_base(const TangentVec& X, const TMPoint& at) {
  if (X.base.size() != at.x.size() || (X.base - at.x).cwiseAbs().maxCoeff() > 1e-12) {
    throw GeometryError(ErrorCode::kBasePointMismatch, "vector is not based at pi(at)");
  }
}

void require_same_point(const TMPoint& a, const TMPoint& b) {
  if ((a.x - b.x).cwiseAbs().maxCoeff() > 1e-12 || (a.u - b.u).cwiseAbs().maxCoeff() > 1e-12) {
    throw GeometryError(ErrorCode::kPointMismatch, "vectors live at different points of TM");
  }
}

}  // namespace

TMPoint make_tm_point(const ChartedMetric& m, const Point& x, const Vec& u) {
  m.require_domain(x);
  if (u.size() != m.dim() || !u.allFinite()) {
    throw GeometryError(ErrorCode::kInvalidConfig, "fiber vector has wrong size or is not finite");
  }
  return {x, u};
}

TMVec zero_tm_vec(const TMPoint& at) {
  return {at, Vec::Zero(at.x.size()), Vec::Zero(at.x.size())};
}

TMVec horizontal_lift(const TangentVec& X, const TMPoint& at) {
  require_base(X, at);
  return {at, X.comps, Vec::Zero(X.comps.size())};
}

TMVec vertical_lift(const TangentVec& X, const TMPoint& at) {
  require_base(X, at);
  return {at, Vec::Zero(X.comps.size()), X.comps};
}

Projection project(const TMVec& v) { return {{v.at.x, v.h}, {v.at.x, v.v}}; }

Vec to_induced_coords(const ChartedMetric& m, const TMVec& v) {
  const Mat a = christoffel_at(m, v.at.x).with_second_slot(v.at.u);
  return stack(v.h, v.v - a * v.h);
}

TMVec from_induced_coords(const ChartedMetric& m, const TMPoint& at, const Vec& coords) {
  const int n = m.dim();
  const Mat a = christoffel_at(m, at.x).with_second_slot(at.u);
  const Vec h = coords.head(n);
  return {at, h, coords.tail(n) + a * h};
}

double sasaki_metric_at(const ChartedMetric& m, const TMVec& a, const TMVec& b) {
  require_same_point(a.at, b.at);
  const Mat g = metric_at(m, a.at.x);
  return bilinear(g, a.h, b.h) + bilinear(g, a.v, b.v);
}

Mat sasaki_metric_induced(const ChartedMetric& m, const Point& x, const Vec& u) {
  const int n = m.dim();
  const Mat g = metric_at(m, x);
  const Mat a = christoffel_at(m, x).with_second_slot(u);
  Mat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = g + a.transpose() * g * a;
  out.topRightCorner(n, n) = a.transpose() * g;
  out.bottomLeftCorner(n, n) = g * a;
  out.bottomRightCorner(n, n) = g;
  return out;
}

TMVec tm_nabla(const ChartedMetric& m, const Vec& X, const VectorField& Y, LiftKind kx,
               LiftKind ky, const TMPoint& at) {
  const BaseGeometry geo = base_geometry_at(m, at.x);
  const Vec& u = at.u;
  TMVec out = zero_tm_vec(at);
  const Vec y = Y(at.x);
  if (kx == LiftKind::kVertical) {
    if (ky == LiftKind::kHorizontal) out.h = 0.5 * geo.riemann.apply(u, X, y);
    return out;
  }
  const Vec nabla_xy = covariant_derivative(geo.gamma, Y, at.x, X);
  if (ky == LiftKind::kVertical) {
    out.v = nabla_xy;
    out.h = 0.5 * geo.riemann.apply(u, y, X);
  } else {
    out.h = nabla_xy;
    out.v = -0.5 * geo.riemann.apply(X, y, u);
  }
  return out;
}

TMVec lift_bracket(const ChartedMetric& m, const VectorField& X, const VectorField& Y,
                   LiftKind kx, LiftKind ky, const TMPoint& at) {
  TMVec out = zero_tm_vec(at);
  if (kx == LiftKind::kVertical && ky == LiftKind::kVertical) return out;
  const BaseGeometry geo = base_geometry_at(m, at.x);
  const Vec x = X(at.x);
  const Vec y = Y(at.x);
  if (kx == LiftKind::kHorizontal && ky == LiftKind::kHorizontal) {
    out.h = directional_derivative(Y, at.x, x) - directional_derivative(X, at.x, y);
    out.v = -geo.riemann.apply(x, y, at.u);
  } else if (kx == LiftKind::kHorizontal) {
    out.v = covariant_derivative(geo.gamma, Y, at.x, x);
  } else {
    out.v = -covariant_derivative(geo.gamma, X, at.x, y);
  }
  return out;
}

TMVec almost_complex_J(const TMVec& v) { return {v.at, -v.v, v.h}; }

Vec lift_field_induced(const ChartedMetric& m, const VectorField& X, LiftKind kind, const Vec& P) {
  const int n = m.dim();
  const Vec x = P.head(n);
  const Vec u = P.tail(n);
  const Vec xv = X(x);
  if (kind == LiftKind::kVertical) return stack(Vec::Zero(n), xv);
  return stack(xv, -christoffel_at(m, x).contract(xv, u));
}

}  // namespace sasaki
