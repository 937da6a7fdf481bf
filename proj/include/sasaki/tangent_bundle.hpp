#pragma once

// Tangent bundle TM with its Sasaki pseudo-metric. Tangent vectors of TM are
// stored as (horizontal part, vertical part) pairs of base vectors; induced
// chart coordinates (x^i; u^i) exist for cross-checks against finite-difference
// oracles.

#include "sasaki/manifold.hpp"

namespace sasaki {

struct TMPoint {
  Point x;
  Vec u;
};

// X^h + Y^v at `at`, with hpart = X and vpart = Y.
struct TMVec {
  TMPoint at;
  Vec h;
  Vec v;

  TMVec operator+(const TMVec& o) const { return {at, h + o.h, v + o.v}; }
  TMVec operator-(const TMVec& o) const { return {at, h - o.h, v - o.v}; }
  TMVec operator*(double s) const { return {at, s * h, s * v}; }
};

enum class LiftKind { kHorizontal, kVertical };

struct Projection {
  TangentVec pi_star;  // pi_* v
  TangentVec K;        // connection map
};

TMPoint make_tm_point(const ChartedMetric& m, const Point& x, const Vec& u);
TMVec zero_tm_vec(const TMPoint& at);

TMVec horizontal_lift(const TangentVec& X, const TMPoint& at);
TMVec vertical_lift(const TangentVec& X, const TMPoint& at);
Projection project(const TMVec& v);

// Components with respect to (d/dxbar^i, d/du^i).
Vec to_induced_coords(const ChartedMetric& m, const TMVec& v);
TMVec from_induced_coords(const ChartedMetric& m, const TMPoint& at, const Vec& coords);

double sasaki_metric_at(const ChartedMetric& m, const TMVec& a, const TMVec& b);
// Gram matrix of Tg in induced coordinates at (x, u).
Mat sasaki_metric_induced(const ChartedMetric& m, const Point& x, const Vec& u);

// Levi-Civita connection of Tg on lifts: nabla~_{X^kx} Y^ky. X is used only at
// at.x, Y is differentiated along X.
TMVec tm_nabla(const ChartedMetric& m, const Vec& X, const VectorField& Y, LiftKind kx,
               LiftKind ky, const TMPoint& at);

// [X^kx, Y^ky] from the lift bracket identities.
TMVec lift_bracket(const ChartedMetric& m, const VectorField& X, const VectorField& Y,
                   LiftKind kx, LiftKind ky, const TMPoint& at);

// J X^h = X^v, J X^v = -X^h
TMVec almost_complex_J(const TMVec& v);

// The lift of a base field as a vector field on TM in induced coordinates,
// evaluated at P = (x; u).
Vec lift_field_induced(const ChartedMetric& m, const VectorField& X, LiftKind kind, const Vec& P);

inline Vec stack(const Vec& a, const Vec& b) {
  Vec out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace sasaki
