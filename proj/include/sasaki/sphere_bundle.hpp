#pragma once

// The tangent (pseudo-)sphere bundle T_eps M = {(x,u) : g_x(u,u) = eps} as a
// hypersurface of (TM, Tg) with unit normal N = u^v. Tangent vectors are
// X^h + Y^t with the tangential part stored g-orthogonal to u, so that each
// tangent vector has exactly one representative.

#include <cstdint>
#include <vector>

#include "sasaki/tangent_bundle.hpp"

namespace sasaki {

struct SBPoint {
  Point x;
  Vec u;
  int eps = 1;

  TMPoint tm() const { return {x, u}; }
};

struct SBVec {
  SBPoint at;
  Vec h;
  Vec t;

  SBVec operator+(const SBVec& o) const { return {at, h + o.h, t + o.t}; }
  SBVec operator-(const SBVec& o) const { return {at, h - o.h, t - o.t}; }
  SBVec operator*(double s) const { return {at, s * h, s * t}; }
  SBVec operator-() const { return {at, -h, -t}; }
};

enum class SBKind { kHorizontal, kTangential };

// Pseudo-orthonormal frame of T_(x,u) T_eps M: tangential lifts of e_1..e_{n-1},
// horizontal lifts of e_1..e_{n-1}, then u^h; {e_1..e_{n-1}, u} is g-orthonormal.
struct SBFrame {
  SBPoint at;
  std::vector<Vec> base;      // e_1..e_{n-1}
  std::vector<int> base_signs;
  std::vector<SBVec> vectors;  // size 2n-1
  std::vector<int> signs;      // gbar(f_k, f_k)
};

inline constexpr double kOnShellTolerance = 1e-10;

// Validates g(u,u) = eps and eps = -1 only when the metric is indefinite.
SBPoint make_sb_point(const ChartedMetric& m, const Point& x, const Vec& u, int eps);

// SBVec with its tangential part projected orthogonal to u.
SBVec make_sb_vec(const ChartedMetric& m, const SBPoint& p, const Vec& h, const Vec& t);
SBVec zero_sb_vec(const SBPoint& p);

TMVec normal_at(const SBPoint& p);
SBVec tangential_lift(const ChartedMetric& m, const SBPoint& p, const Vec& X);
SBVec sb_horizontal_lift(const SBPoint& p, const Vec& X);
// Y - eps g(Y,u) u
Vec orthogonal_to_fiber(const Mat& g, const SBPoint& p, const Vec& Y);

TMVec embed(const SBVec& a);
// Tangential component W - eps Tg(W,N) N of a TM vector at p.
SBVec tangent_part(const ChartedMetric& m, const SBPoint& p, const TMVec& w);

double induced_metric_at(const ChartedMetric& m, const SBVec& a, const SBVec& b);

SBFrame frame_at(const ChartedMetric& m, const SBPoint& p, std::uint64_t seed = 0);
// Coefficients a_k with v = sum_k a_k f_k.
Vec frame_coordinates(const ChartedMetric& m, const SBFrame& frame, const SBVec& v);
SBVec frame_combination(const SBFrame& frame, const Vec& coeffs);
Mat induced_gram(const ChartedMetric& m, const SBFrame& frame);

// Bracket of lift fields restricted to T_eps M.
SBVec sb_bracket(const ChartedMetric& m, const VectorField& X, const VectorField& Y, SBKind kx,
                 SBKind ky, const SBPoint& p);

// Levi-Civita connection of the induced metric on lifts; X is used at p.x only.
SBVec sb_nabla(const ChartedMetric& m, const Vec& X, const VectorField& Y, SBKind kx, SBKind ky,
               const SBPoint& p);
// Same quantity through the ambient connection of TM and the normal projection,
// treating Y^t as the TM field Y^v - eps g(Y,u) N.
SBVec sb_nabla_via_projection(const ChartedMetric& m, const Vec& X, const VectorField& Y,
                              SBKind kx, SBKind ky, const SBPoint& p);

// Derivatives along A = X^h or X^t of the fiber coordinates u^i and of the
// function g(Y, u), with Y a base field. Used when a lift field carries
// u-dependent coefficients.
Vec fiber_coordinate_derivative(const ChartedMetric& m, const Vec& X, SBKind kx, const SBPoint& p);
double pairing_derivative(const ChartedMetric& m, const Vec& X, SBKind kx, const VectorField& Y,
                          const SBPoint& p);

// Curvature of the induced metric, R(a,b)c, by trilinear expansion into lifts.
SBVec sb_curvature(const ChartedMetric& m, const SBPoint& p, const SBVec& a, const SBVec& b,
                   const SBVec& c);

// Index of Tg at (x,u) and of the induced metric on T_eps M at p.
int sasaki_index(const ChartedMetric& m, const Point& x, const Vec& u);
int induced_index(const ChartedMetric& m, const SBPoint& p);

}  // namespace sasaki
