#pragma once

// Base pseudo-Riemannian manifold (M, g) presented in a single coordinate chart,
// with its Levi-Civita connection and curvature evaluated from metric derivatives.
//
// Curvature convention: R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y], stored as
// R^i_jkl = i-th component of R(d_k, d_l) d_j.

#include <cstdint>
#include <functional>
#include <string>

#include "sasaki/errors.hpp"
#include "sasaki/linalg.hpp"

namespace sasaki {

inline constexpr double kFirstDerivativeStep = 1e-5;
inline constexpr double kSecondDerivativeStep = 1e-4;
inline constexpr double kPlaneDegeneracy = 1e-8;

using Point = Vec;

struct TangentVec {
  Point base;
  Vec comps;
};

class ChartedMetric {
 public:
  using MetricFn = std::function<Mat(const Vec&)>;
  // d1(k, i, j) = d_k g_ij
  using Deriv1Fn = std::function<Tensor3(const Vec&)>;
  // d2(k, l, i, j) = d_k d_l g_ij
  using Deriv2Fn = std::function<Tensor4(const Vec&)>;
  using DomainFn = std::function<bool(const Vec&)>;

  ChartedMetric(int dim, int index, MetricFn metric, Deriv1Fn d1 = {}, Deriv2Fn d2 = {},
                DomainFn domain = {}, std::string name = "chart");

  int dim() const { return dim_; }
  int index() const { return index_; }
  const std::string& name() const { return name_; }

  bool in_domain(const Vec& x) const;
  // Throws OutOfDomain when x is outside the chart.
  void require_domain(const Vec& x) const;

  Mat metric(const Vec& x) const;
  // Analytic when supplied, otherwise central differences (flagged by
  // uses_finite_differences()).
  Tensor3 d1(const Vec& x) const;
  Tensor4 d2(const Vec& x) const;
  bool uses_finite_differences() const { return !d1_ || !d2_; }

  // Constant-curvature charts have nabla R = 0; curvature code skips the
  // derivative of R for them.
  bool locally_symmetric() const { return locally_symmetric_; }
  void set_locally_symmetric(bool v) { locally_symmetric_ = v; }

 private:
  int dim_;
  int index_;
  MetricFn metric_;
  Deriv1Fn d1_;
  Deriv2Fn d2_;
  DomainFn domain_;
  std::string name_;
  bool locally_symmetric_ = false;
};

struct Christoffel {
  Tensor3 gamma;  // gamma(i, j, k) = Gamma^i_jk

  int dim() const { return gamma.dim(); }
  // Gamma^i_jk a^j b^k
  Vec contract(const Vec& a, const Vec& b) const;
  // A^i_a = Gamma^i_ab u^b, so that contract(X, u) = A X.
  Mat with_second_slot(const Vec& u) const;
};

struct RiemannTensor {
  Tensor4 r;  // r(i, j, k, l) = (R(d_k, d_l) d_j)^i

  int dim() const { return r.dim(); }
  // R(x, y) z
  Vec apply(const Vec& x, const Vec& y, const Vec& z) const;
  // Matrix of z -> R(x, y) z.
  Mat endomorphism(const Vec& x, const Vec& y) const;
  // R_ijkl = g_im R^m_jkl = g(R(d_k, d_l) d_j, d_i)
  Tensor4 lowered(const Mat& g) const;
};

struct Signature {
  int pos = 0;
  int neg = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SpaceFormSpec {
  int dim = 2;
  int index = 0;
  double curvature = 0.0;
};

// Metric, inverse, Christoffel symbols and curvature at one point; built once
// and shared by the bundle-level formulas.
struct BaseGeometry {
  Point x;
  Mat g;
  Mat g_inv;
  Christoffel gamma;
  RiemannTensor riemann;
};

Mat metric_at(const ChartedMetric& m, const Point& x);
Christoffel christoffel_at(const ChartedMetric& m, const Point& x);
RiemannTensor riemann_at(const ChartedMetric& m, const Point& x);
// (nabla_X R) with the same index layout as RiemannTensor. Central differences
// of riemann_at along X plus Christoffel corrections on all four slots.
RiemannTensor nabla_riemann_at(const ChartedMetric& m, const Point& x, const Vec& X);
double sectional_curvature(const ChartedMetric& m, const Point& x, const Vec& X, const Vec& Y);
Signature signature_at(const ChartedMetric& m, const Point& x);
Signature signature_of(const Mat& symmetric);

BaseGeometry base_geometry_at(const ChartedMetric& m, const Point& x);

// nabla_X Y for a vector field Y given by chart components; the directional
// derivative of Y uses central differences.
using VectorField = std::function<Vec(const Vec&)>;
Vec directional_derivative(const VectorField& field, const Point& x, const Vec& direction,
                           double step = kFirstDerivativeStep);
Vec covariant_derivative(const Christoffel& gamma, const VectorField& Y, const Point& x,
                         const Vec& X);

// Conformal model g_ij = e_i delta_ij / F^2, F = 1 + (c/4) sum_k e_k (x^k)^2,
// e_k = -1 for the first `index` coordinates. Domain F > 0.05.
ChartedMetric space_form_chart(const SpaceFormSpec& spec);

// Maximum |K - c| over random nondegenerate planes at random in-domain points.
double space_form_curvature_deviation(const ChartedMetric& m, double c, int num_points,
                                      int planes_per_point, std::uint64_t seed);

// Generic metric with nonzero curvature and nonzero nabla R: flat metric of the
// given index plus a small trigonometric perturbation, analytic derivatives.
ChartedMetric trig_perturbed_chart(int dim, int index, double amplitude, std::uint64_t seed);

// Sign vector (+-1) of the model flat metric: -1 for the first `index` entries.
Vec signature_signs(int dim, int index);

}  // namespace sasaki
