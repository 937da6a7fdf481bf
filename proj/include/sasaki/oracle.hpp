#pragma once

// Finite-difference ground truth. Nothing here reads Christoffel symbols or
// curvature from the analytic path: the only inputs are metric components (and,
// for the Sasaki metric, the chart's first metric derivatives) from which each
// oracle rebuilds what it needs with its own Koszul routine.

#include <functional>

#include "sasaki/sphere_bundle.hpp"

namespace sasaki::oracle {

using MatrixField = std::function<Mat(const Vec&)>;
using VecField = std::function<Vec(const Vec&)>;
using ChristoffelField = std::function<Tensor3(const Vec&)>;

// dg(k, i, j) = d_k g_ij by central differences.
Tensor3 fd_metric_derivative(const MatrixField& metric, const Vec& x, double step);
// Gamma^i_jk = 1/2 g^il (d_j g_lk + d_k g_lj - d_l g_jk)
Tensor3 koszul_christoffel(const Mat& g, const Tensor3& dg);
Tensor3 fd_christoffel(const MatrixField& metric, const Vec& x, double step = kFirstDerivativeStep);
// R^i_jkl = (R(d_k, d_l) d_j)^i from central differences of the symbols.
Tensor4 fd_riemann(const ChristoffelField& gamma, const Vec& x, double step = kSecondDerivativeStep);
// Lowered with g: R_ijkl = g_im R^m_jkl.
Tensor4 lower_first(const Tensor4& r, const Mat& g);
Vec apply_riemann(const Tensor4& r, const Vec& x, const Vec& y, const Vec& z);
Vec contract(const Tensor3& gamma, const Vec& a, const Vec& b);

// Base Christoffel symbols from raw g and d1 (no analytic-path code).
Tensor3 base_christoffel(const ChartedMetric& m, const Vec& x);

// Sasaki metric in induced coordinates P = (x; u):
// [[g + A^T g A, A^T g], [g A, g]] with A^i_a = Gamma^i_ab u^b.
MatrixField sasaki_metric_field(const ChartedMetric& m);
// Christoffel symbols of the Sasaki metric at P from g, dg and d^2 g by the
// chain rule, then Koszul.
Tensor3 sasaki_christoffel(const ChartedMetric& m, const Vec& P);
// (h; v - A h): induced coordinates of an SBVec or TMVec.
Vec to_induced(const ChartedMetric& m, const Vec& x, const Vec& u, const Vec& h, const Vec& v);
Vec to_induced(const ChartedMetric& m, const SBVec& a);
// Lift of a base field as a field on TM in induced coordinates.
VecField horizontal_lift_field(const ChartedMetric& m, const VectorField& X);
VecField vertical_lift_field(const VectorField& X);
// X^v - eps g(X,u) u^v, extended off T_eps M with the same eps.
VecField tangential_lift_field(const ChartedMetric& m, const VectorField& X, int eps);

// Ambient Levi-Civita data of Tg at P.
struct AmbientGeometry {
  Vec P;
  Mat G;
  Tensor3 gamma;
  Tensor4 riemann;
};
AmbientGeometry ambient_geometry(const ChartedMetric& m, const Vec& P, bool with_curvature = true);

// nabla~_A B for a field B on TM in induced coordinates.
Vec fd_covariant_derivative(const AmbientGeometry& amb, const Vec& A, const VecField& B,
                            double step = kFirstDerivativeStep);

// The constraint g(u,u) = eps solved for one fiber coordinate.
struct HypersurfaceChart {
  int dim = 0;           // n
  int solved_index = 0;  // fiber coordinate eliminated
  int eps = 1;
  Vec base_params;       // parameters of the point it was built at
  std::function<Vec(const Vec&)> param_fn;  // (2n-1) params -> 2n induced coords
  Mat jacobian;          // FD Jacobian at base_params, 2n x (2n-1)
  double smallest_singular_value = 0.0;
};

HypersurfaceChart hypersurface_chart(const ChartedMetric& m, const SBPoint& p,
                                     double step = kFirstDerivativeStep);
// Parameters of an induced-coordinate tangent vector in the chart (drop the solved entry).
Vec chart_components(const HypersurfaceChart& chart, const Vec& induced);
// Pullback J^T G J of the Sasaki metric.
Mat hypersurface_pullback(const ChartedMetric& m, const SBPoint& p, HypersurfaceChart* chart_out = nullptr);

// II(A, B) = -eps Tg(B, nabla~_A N), A and B tangent, induced coordinates.
double second_fundamental_form(const ChartedMetric& m, const SBPoint& p, const AmbientGeometry& amb,
                               const Vec& A, const Vec& B);

// R-bar(a, b) c through the Gauss equation, in induced coordinates.
Vec gauss_curvature(const ChartedMetric& m, const SBPoint& p, const AmbientGeometry& amb,
                    const Vec& A, const Vec& B, const Vec& C);
Vec gauss_curvature_oracle(const ChartedMetric& m, const SBPoint& p, const SBVec& a, const SBVec& b,
                           const SBVec& c);

// [A, B]^i = A^j d_j B^i - B^j d_j A^i with directional central differences.
Vec fd_lie_bracket(const VecField& A, const VecField& B, const Vec& P, double step = kFirstDerivativeStep);
// (L_V G)_IJ = V^K d_K G_IJ + G_KJ d_I V^K + G_IK d_J V^K
Mat fd_lie_derivative_metric(const VecField& V, const MatrixField& G, const Vec& P,
                             double step = kFirstDerivativeStep);
// (d omega)_ij = d_i omega_j - d_j omega_i
Mat fd_exterior_derivative(const VecField& omega, const Vec& P, double step = kFirstDerivativeStep);
// phi^2 [A,B] + [phi A, phi B] - phi [phi A, B] - phi [A, phi B]
Vec fd_nijenhuis(const MatrixField& phi, const VecField& A, const VecField& B, const Vec& P,
                 double step = kFirstDerivativeStep);

}  // namespace sasaki::oracle
