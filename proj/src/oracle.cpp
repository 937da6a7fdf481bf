#include "sasaki/oracle.hpp"

#include <cmath>

namespace sasaki::oracle {

Tensor3 fd_metric_derivative(const MatrixField& metric, const Vec& x, double step) {
  const int n = static_cast<int>(x.size());
  Tensor3 dg(n);
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp[k] += step;
    xm[k] -= step;
    const Mat d = (metric(xp) - metric(xm)) / (2.0 * step);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg(k, i, j) = d(i, j);
  }
  return dg;
}

Tensor3 koszul_christoffel(const Mat& g, const Tensor3& dg) {
  const int n = static_cast<int>(g.rows());
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::kDegenerateMetric, "oracle metric is singular");
  const Mat ginv = lu.inverse();
  Tensor3 lowered(n);  // [l, j, k]
  for (int l = 0; l < n; ++l)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) lowered(l, j, k) = 0.5 * (dg(j, l, k) + dg(k, l, j) - dg(l, j, k));
  Tensor3 gamma(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(i, l) * lowered(l, j, k);
        gamma(i, j, k) = s;
        gamma(i, k, j) = s;
      }
  return gamma;
}

Tensor3 fd_christoffel(const MatrixField& metric, const Vec& x, double step) {
  return koszul_christoffel(metric(x), fd_metric_derivative(metric, x, step));
}

Tensor4 fd_riemann(const ChristoffelField& gamma, const Vec& x, double step) {
  const int n = static_cast<int>(x.size());
  const Tensor3 g0 = gamma(x);
  std::vector<Tensor3> dgamma;  // dgamma[k](i,j,l) = d_k Gamma^i_jl
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp[k] += step;
    xm[k] -= step;
    Tensor3 d = gamma(xp) - gamma(xm);
    d *= 1.0 / (2.0 * step);
    dgamma.push_back(std::move(d));
  }
  Tensor4 r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = dgamma[k](i, l, j) - dgamma[l](i, k, j);
          for (int q = 0; q < n; ++q) s += g0(i, k, q) * g0(q, l, j) - g0(i, l, q) * g0(q, k, j);
          r(i, j, k, l) = s;
        }
  return r;
}

Tensor4 lower_first(const Tensor4& r, const Mat& g) {
  const int n = r.dim();
  Tensor4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int q = 0; q < n; ++q) s += g(i, q) * r(q, j, k, l);
          out(i, j, k, l) = s;
        }
  return out;
}

Vec apply_riemann(const Tensor4& r, const Vec& x, const Vec& y, const Vec& z) {
  const int n = r.dim();
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (z[j] == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out[i] += r(i, j, k, l) * z[j] * x[k] * y[l];
    }
  return out;
}

Vec contract(const Tensor3& gamma, const Vec& a, const Vec& b) {
  const int n = gamma.dim();
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out[i] += gamma(i, j, k) * a[j] * b[k];
  return out;
}

Tensor3 base_christoffel(const ChartedMetric& m, const Vec& x) {
  return koszul_christoffel(m.metric(x), m.d1(x));
}

namespace {

// A^i_a = Gamma^i_ab u^b
Mat connection_matrix(const Tensor3& gamma, const Vec& u) {
  const int n = gamma.dim();
  Mat a = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int b = 0; b < n; ++b) a(i, j) += gamma(i, j, b) * u[b];
  return a;
}

}  // namespace

MatrixField sasaki_metric_field(const ChartedMetric& m) {
  return [&m](const Vec& P) {
    const int n = m.dim();
    const Vec x = P.head(n);
    const Vec u = P.tail(n);
    const Mat g = m.metric(x);
    const Mat a = connection_matrix(base_christoffel(m, x), u);
    Mat G(2 * n, 2 * n);
    G.topLeftCorner(n, n) = g + a.transpose() * g * a;
    G.topRightCorner(n, n) = a.transpose() * g;
    G.bottomLeftCorner(n, n) = g * a;
    G.bottomRightCorner(n, n) = g;
    return G;
  };
}

Tensor3 sasaki_christoffel(const ChartedMetric& m, const Vec& P) {
  const int n = m.dim();
  const Vec x = P.head(n);
  const Vec u = P.tail(n);
  const Mat g = m.metric(x);
  const Tensor3 d1 = m.d1(x);
  const Tensor4 d2 = m.d2(x);
  const Mat ginv = g.inverse();
  const Tensor3 gamma = koszul_christoffel(g, d1);

  std::vector<Mat> dg(n, Mat(n, n));  // dg[k] = d_k g
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg[k](i, j) = d1(k, i, j);
  // dA[k](i, a) = d_k Gamma^i_ab u^b ; gb[b](i, a) = Gamma^i_ab
  std::vector<Mat> dA(n, Mat::Zero(n, n));
  std::vector<Mat> gb(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k) {
    const Mat dginv = -ginv * dg[k] * ginv;
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double s = 0.0;
          for (int q = 0; q < n; ++q) {
            const double low = 0.5 * (d1(a, q, b) + d1(b, q, a) - d1(q, a, b));
            const double dlow = 0.5 * (d2(k, a, q, b) + d2(k, b, q, a) - d2(k, q, a, b));
            s += dginv(i, q) * low + ginv(i, q) * dlow;
          }
          dA[k](i, a) += s * u[b];
        }
  }
  for (int b = 0; b < n; ++b)
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) gb[b](i, a) = gamma(i, a, b);
  const Mat A = connection_matrix(gamma, u);

  Tensor3 dG(2 * n);
  auto store = [&](int K, const Mat& xx, const Mat& xu, const Mat& uu) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        dG(K, i, j) = xx(i, j);
        dG(K, i, n + j) = xu(i, j);
        dG(K, n + j, i) = xu(i, j);
        dG(K, n + i, n + j) = uu(i, j);
      }
  };
  for (int k = 0; k < n; ++k) {
    const Mat xx = dg[k] + dA[k].transpose() * g * A + A.transpose() * dg[k] * A + A.transpose() * g * dA[k];
    const Mat xu = dA[k].transpose() * g + A.transpose() * dg[k];
    store(k, xx, xu, dg[k]);
  }
  for (int b = 0; b < n; ++b) {
    const Mat xx = gb[b].transpose() * g * A + A.transpose() * g * gb[b];
    const Mat xu = gb[b].transpose() * g;
    store(n + b, xx, xu, Mat::Zero(n, n));
  }
  return koszul_christoffel(sasaki_metric_field(m)(P), dG);
}

Vec to_induced(const ChartedMetric& m, const Vec& x, const Vec& u, const Vec& h, const Vec& v) {
  const Mat a = connection_matrix(base_christoffel(m, x), u);
  return stack(h, v - a * h);
}

Vec to_induced(const ChartedMetric& m, const SBVec& a) { return to_induced(m, a.at.x, a.at.u, a.h, a.t); }

VecField horizontal_lift_field(const ChartedMetric& m, const VectorField& X) {
  return [&m, X](const Vec& P) {
    const int n = m.dim();
    const Vec x = P.head(n);
    const Vec xv = X(x);
    return stack(xv, -contract(base_christoffel(m, x), xv, P.tail(n)));
  };
}

VecField vertical_lift_field(const VectorField& X) {
  return [X](const Vec& P) {
    const int n = static_cast<int>(P.size()) / 2;
    return stack(Vec::Zero(n), X(P.head(n)));
  };
}

VecField tangential_lift_field(const ChartedMetric& m, const VectorField& X, int eps) {
  return [&m, X, eps](const Vec& P) {
    const int n = m.dim();
    const Vec x = P.head(n);
    const Vec u = P.tail(n);
    const Vec xv = X(x);
    return stack(Vec::Zero(n), xv - eps * bilinear(m.metric(x), xv, u) * u);
  };
}

AmbientGeometry ambient_geometry(const ChartedMetric& m, const Vec& P, bool with_curvature) {
  AmbientGeometry amb;
  amb.P = P;
  amb.G = sasaki_metric_field(m)(P);
  amb.gamma = sasaki_christoffel(m, P);
  if (with_curvature) {
    amb.riemann = fd_riemann([&m](const Vec& Q) { return sasaki_christoffel(m, Q); }, P, kFirstDerivativeStep);
  }
  return amb;
}

Vec fd_covariant_derivative(const AmbientGeometry& amb, const Vec& A, const VecField& B, double step) {
  const Vec dB = (B(amb.P + step * A) - B(amb.P - step * A)) / (2.0 * step);
  return dB + contract(amb.gamma, A, B(amb.P));
}

HypersurfaceChart hypersurface_chart(const ChartedMetric& m, const SBPoint& p, double step) {
  const int n = m.dim();
  const Mat g = m.metric(p.x);
  const Vec gu = g * p.u;
  int j = 0;
  gu.cwiseAbs().maxCoeff(&j);
  if (std::abs(gu[j]) < 1e-6) {
    throw GeometryError(ErrorCode::kNoSolvableCoordinate, "constraint gradient vanishes at this point");
  }

  HypersurfaceChart chart;
  chart.dim = n;
  chart.solved_index = j;
  chart.eps = p.eps;
  const double reference = p.u[j];
  const int eps = p.eps;
  chart.param_fn = [&m, n, j, eps, reference](const Vec& q) {
    const Vec x = q.head(n);
    Vec u(n);
    for (int k = 0, s = 0; k < n; ++k) u[k] = (k == j) ? 0.0 : q[n + s++];
    const Mat gx = m.metric(x);
    const double a = gx(j, j);
    const double b = 2.0 * (gx.row(j).dot(u));
    const double c0 = bilinear(gx, u, u) - eps;
    double root;
    if (std::abs(a) < 1e-14) {
      root = -c0 / b;
    } else {
      const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * a * c0));
      const double r1 = (-b + disc) / (2.0 * a);
      const double r2 = (-b - disc) / (2.0 * a);
      root = std::abs(r1 - reference) < std::abs(r2 - reference) ? r1 : r2;
    }
    u[j] = root;
    return stack(x, u);
  };

  Vec q(2 * n - 1);
  q.head(n) = p.x;
  for (int k = 0, s = 0; k < n; ++k)
    if (k != j) q[n + s++] = p.u[k];
  chart.base_params = q;
  chart.jacobian.resize(2 * n, 2 * n - 1);
  for (int c = 0; c < 2 * n - 1; ++c) {
    Vec qp = q, qm = q;
    qp[c] += step;
    qm[c] -= step;
    chart.jacobian.col(c) = (chart.param_fn(qp) - chart.param_fn(qm)) / (2.0 * step);
  }
  Eigen::JacobiSVD<Mat> svd(chart.jacobian);
  chart.smallest_singular_value = svd.singularValues().minCoeff();
  return chart;
}

Vec chart_components(const HypersurfaceChart& chart, const Vec& induced) {
  const int n = chart.dim;
  Vec q(2 * n - 1);
  q.head(n) = induced.head(n);
  for (int k = 0, s = 0; k < n; ++k)
    if (k != chart.solved_index) q[n + s++] = induced[n + k];
  return q;
}

Mat hypersurface_pullback(const ChartedMetric& m, const SBPoint& p, HypersurfaceChart* chart_out) {
  HypersurfaceChart chart = hypersurface_chart(m, p);
  const Mat G = sasaki_metric_field(m)(chart.param_fn(chart.base_params));
  Mat pulled = chart.jacobian.transpose() * G * chart.jacobian;
  if (chart_out) *chart_out = std::move(chart);
  return pulled;
}

namespace {

Vec normal_induced(const SBPoint& p) { return stack(Vec::Zero(p.x.size()), p.u); }

// nabla~_A N for the field N = u^v = (0; u).
Vec nabla_normal(const SBPoint& p, const AmbientGeometry& amb, const Vec& A) {
  const int n = static_cast<int>(p.x.size());
  return stack(Vec::Zero(n), A.tail(n)) + contract(amb.gamma, A, normal_induced(p));
}

}  // namespace

double second_fundamental_form(const ChartedMetric&, const SBPoint& p, const AmbientGeometry& amb,
                               const Vec& A, const Vec& B) {
  return -p.eps * bilinear(amb.G, B, nabla_normal(p, amb, A));
}

Vec gauss_curvature(const ChartedMetric&, const SBPoint& p, const AmbientGeometry& amb, const Vec& A,
                    const Vec& B, const Vec& C) {
  const double e = p.eps;
  const Vec N = normal_induced(p);
  const Vec nA = nabla_normal(p, amb, A);
  const Vec nB = nabla_normal(p, amb, B);
  auto s = [&](const Vec& nX, const Vec& Y) { return -bilinear(amb.G, Y, nX); };
  Vec w = apply_riemann(amb.riemann, A, B, C);
  w -= e * bilinear(amb.G, w, N) * N;
  return w - e * (s(nB, C) * nA - s(nA, C) * nB);
}

Vec gauss_curvature_oracle(const ChartedMetric& m, const SBPoint& p, const SBVec& a, const SBVec& b,
                           const SBVec& c) {
  const AmbientGeometry amb = ambient_geometry(m, stack(p.x, p.u));
  return gauss_curvature(m, p, amb, to_induced(m, a), to_induced(m, b), to_induced(m, c));
}

Vec fd_lie_bracket(const VecField& A, const VecField& B, const Vec& P, double step) {
  const Vec a = A(P);
  const Vec b = B(P);
  const Vec dB = (B(P + step * a) - B(P - step * a)) / (2.0 * step);
  const Vec dA = (A(P + step * b) - A(P - step * b)) / (2.0 * step);
  return dB - dA;
}

Mat fd_lie_derivative_metric(const VecField& V, const MatrixField& G, const Vec& P, double step) {
  const int d = static_cast<int>(P.size());
  const Vec v = V(P);
  const Mat g = G(P);
  Mat jv(d, d);  // jv(K, I) = d_I V^K
  Mat out = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    Vec pp = P, pm = P;
    pp[k] += step;
    pm[k] -= step;
    jv.col(k) = (V(pp) - V(pm)) / (2.0 * step);
    out += v[k] * (G(pp) - G(pm)) / (2.0 * step);
  }
  return out + jv.transpose() * g + g * jv;
}

Mat fd_exterior_derivative(const VecField& omega, const Vec& P, double step) {
  const int d = static_cast<int>(P.size());
  Mat D(d, d);  // D(i, j) = d_i omega_j
  for (int i = 0; i < d; ++i) {
    Vec pp = P, pm = P;
    pp[i] += step;
    pm[i] -= step;
    D.row(i) = ((omega(pp) - omega(pm)) / (2.0 * step)).transpose();
  }
  return D - D.transpose();
}

Vec fd_nijenhuis(const MatrixField& phi, const VecField& A, const VecField& B, const Vec& P, double step) {
  const VecField phiA = [&](const Vec& Q) -> Vec { return phi(Q) * A(Q); };
  const VecField phiB = [&](const Vec& Q) -> Vec { return phi(Q) * B(Q); };
  const Mat f = phi(P);
  return f * f * fd_lie_bracket(A, B, P, step) + fd_lie_bracket(phiA, phiB, P, step) -
         f * fd_lie_bracket(phiA, B, P, step) - f * fd_lie_bracket(A, phiB, P, step);
}

}  // namespace sasaki::oracle
