#include "sasaki/manifold.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <utility>

namespace sasaki {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kDegenerateMetric: return "DegenerateMetric";
    case ErrorCode::kDegeneratePlane: return "DegeneratePlane";
    case ErrorCode::kBasePointMismatch: return "BasePointMismatch";
    case ErrorCode::kPointMismatch: return "PointMismatch";
    case ErrorCode::kFrameConstructionFailure: return "FrameConstructionFailure";
    case ErrorCode::kNoSolvableCoordinate: return "NoSolvableCoordinate";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIOFailure: return "IOFailure";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Tensor helpers

double Tensor3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor3& Tensor3::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Tensor3 operator-(Tensor3 a, const Tensor3& b) {
  for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
  return a;
}

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Tensor4& Tensor4::operator+=(const Tensor4& o) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor4& Tensor4::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Tensor4 operator-(Tensor4 a, const Tensor4& b) {
  for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
  return a;
}

// ---------------------------------------------------------------------------
// ChartedMetric

ChartedMetric::ChartedMetric(int dim, int index, MetricFn metric, Deriv1Fn d1, Deriv2Fn d2,
                             DomainFn domain, std::string name)
    : dim_(dim),
      index_(index),
      metric_(std::move(metric)),
      d1_(std::move(d1)),
      d2_(std::move(d2)),
      domain_(std::move(domain)),
      name_(std::move(name)) {
  if (dim_ < 1 || index_ < 0 || index_ > dim_) {
    throw GeometryError(ErrorCode::kInvalidConfig, "chart needs dim >= 1 and 0 <= index <= dim");
  }
}

bool ChartedMetric::in_domain(const Vec& x) const {
  if (x.size() != dim_ || !x.allFinite()) return false;
  return !domain_ || domain_(x);
}

void ChartedMetric::require_domain(const Vec& x) const {
  if (!in_domain(x)) throw GeometryError(ErrorCode::kOutOfDomain, "point outside chart " + name_);
}

Mat ChartedMetric::metric(const Vec& x) const { return metric_(x); }

Tensor3 ChartedMetric::d1(const Vec& x) const {
  if (d1_) return d1_(x);
  const double h = kFirstDerivativeStep;
  Tensor3 out(dim_);
  for (int k = 0; k < dim_; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const Mat diff = (metric_(xp) - metric_(xm)) / (2 * h);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) out(k, i, j) = diff(i, j);
  }
  return out;
}

Tensor4 ChartedMetric::d2(const Vec& x) const {
  if (d2_) return d2_(x);
  const double h = kSecondDerivativeStep;
  Tensor4 out(dim_);
  const Mat g0 = metric_(x);
  for (int k = 0; k < dim_; ++k) {
    for (int l = k; l < dim_; ++l) {
      Mat second;
      if (k == l) {
        Vec xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        second = (metric_(xp) - 2 * g0 + metric_(xm)) / (h * h);
      } else {
        Vec pp = x, pm = x, mp = x, mm = x;
        pp[k] += h; pp[l] += h;
        pm[k] += h; pm[l] -= h;
        mp[k] -= h; mp[l] += h;
        mm[k] -= h; mm[l] -= h;
        second = (metric_(pp) - metric_(pm) - metric_(mp) + metric_(mm)) / (4 * h * h);
      }
      for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
          out(k, l, i, j) = second(i, j);
          out(l, k, i, j) = second(i, j);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Christoffel / Riemann

Vec Christoffel::contract(const Vec& a, const Vec& b) const {
  const int n = dim();
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out[i] += gamma(i, j, k) * a[j] * b[k];
  return out;
}

Mat Christoffel::with_second_slot(const Vec& u) const {
  const int n = dim();
  Mat a = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) a(i, j) += gamma(i, j, k) * u[k];
  return a;
}

Vec RiemannTensor::apply(const Vec& x, const Vec& y, const Vec& z) const {
  const int n = dim();
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (z[j] == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out[i] += r(i, j, k, l) * z[j] * x[k] * y[l];
    }
  return out;
}

Mat RiemannTensor::endomorphism(const Vec& x, const Vec& y) const {
  const int n = dim();
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i, j) += r(i, j, k, l) * x[k] * y[l];
  return out;
}

Tensor4 RiemannTensor::lowered(const Mat& g) const {
  const int n = dim();
  Tensor4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += g(i, m) * r(m, j, k, l);
          out(i, j, k, l) = s;
        }
  return out;
}

namespace {

Mat checked_inverse(const Mat& g) {
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::kDegenerateMetric, "metric is singular");
  return lu.inverse();
}

// Gamma^i_jk from g^-1 and d_k g_ij.
Christoffel christoffel_from(const Mat& g_inv, const Tensor3& dg) {
  const int n = static_cast<int>(g_inv.rows());
  Christoffel out{Tensor3(n)};
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      Vec lowered(n);
      for (int l = 0; l < n; ++l) lowered[l] = 0.5 * (dg(j, l, k) + dg(k, l, j) - dg(l, j, k));
      const Vec raised = g_inv * lowered;
      for (int i = 0; i < n; ++i) {
        out.gamma(i, j, k) = raised[i];
        out.gamma(i, k, j) = raised[i];
      }
    }
  }
  return out;
}

// dgamma(m)(i, j, k) = d_m Gamma^i_jk
std::vector<Tensor3> christoffel_derivative(const Mat& g_inv, const Tensor3& dg, const Tensor4& ddg) {
  const int n = static_cast<int>(g_inv.rows());
  std::vector<Tensor3> out(n, Tensor3(n));
  for (int m = 0; m < n; ++m) {
    Mat dginv_m(n, n);
    Mat dg_m(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dg_m(a, b) = dg(m, a, b);
    dginv_m = -g_inv * dg_m * g_inv;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Vec lowered(n), dlowered(n);
        for (int l = 0; l < n; ++l) {
          lowered[l] = 0.5 * (dg(j, l, k) + dg(k, l, j) - dg(l, j, k));
          dlowered[l] = 0.5 * (ddg(m, j, l, k) + ddg(m, k, l, j) - ddg(m, l, j, k));
        }
        const Vec d = dginv_m * lowered + g_inv * dlowered;
        for (int i = 0; i < n; ++i) out[m](i, j, k) = d[i];
      }
    }
  }
  return out;
}

RiemannTensor riemann_from(const Christoffel& c, const std::vector<Tensor3>& dgamma) {
  const int n = c.dim();
  RiemannTensor out{Tensor4(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = dgamma[k](i, l, j) - dgamma[l](i, k, j);
          for (int m = 0; m < n; ++m)
            v += c.gamma(i, k, m) * c.gamma(m, l, j) - c.gamma(i, l, m) * c.gamma(m, k, j);
          out.r(i, j, k, l) = v;
        }
  return out;
}

}  // namespace

Mat metric_at(const ChartedMetric& m, const Point& x) {
  m.require_domain(x);
  return m.metric(x);
}

Christoffel christoffel_at(const ChartedMetric& m, const Point& x) {
  m.require_domain(x);
  return christoffel_from(checked_inverse(m.metric(x)), m.d1(x));
}

RiemannTensor riemann_at(const ChartedMetric& m, const Point& x) {
  m.require_domain(x);
  const Mat g_inv = checked_inverse(m.metric(x));
  const Tensor3 dg = m.d1(x);
  return riemann_from(christoffel_from(g_inv, dg), christoffel_derivative(g_inv, dg, m.d2(x)));
}

BaseGeometry base_geometry_at(const ChartedMetric& m, const Point& x) {
  m.require_domain(x);
  BaseGeometry geo;
  geo.x = x;
  geo.g = m.metric(x);
  geo.g_inv = checked_inverse(geo.g);
  const Tensor3 dg = m.d1(x);
  geo.gamma = christoffel_from(geo.g_inv, dg);
  geo.riemann = riemann_from(geo.gamma, christoffel_derivative(geo.g_inv, dg, m.d2(x)));
  return geo;
}

RiemannTensor nabla_riemann_at(const ChartedMetric& m, const Point& x, const Vec& X) {
  m.require_domain(x);
  const int n = m.dim();
  RiemannTensor out{Tensor4(n)};
  if (m.locally_symmetric() || X.isZero(0.0)) return out;

  const double h = kFirstDerivativeStep;
  const RiemannTensor plus = riemann_at(m, x + h * X);
  const RiemannTensor minus = riemann_at(m, x - h * X);
  const Christoffel c = christoffel_at(m, x);
  const RiemannTensor r = riemann_at(m, x);
  const Mat gx = c.with_second_slot(X);  // gx(i, p) = Gamma^i_pm X^m = Gamma^i_mp X^m

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = (plus.r(i, j, k, l) - minus.r(i, j, k, l)) / (2 * h);
          for (int p = 0; p < n; ++p) {
            v += gx(i, p) * r.r(p, j, k, l);
            v -= gx(p, j) * r.r(i, p, k, l);
            v -= gx(p, k) * r.r(i, j, p, l);
            v -= gx(p, l) * r.r(i, j, k, p);
          }
          out.r(i, j, k, l) = v;
        }
  return out;
}

double sectional_curvature(const ChartedMetric& m, const Point& x, const Vec& X, const Vec& Y) {
  const Mat g = metric_at(m, x);
  const double den = bilinear(g, X, X) * bilinear(g, Y, Y) - std::pow(bilinear(g, X, Y), 2);
  if (std::abs(den) <= kPlaneDegeneracy) {
    throw GeometryError(ErrorCode::kDegeneratePlane, "plane is degenerate");
  }
  const RiemannTensor r = riemann_at(m, x);
  return bilinear(g, r.apply(X, Y, Y), X) / den;
}

Signature signature_of(const Mat& symmetric) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (symmetric + symmetric.transpose()),
                                        Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  Signature s;
  for (double v : ev) {
    if (std::abs(v) <= 1e-12 * scale) throw GeometryError(ErrorCode::kDegenerateMetric, "zero eigenvalue");
    (v > 0 ? s.pos : s.neg)++;
  }
  return s;
}

Signature signature_at(const ChartedMetric& m, const Point& x) { return signature_of(metric_at(m, x)); }

Vec directional_derivative(const VectorField& field, const Point& x, const Vec& direction,
                           double step) {
  return (field(x + step * direction) - field(x - step * direction)) / (2 * step);
}

Vec covariant_derivative(const Christoffel& gamma, const VectorField& Y, const Point& x,
                         const Vec& X) {
  return directional_derivative(Y, x, X) + gamma.contract(X, Y(x));
}

Vec signature_signs(int dim, int index) {
  Vec s = Vec::Ones(dim);
  for (int k = 0; k < index; ++k) s[k] = -1.0;
  return s;
}

// ---------------------------------------------------------------------------
// Model charts

ChartedMetric space_form_chart(const SpaceFormSpec& spec) {
  const int n = spec.dim;
  const double c = spec.curvature;
  if (n < 1 || spec.index < 0 || spec.index > n) {
    throw GeometryError(ErrorCode::kInvalidConfig, "space form needs dim >= 1, 0 <= index <= dim");
  }
  const Vec s = signature_signs(n, spec.index);

  auto conformal = [s, c](const Vec& x) { return 1.0 + 0.25 * c * x.cwiseProduct(x).dot(s); };
  auto metric = [s, conformal](const Vec& x) -> Mat {
    const double f = conformal(x);
    return Mat(s.asDiagonal()) / (f * f);
  };
  auto d1 = [n, s, c, conformal](const Vec& x) {
    const double f = conformal(x);
    Tensor3 out(n);
    for (int k = 0; k < n; ++k) {
      const double fk = 0.5 * c * s[k] * x[k];
      const double dphi = -2.0 * fk / (f * f * f);
      for (int i = 0; i < n; ++i) out(k, i, i) = s[i] * dphi;
    }
    return out;
  };
  auto d2 = [n, s, c, conformal](const Vec& x) {
    const double f = conformal(x);
    Tensor4 out(n);
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const double fk = 0.5 * c * s[k] * x[k];
        const double fl = 0.5 * c * s[l] * x[l];
        const double fkl = k == l ? 0.5 * c * s[k] : 0.0;
        const double ddphi = 6.0 * fk * fl / std::pow(f, 4) - 2.0 * fkl / std::pow(f, 3);
        for (int i = 0; i < n; ++i) out(k, l, i, i) = s[i] * ddphi;
      }
    }
    return out;
  };
  auto domain = [conformal](const Vec& x) { return conformal(x) > 0.05; };

  ChartedMetric m(n, spec.index, metric, d1, d2, domain,
                  "space_form(n=" + std::to_string(n) + ",nu=" + std::to_string(spec.index) +
                      ",c=" + std::to_string(c) + ")");
  m.set_locally_symmetric(true);
  return m;
}

double space_form_curvature_deviation(const ChartedMetric& m, double c, int num_points,
                                      int planes_per_point, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = m.dim();
  const double radius = 0.4 / std::sqrt(std::max(1.0, std::abs(c)));
  double worst = 0.0;
  for (int p = 0; p < num_points; ++p) {
    Vec x(n);
    do {
      for (int i = 0; i < n; ++i) x[i] = radius * box(rng);
    } while (!m.in_domain(x));
    const Mat g = m.metric(x);
    const RiemannTensor r = riemann_at(m, x);
    int accepted = 0;
    while (accepted < planes_per_point) {
      Vec X(n), Y(n);
      for (int i = 0; i < n; ++i) {
        X[i] = normal(rng);
        Y[i] = normal(rng);
      }
      const double den = bilinear(g, X, X) * bilinear(g, Y, Y) - std::pow(bilinear(g, X, Y), 2);
      if (std::abs(den) < 1e-2 * X.squaredNorm() * Y.squaredNorm()) continue;
      const double k = bilinear(g, r.apply(X, Y, Y), X) / den;
      worst = std::max(worst, std::abs(k - c));
      ++accepted;
    }
  }
  return worst;
}

ChartedMetric trig_perturbed_chart(int dim, int index, double amplitude, std::uint64_t seed) {
  struct Term {
    double a;
    Vec w;
    double phase;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Term> terms(static_cast<std::size_t>(dim * dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      Term t{amplitude * unit(rng), Vec(dim), std::numbers::pi * (unit(rng) + 1.0)};
      for (int k = 0; k < dim; ++k) t.w[k] = 1.5 * unit(rng);
      terms[i * dim + j] = t;
      terms[j * dim + i] = t;
    }
  }
  const Vec s = signature_signs(dim, index);

  auto metric = [dim, s, terms](const Vec& x) -> Mat {
    Mat g = s.asDiagonal();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const Term& t = terms[i * dim + j];
        g(i, j) += t.a * std::sin(t.w.dot(x) + t.phase);
      }
    return g;
  };
  auto d1 = [dim, terms](const Vec& x) {
    Tensor3 out(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const Term& t = terms[i * dim + j];
        const double cs = t.a * std::cos(t.w.dot(x) + t.phase);
        for (int k = 0; k < dim; ++k) out(k, i, j) = cs * t.w[k];
      }
    return out;
  };
  auto d2 = [dim, terms](const Vec& x) {
    Tensor4 out(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const Term& t = terms[i * dim + j];
        const double sn = -t.a * std::sin(t.w.dot(x) + t.phase);
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) out(k, l, i, j) = sn * t.w[k] * t.w[l];
      }
    return out;
  };
  auto domain = [](const Vec& x) { return x.cwiseAbs().maxCoeff() <= 1.0; };
  return ChartedMetric(dim, index, metric, d1, d2, domain, "trig_perturbed");
}

}  // namespace sasaki
