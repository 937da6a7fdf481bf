#include "sasaki/sampling.hpp"

#include <cmath>

namespace sasaki {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the combined state
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vec Rng::normal_vec(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal();
  return v;
}

Vec Rng::uniform_vec(int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

double sample_radius(double curvature) { return 0.4 / std::sqrt(std::max(1.0, std::abs(curvature))); }

Point sample_base_point(const ChartedMetric& m, Rng& rng, double radius) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Vec x = rng.uniform_vec(m.dim(), -radius, radius);
    if (m.in_domain(x)) return x;
  }
  throw GeometryError(ErrorCode::kOutOfDomain, "could not sample an in-domain point");
}

Vec sample_fiber(const ChartedMetric& m, const Point& x, int eps, Rng& rng) {
  const Mat g = metric_at(m, x);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Vec u = rng.normal_vec(m.dim());
    const double q = bilinear(g, u, u);
    if (std::abs(q) < 0.1 || (q > 0 ? 1 : -1) != eps) continue;
    return u / std::sqrt(std::abs(q));
  }
  throw GeometryError(ErrorCode::kInvalidConfig, "no fiber vector with the requested causal sign");
}

SBPoint sample_sb_point(const ChartedMetric& m, int eps, Rng& rng, double radius) {
  const Point x = sample_base_point(m, rng, radius);
  return make_sb_point(m, x, sample_fiber(m, x, eps, rng), eps);
}

SBVec random_sb_vec(const SBFrame& frame, Rng& rng) {
  return frame_combination(frame, rng.uniform_vec(static_cast<int>(frame.vectors.size()), -1.0, 1.0));
}

SBVec random_horizontal_kernel_vec(const SBFrame& frame, Rng& rng) {
  Vec coeffs = rng.uniform_vec(static_cast<int>(frame.vectors.size()), -1.0, 1.0);
  coeffs[coeffs.size() - 1] = 0.0;
  return frame_combination(frame, coeffs);
}

}  // namespace sasaki
