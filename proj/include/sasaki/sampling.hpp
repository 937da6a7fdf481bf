#pragma once

// Deterministic sampling of base points, fiber vectors and tangent vectors.
// Every sample index gets its own generator derived from (seed, index), so
// serial and parallel loops draw identical samples.

#include <cstdint>
#include <exception>
#include <random>
#include <vector>

#include "sasaki/sphere_bundle.hpp"

namespace sasaki {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  Vec normal_vec(int n);
  Vec uniform_vec(int n, double lo, double hi);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Half-width of the coordinate box that base points are drawn from; shrinks
// with |c| to keep the conformal factor well away from zero.
double sample_radius(double curvature);

Point sample_base_point(const ChartedMetric& m, Rng& rng, double radius);
// Draw u, reject |g(u,u)| < 0.1 or sign(g(u,u)) != eps, then rescale to g(u,u) = eps.
Vec sample_fiber(const ChartedMetric& m, const Point& x, int eps, Rng& rng);
SBPoint sample_sb_point(const ChartedMetric& m, int eps, Rng& rng, double radius);
// Random combination of the frame vectors with coefficients in [-1, 1].
SBVec random_sb_vec(const SBFrame& frame, Rng& rng);
// Random element of ker(eta): no component along u^h.
SBVec random_horizontal_kernel_vec(const SBFrame& frame, Rng& rng);

enum class Execution { kSerial, kParallel };

// Runs body(i) for i in [0, count). The parallel path uses OpenMP; the first
// exception raised by any index is rethrown after the loop.
template <class Body>
void for_each_index(int count, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sasaki
