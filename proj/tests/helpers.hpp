#pragma once

#include <cmath>

#include "sasaki/sampling.hpp"

namespace sasaki::testing {

// Flat pseudo-Euclidean chart without analytic derivatives.
inline ChartedMetric flat_chart(int n, int nu) {
  const Vec s = signature_signs(n, nu);
  return ChartedMetric(n, nu, [s](const Vec&) -> Mat { return s.asDiagonal(); }, {}, {}, {}, "flat");
}

inline SBPoint sample_point(const ChartedMetric& m, int eps, std::uint64_t seed, double radius = 0.3) {
  Rng rng(seed);
  return sample_sb_point(m, eps, rng, radius);
}

inline double max_abs(const SBVec& v) {
  return std::max(v.h.cwiseAbs().maxCoeff(), v.t.cwiseAbs().maxCoeff());
}

inline double max_abs(const TMVec& v) {
  return std::max(v.h.cwiseAbs().maxCoeff(), v.v.cwiseAbs().maxCoeff());
}

struct Config {
  int n;
  int nu;
  int eps;
  double c;
};

inline std::vector<Config> space_form_configs() {
  std::vector<Config> out;
  for (int n : {2, 3})
    for (int nu : {0, 1})
      for (int eps : {1, -1}) {
        if (eps == -1 && nu == 0) continue;
        for (double c : {0.0, 1.0, -1.0, 2.0}) out.push_back({n, nu, eps, c});
      }
  return out;
}

}  // namespace sasaki::testing
