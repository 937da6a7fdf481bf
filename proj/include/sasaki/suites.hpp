#pragma once

#include <string>
#include <vector>

#include "sasaki/report.hpp"
#include "sasaki/sampling.hpp"

namespace sasaki {

struct SuiteConfig {
  std::string suite = "all";
  SuiteParams params;
  int points = 10;
  int samples = 20;
  Execution execution = Execution::kParallel;
};

const std::vector<std::string>& suite_names();

// Throws GeometryError(kInvalidConfig) on an unusable configuration.
void validate_config(const SuiteConfig& cfg);

// Deterministic for a fixed config: every sample derives its generator from
// (seed, point index), and point reports are merged in index order.
CheckReport run_suite(const SuiteConfig& cfg);

// One (n, nu, eps, c) entry of the `all` matrix.
struct MatrixEntry {
  int n;
  int nu;
  int eps;
  double c;
};
std::vector<MatrixEntry> default_matrix();

// Classification predicted by the theorems for a space form of curvature c.
bool predicted_k_contact(double c, int eps);
bool predicted_sasakian(double c, int eps);
bool predicted_constant_phi_sectional(double c, int eps);

}  // namespace sasaki
