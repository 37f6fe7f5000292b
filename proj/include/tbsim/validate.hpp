#pragma once

#include <string>
#include <vector>

#include "tbsim/config.hpp"

namespace tbsim {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidateOptions {
  bool full = false;  ///< N = 200 instead of N = 40
  /// Test hook: decompose with a grid spacing off by 1e-3 so orthonormality must fail.
  bool inject_delta_omega_fault = false;
};

/// Built-in configuration used by the suite: symmetric GVM, kappa optimal, ell = 10, sigma = 1.
Json builtin_config(int n_points, double sqrt_np);

std::vector<CheckResult> run_validation(const ValidateOptions& options);

/// Relative L2 distance after normalizing both kernels and removing the best global phase.
double normalized_kernel_distance(const Matrix& a, const Matrix& b);

}  // namespace tbsim
