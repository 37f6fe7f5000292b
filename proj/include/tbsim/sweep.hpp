#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "tbsim/config.hpp"

namespace tbsim {

struct SweepRow {
  double sqrt_np = 0.0;
  double n_photons = 0.0;
  std::array<double, 4> r{};
  double mean_n = 0.0;
  double schmidt_number = 1.0;
  double jsa_schmidt_number = 1.0;
};

/// Evenly spaced (or log-spaced) values from `from` to `to` inclusive.
std::vector<double> sweep_values(double from, double to, int points, bool log_spacing = false);

/// Worker count: TBSIM_THREADS if set, else hardware concurrency (at least 1).
int worker_count();

/// One pipeline run per value of sqrt(N_p), in parallel. Rows follow `values` order.
std::vector<SweepRow> run_sweep(const Json& base, const std::vector<double>& values, int threads = 0);

SweepRow sweep_point(const Json& base, double sqrt_np);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows, const std::string& hash);

struct BisectResult {
  SweepRow row;
  int evaluations = 0;
  bool converged = false;
};

/// Bisection on sqrt(N_p) in [lo, hi] until |mean_n - target| <= tolerance.
/// Throws ConfigError if the bracket does not straddle the target.
BisectResult bisect_mean_n(const Json& base, double lo, double hi, double target, double tolerance = 0.05,
                           int max_iterations = 60);

}  // namespace tbsim
