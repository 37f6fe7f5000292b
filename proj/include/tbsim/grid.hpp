#pragma once

#include "tbsim/types.hpp"

namespace tbsim {

/// Uniform detuning grid shared by signal and idler.
///
/// Nodes are nu[n] = -span + n * delta_omega, n = 0..N-1, endpoints inclusive,
/// with delta_omega = 2 span / (N - 1). Detunings are measured from each beam's
/// carrier, so the pump kernels evaluated at nu_n + nu_m and nu_n - nu_m both
/// land on the "doubled" grid of 2N - 1 nodes spanning [-2 span, 2 span].
class FrequencyGrid {
 public:
  FrequencyGrid(double span, int n_points);

  int size() const noexcept { return n_points_; }
  double span() const noexcept { return span_; }
  double delta_omega() const noexcept { return delta_omega_; }
  const RealVector& nu() const noexcept { return nu_; }
  double nu(int n) const { return nu_(n); }

  int doubled_size() const noexcept { return 2 * n_points_ - 1; }
  /// Node k of the doubled grid, -2 span + k delta_omega.
  double doubled_nu(int k) const;
  RealVector doubled_nu() const;
  /// Doubled-grid index of nu_n + nu_m.
  int sum_index(int n, int m) const noexcept { return n + m; }
  /// Doubled-grid index of nu_n - nu_m.
  int difference_index(int n, int m) const noexcept { return n - m + n_points_ - 1; }

 private:
  double span_;
  int n_points_;
  double delta_omega_;
  RealVector nu_;
};

FrequencyGrid make_grid(double span, int n_points);

/// Continuous transfer-function samples U(nu_n, nu_m) = block(n, m) / delta_omega.
Matrix matrix_to_transfer(const Matrix& block, const FrequencyGrid& grid);

/// Inverse of matrix_to_transfer.
Matrix transfer_to_matrix(const Matrix& kernel, const FrequencyGrid& grid);

}  // namespace tbsim
