#include "tbsim/grid.hpp"

#include <cmath>

#include "tbsim/error.hpp"

namespace tbsim {

FrequencyGrid::FrequencyGrid(double span, int n_points) : span_(span), n_points_(n_points) {
  if (n_points < 2) throw ConfigError("grid.n_points", "must be at least 2");
  if (!(span > 0.0) || !std::isfinite(span)) throw ConfigError("grid.span", "must be positive and finite");

  const double denom = static_cast<double>(n_points - 1);
  delta_omega_ = 2.0 * span / denom;
  nu_.resize(n_points);
  // Integer numerators keep nu[N-1-n] == -nu[n] bit-exactly.
  for (int n = 0; n < n_points; ++n) nu_(n) = span * static_cast<double>(2 * n - (n_points - 1)) / denom;
}

double FrequencyGrid::doubled_nu(int k) const {
  return 2.0 * span_ * static_cast<double>(k - (n_points_ - 1)) / static_cast<double>(n_points_ - 1);
}

RealVector FrequencyGrid::doubled_nu() const {
  RealVector out(doubled_size());
  for (int k = 0; k < doubled_size(); ++k) out(k) = doubled_nu(k);
  return out;
}

FrequencyGrid make_grid(double span, int n_points) { return FrequencyGrid(span, n_points); }

namespace {

void check_dims(const Matrix& m, const FrequencyGrid& grid) {
  if (m.rows() != grid.size() || m.cols() != grid.size())
    throw ConfigError("block", "expected " + std::to_string(grid.size()) + "x" + std::to_string(grid.size()) +
                                   " matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

}  // namespace

Matrix matrix_to_transfer(const Matrix& block, const FrequencyGrid& grid) {
  check_dims(block, grid);
  return block / grid.delta_omega();
}

Matrix transfer_to_matrix(const Matrix& kernel, const FrequencyGrid& grid) {
  check_dims(kernel, grid);
  return kernel * grid.delta_omega();
}

}  // namespace tbsim
