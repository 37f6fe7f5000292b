#pragma once

#include "tbsim/propagator.hpp"
#include "tbsim/types.hpp"

namespace tbsim {

/// Joint Schmidt decomposition of the four transfer functions.
///
/// Mode columns are continuum-normalized: delta_omega * rho^H rho = I.
/// U_ss = rho_s cosh(r) tau_s^H, U_si = rho_s sinh(r) tau_i^T,
/// U_ii^* = rho_i^* cosh(r) tau_i^T, U_is^* = rho_i^* sinh(r) tau_s^H
/// (each times delta_omega on the matrix level).
struct TwinBeamDecomposition {
  RealVector r;  ///< descending, >= 0
  Matrix rho_s, rho_i, tau_s, tau_i;
  double delta_omega = 0.0;

  int size() const { return static_cast<int>(r.size()); }
  /// Number of modes with r_l > 1e-12 r_max (0 for vacuum).
  int occupied_modes() const;
};

struct DecomposeOptions {
  /// SU(1,1) residual the input must satisfy.
  double su11_tolerance = 1e-8;
};

/// Throws NumericalError if the propagator fails the SU(1,1) check.
TwinBeamDecomposition schmidt_decompose(const Propagator& prop, double delta_omega, const DecomposeOptions& options = {});

struct DecompositionResiduals {
  double reconstruction = 0.0;  ///< max-norm over the four block expansions
  double orthonormality = 0.0;  ///< max over the four mode sets, using the supplied delta_omega
  double hyperbolic = 0.0;      ///< max_l |svd(U_ss)_l - sqrt(1 + svd(U_si)_l^2)|
  double cosh_sinh = 0.0;       ///< max_l |cosh^2 - sinh^2 - 1| with cosh, sinh from independent SVDs
};

/// Residuals against the propagator. `delta_omega` is the grid spacing used
/// for the orthonormality test, independent of the one stored in `decomp`.
DecompositionResiduals decomposition_residuals(const TwinBeamDecomposition& decomp, const Propagator& prop,
                                               double delta_omega);

/// M(nu, nu') = <a_s(nu) a_i(nu')> = sum_l sinh(2 r_l)/2 rho_s(nu) rho_i(nu'), from the blocks.
Matrix moment_matrix(const Propagator& prop, double delta_omega);
/// int U^{ii}(nu, nu'') U^{si}(nu', nu'') dnu'' taken literally; equals moment_matrix transposed.
Matrix moment_matrix_block_formula(const Propagator& prop, double delta_omega);
/// Same quantity from the decomposition.
Matrix moment_matrix(const TwinBeamDecomposition& decomp);

/// J = sum_l r_l rho_s(nu) rho_i(nu').
Matrix jsa(const TwinBeamDecomposition& decomp);

/// (sum w)^2 / sum w^2; 1 when all weights vanish.
double schmidt_number_from_weights(const RealVector& weights);
/// Schmidt number of a kernel from its singular values (weights s^2).
double kernel_schmidt_number(const Matrix& kernel);

struct TwinBeamObservables {
  Matrix J;
  Matrix M;
  double mean_n_signal = 0.0;
  double mean_n_idler = 0.0;
  /// Weights sinh^2(r_l).
  double schmidt_number = 1.0;
  /// Weights r_l^2, i.e. the Schmidt number of J.
  double jsa_schmidt_number = 1.0;
  bool vacuum = false;
};

TwinBeamObservables observables(const TwinBeamDecomposition& decomp);

/// Mean photon numbers straight from the blocks: ||U_si||_F^2 and ||U_is||_F^2.
std::pair<double, double> mean_photon_numbers(const Propagator& prop);

}  // namespace tbsim
