#pragma once

#include "tbsim/coupling.hpp"
#include "tbsim/grid.hpp"
#include "tbsim/profile.hpp"
#include "tbsim/pump.hpp"
#include "tbsim/types.hpp"

namespace tbsim {

/// Flat top-hat nonlinearity on [-ell/2, ell/2] with a Gaussian pump centred at z = 0, t0 = 0.
struct LowGainConfig {
  double xi0 = 1.0;  ///< flat nonlinearity; gamma = xi0 / sqrt(v_s v_i v_p)
  double ell = 1.0;
  double kappa = 0.0;
  double sigma = 1.0;
  double n_photons = 0.0;
  double v_s = 1.0;
  double v_i = 1.0;
  double v_p = 1.0;
};

/// Velocities set by the symmetric group-velocity matching condition.
LowGainConfig symmetric_lowgain_config(double kappa, double ell, double sigma, double n_photons, double xi0,
                                       double v_p = 1.0);

/// max(|(1/v_s - 1/v_p) - 2 kappa / ell|, |(1/v_i - 1/v_p) + 2 kappa / ell|).
double symmetric_gvm_residual(const LowGainConfig& cfg);

/// sin(x) / x with sinc(0) = 1.
double sinc(double x);

/// Low-gain JSA: pump spectrum times sinc phase matching (hbar omega_p = 1).
double lowgain_jsa(const LowGainConfig& cfg, double nu_s, double nu_i);
RealMatrix lowgain_jsa(const LowGainConfig& cfg, const FrequencyGrid& grid);

/// Phi(dk) = int dz / sqrt(2 pi) exp(-i z dk) xi profile(z), exactly per segment.
cplx phase_matching_phi(double delta_k, const PiecewiseProfile& profile, cplx xi);

/// First-order signal-idler kernel of the dressed transfer function,
/// i beta_p(nu + nu') Phi_gamma(dk_s(nu) + dk_i(nu')). SPM is switched off.
Matrix first_order_propagator(const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid);
Matrix first_order_propagator(const LowGainConfig& cfg, const FrequencyGrid& grid);

/// Pump and waveguide matching `cfg` in internal units.
PumpSpec lowgain_pump(const LowGainConfig& cfg);
WaveguideSpec lowgain_waveguide(const LowGainConfig& cfg);

/// Separability-optimal kappa, 1.61 / (1.13 sigma).
double kappa_optimal(double sigma);

}  // namespace tbsim
