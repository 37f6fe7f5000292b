#include "tbsim/analytic.hpp"

#include <cmath>

#include "tbsim/error.hpp"

namespace tbsim {

LowGainConfig symmetric_lowgain_config(double kappa, double ell, double sigma, double n_photons, double xi0,
                                       double v_p) {
  const WaveguideSpec wg = symmetric_gvm_waveguide(kappa, ell, v_p, 1.0);
  LowGainConfig cfg;
  cfg.xi0 = xi0;
  cfg.ell = ell;
  cfg.kappa = kappa;
  cfg.sigma = sigma;
  cfg.n_photons = n_photons;
  cfg.v_s = wg.v_s;
  cfg.v_i = wg.v_i;
  cfg.v_p = v_p;
  return cfg;
}

double symmetric_gvm_residual(const LowGainConfig& cfg) {
  const double slope = 2.0 * cfg.kappa / cfg.ell;
  return std::max(std::abs((1.0 / cfg.v_s - 1.0 / cfg.v_p) - slope), std::abs((1.0 / cfg.v_i - 1.0 / cfg.v_p) + slope));
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double lowgain_jsa(const LowGainConfig& cfg, double nu_s, double nu_i) {
  const double pre = cfg.xi0 * std::sqrt(cfg.n_photons) /
                     std::sqrt(2.0 * kPi * cfg.v_s * cfg.v_i * cfg.v_p * cfg.sigma * std::sqrt(kPi));
  const double sum = nu_s + nu_i;
  const double dk = delta_k(nu_s, cfg.v_s, cfg.v_p) + delta_k(nu_i, cfg.v_i, cfg.v_p);
  return pre * std::exp(-sum * sum / (2.0 * cfg.sigma * cfg.sigma)) * cfg.ell * sinc(0.5 * cfg.ell * dk);
}

RealMatrix lowgain_jsa(const LowGainConfig& cfg, const FrequencyGrid& grid) {
  const int n = grid.size();
  RealMatrix J(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) J(k, m) = lowgain_jsa(cfg, grid.nu(k), grid.nu(m));
  return J;
}

cplx phase_matching_phi(double dk, const PiecewiseProfile& profile, cplx xi) {
  cplx acc = 0.0;
  for (const auto& s : profile.segments()) {
    if (s.value == 0.0) continue;
    const double len = s.z_end - s.z_start;
    const double mid = 0.5 * (s.z_start + s.z_end);
    acc += s.value * len * sinc(0.5 * dk * len) * std::polar(1.0, -dk * mid);
  }
  return xi * acc / std::sqrt(2.0 * kPi);
}

Matrix first_order_propagator(const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid) {
  PumpSpec spec = pump.spec();
  spec.zeta_p = PiecewiseProfile();
  const PumpField linear = PumpField::sampled(spec, pump.z(), pump.envelope());
  const Vector beta = linear.beta(0.0, grid.doubled_nu());

  const int n = grid.size();
  Matrix K(n, n);
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      const double dk = delta_k(grid.nu(k), wg.v_s, wg.v_p) + delta_k(grid.nu(m), wg.v_i, wg.v_p);
      K(k, m) = kI * beta(grid.sum_index(k, m)) * phase_matching_phi(dk, wg.g_profile, wg.gamma_delta);
    }
  return K;
}

PumpSpec lowgain_pump(const LowGainConfig& cfg) {
  PumpSpec spec;
  spec.n_photons = cfg.n_photons;
  spec.sigma = cfg.sigma;
  spec.v_p = cfg.v_p;
  return spec;
}

WaveguideSpec lowgain_waveguide(const LowGainConfig& cfg) {
  WaveguideSpec wg;
  wg.v_s = cfg.v_s;
  wg.v_i = cfg.v_i;
  wg.v_p = cfg.v_p;
  wg.ell_min = -0.5 * cfg.ell;
  wg.ell_max = 0.5 * cfg.ell;
  wg.gamma_delta = cfg.xi0 / std::sqrt(cfg.v_s * cfg.v_i * cfg.v_p);
  wg.g_profile = PiecewiseProfile::constant(wg.ell_min, wg.ell_max, 1.0);
  return wg;
}

Matrix first_order_propagator(const LowGainConfig& cfg, const FrequencyGrid& grid) {
  return first_order_propagator(PumpField::gaussian(lowgain_pump(cfg)), lowgain_waveguide(cfg), grid);
}

double kappa_optimal(double sigma) {
  if (!std::isfinite(sigma) || !(sigma > 0.0)) throw ConfigError("sigma", "must be positive");
  return 1.61 / (1.13 * sigma);
}

}  // namespace tbsim
