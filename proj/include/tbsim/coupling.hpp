#pragma once

#include <optional>
#include <vector>

#include "tbsim/grid.hpp"
#include "tbsim/profile.hpp"
#include "tbsim/pump.hpp"
#include "tbsim/types.hpp"

namespace tbsim {

/// Carrier frequencies and wavenumbers; carried through to reports, never used numerically.
struct CarrierMetadata {
  std::optional<double> omega_s, omega_i, omega_p;
  std::optional<double> k_s, k_i, k_p;
};

struct WaveguideSpec {
  double v_s = 1.0;
  double v_i = 1.0;
  double v_p = 1.0;
  double ell_min = 0.0;
  double ell_max = 1.0;
  cplx gamma_delta = 0.0;
  PiecewiseProfile g_profile;  ///< values in {-1, 0, +1}
  double gamma_xpm_s = 0.0;
  double gamma_xpm_i = 0.0;
  PiecewiseProfile h_s_profile;  ///< values in {0, 1}
  PiecewiseProfile h_i_profile;  ///< values in {0, 1}
  int delta = 1;
  CarrierMetadata carriers;

  double length() const { return ell_max - ell_min; }
  void validate() const;
};

/// Top-hat waveguide on [-ell/2, ell/2] in the symmetric group-velocity-matched
/// regime: 1/v_s - 1/v_p = -(1/v_i - 1/v_p) = 2 kappa / ell.
WaveguideSpec symmetric_gvm_waveguide(double kappa, double ell, double v_p, cplx gamma_delta);

/// Wavenumber mismatch (1/v_j - 1/v_p) nu.
double delta_k(double nu, double v_j, double v_p);

struct GeneratorMatrices {
  Matrix F;
  Matrix G;
  Matrix H;
  Matrix Q;  ///< [[G, F], [-F^H, -H^H]]
};

/// Block generator from its parts.
Matrix assemble_Q_blocks(const Matrix& F, const Matrix& G, const Matrix& H);

/// F_nm = gamma g / sqrt(2 pi) * beta_p(nu_n + nu_m) * d_omega, from beta on the doubled grid.
Matrix build_F(cplx gamma_g, const Vector& beta_doubled, const FrequencyGrid& grid);
/// diag(dk(nu_n)) + gamma h / (2 pi) * E(nu_n - nu_m) * d_omega, or the conjugate kernel for the idler.
Matrix build_walkoff_xpm(double v_j, double v_p, double gamma_h, const Vector& energy_doubled,
                         const FrequencyGrid& grid, bool conjugate_kernel);

/// Evaluates the generator Q(z) for a fixed pump, waveguide and grid.
///
/// The energy spectrum is z-independent and computed once. beta_p is computed
/// once when SPM is off, otherwise per call through a BetaEvaluator.
class GeneratorAssembler {
 public:
  GeneratorAssembler(PumpField pump, WaveguideSpec waveguide, FrequencyGrid grid);

  Matrix F(double z) const;
  Matrix G(double z) const;
  Matrix H(double z) const;
  GeneratorMatrices assemble(double z) const;
  Matrix Q(double z) const;

  /// beta_p(z, .) on the doubled grid.
  Vector beta_doubled(double z) const;
  const Vector& energy_doubled() const noexcept { return energy_doubled_; }

  /// Region endpoints plus every profile discontinuity inside the region.
  std::vector<double> breakpoints() const;
  /// True when Q is constant over [ell_min, ell_max].
  bool z_independent() const;

  const PumpField& pump() const noexcept { return pump_; }
  const WaveguideSpec& waveguide() const noexcept { return waveguide_; }
  const FrequencyGrid& grid() const noexcept { return grid_; }

 private:
  bool inside(double z) const { return z >= waveguide_.ell_min && z < waveguide_.ell_max; }

  PumpField pump_;
  WaveguideSpec waveguide_;
  FrequencyGrid grid_;
  BetaEvaluator beta_;
  std::optional<Vector> beta_static_;
  Vector energy_doubled_;
};

Matrix assemble_F(double z, const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid);
Matrix assemble_G(double z, const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid);
Matrix assemble_H(double z, const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid);
GeneratorMatrices assemble_Q(double z, const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid);

/// Physical waveguide description for the flat-mode coupling estimate (SI units).
struct PhysicalWaveguide {
  double area = 0.0;           ///< effective transverse area A [m^2]
  double refractive_index = 0.0;
  double v_g_p = 0.0, v_g_s = 0.0, v_g_i = 0.0;        ///< group velocities [m/s]
  double omega_p = 0.0, omega_s = 0.0, omega_i = 0.0;  ///< carrier angular frequencies [rad/s]
  double chi2 = 0.0;           ///< |chi^(2)| [m/V]; 0 disables the SPDC estimate
  double chi3 = 0.0;           ///< |chi^(3)| [m^2/V^2]; 0 disables SFWM/SPM/XPM estimates
};

/// Order-of-magnitude couplings assuming every mode is uniform over area A.
/// All values SI; gamma_* follow the normalisation of the generator matrices.
struct CouplingEstimate {
  double d_p = 0.0, d_s = 0.0, d_i = 0.0;  ///< flat-mode field amplitude |d| per beam
  double xi1 = 0.0, gamma1 = 0.0;
  double xi2 = 0.0, gamma2 = 0.0;
  double zeta_p = 0.0, zeta_s = 0.0, zeta_i = 0.0;
  double gamma_xpm_s = 0.0, gamma_xpm_i = 0.0;
};

CouplingEstimate estimate_gamma(const PhysicalWaveguide& params);

}  // namespace tbsim
