#pragma once

#include <string>
#include <vector>

#include "tbsim/profile.hpp"
#include "tbsim/types.hpp"

namespace tbsim {

/// Classical undepleted pump. Units are whatever the caller uses consistently;
/// the CLI converts to sigma = v_p = hbar_omega_p = 1.
struct PumpSpec {
  double n_photons = 0.0;
  double sigma = 1.0;          ///< spectral bandwidth
  double z0 = 0.0;             ///< envelope centre at the reference time
  double t0 = 0.0;             ///< reference time; enters only as a global phase
  double v_p = 1.0;            ///< pump group velocity
  double hbar_omega_p = 1.0;   ///< pump photon energy
  PiecewiseProfile zeta_p;     ///< SPM strength profile
  int delta = 1;               ///< 1: SPDC, 2: SFWM

  /// Pulse length v_p / sigma.
  double width() const { return v_p / sigma; }
  void validate() const;
};

struct EnvelopeSampling {
  int n_points = 2048;
  double half_width_in_widths = 8.0;  ///< grid covers z0 +- this many pulse widths
};

/// Uniform z grid for the envelope.
RealVector envelope_z_grid(const PumpSpec& spec, const EnvelopeSampling& sampling = {});

/// Gaussian envelope sqrt(N_p) (pi w^2)^(-1/4) exp(-(z - z0)^2 / (2 w^2)), w = v_p / sigma.
double gaussian_envelope_value(const PumpSpec& spec, double z);
Vector gaussian_envelope(const PumpSpec& spec, const RealVector& z_grid,
                         std::vector<std::string>* warnings = nullptr);

/// SPM phase theta(z, z') = intensity(z') * int_{z'}^{z} zeta_p / v_p, with the
/// intensity |Lambda(z')|^2 given explicitly.
double spm_phase(const PumpSpec& spec, double intensity, double z, double z_prime);
/// Same, using the Gaussian intensity at z'.
double spm_phase(const PumpSpec& spec, double z, double z_prime);

/// Sampled pump envelope together with its spec. Immutable.
class PumpField {
 public:
  static PumpField gaussian(const PumpSpec& spec, const EnvelopeSampling& sampling = {});
  /// User-supplied envelope samples on a strictly increasing z grid.
  static PumpField sampled(const PumpSpec& spec, RealVector z, Vector envelope);

  const PumpSpec& spec() const noexcept { return spec_; }
  const RealVector& z() const noexcept { return z_; }
  const Vector& envelope() const noexcept { return envelope_; }
  /// Trapezoid weights matching z().
  const RealVector& weights() const noexcept { return weights_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// int |Lambda|^2 dz by the trapezoid rule.
  double photon_number() const;
  /// True when beta_p cannot depend on z.
  bool spm_free() const;

  /// theta(z, z_k) for envelope sample k.
  double spm_phase_at_sample(double z, Eigen::Index k) const;
  /// theta(z, z'), with |Lambda(z')|^2 linearly interpolated.
  double spm_phase(double z, double z_prime) const;

  /// beta_p(z, nu) by direct quadrature, nu measured from delta * carrier.
  Vector beta(double z, const RealVector& nu) const;
  /// Energy spectrum E_p(nu) by direct quadrature.
  Vector energy_spectrum(const RealVector& nu) const;

 private:
  PumpField(PumpSpec spec, RealVector z, Vector envelope);

  PumpSpec spec_;
  RealVector z_;
  Vector envelope_;
  RealVector weights_;
  std::vector<std::string> warnings_;
};

Vector beta_p(const PumpField& field, double z, const RealVector& nu);
Vector energy_spectrum(const PumpField& field, const RealVector& nu);

/// Repeated evaluation of beta_p(z, .) on a fixed frequency set.
///
/// Precomputes the Fourier phase matrix once so each z costs one
/// matrix-vector product. Intended for the Trotter integrator with SPM on.
class BetaEvaluator {
 public:
  BetaEvaluator(const PumpField& field, RealVector nu);

  Vector operator()(double z) const;
  const RealVector& nu() const noexcept { return nu_; }

 private:
  PumpSpec spec_;
  RealVector z_;
  RealVector intensity_;
  RealVector zeta_antiderivative_;
  RealVector nu_;
  Matrix phase_;        // prefactor * exp(i nu t0) * w_k * exp(-i nu z_k / v_p)
  Vector lambda_pow_;   // Lambda^delta
};

}  // namespace tbsim
