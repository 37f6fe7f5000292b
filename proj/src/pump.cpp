#include "tbsim/pump.hpp"

#include <algorithm>
#include <cmath>

#include "tbsim/error.hpp"

namespace tbsim {

namespace {

bool finite(double x) { return std::isfinite(x); }

double prefactor(const PumpSpec& spec) {
  return std::pow(spec.hbar_omega_p, 0.5 * spec.delta) / std::sqrt(2.0 * kPi * spec.v_p);
}

RealVector trapezoid_weights(const RealVector& z) {
  const Eigen::Index n = z.size();
  RealVector w = RealVector::Zero(n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double h = 0.5 * (z(k + 1) - z(k));
    w(k) += h;
    w(k + 1) += h;
  }
  return w;
}

}  // namespace

void PumpSpec::validate() const {
  if (!finite(n_photons) || n_photons < 0.0) throw ConfigError("pump.n_photons", "must be finite and >= 0");
  if (!finite(sigma) || !(sigma > 0.0)) throw ConfigError("pump.sigma", "must be positive");
  if (!finite(v_p) || !(v_p > 0.0)) throw ConfigError("pump.v_p", "must be positive");
  if (!finite(hbar_omega_p) || !(hbar_omega_p > 0.0)) throw ConfigError("pump.hbar_omega_p", "must be positive");
  if (!finite(z0)) throw ConfigError("pump.z0", "must be finite");
  if (!finite(t0)) throw ConfigError("pump.t0", "must be finite");
  if (delta != 1 && delta != 2) throw ConfigError("pump.delta", "must be 1 (SPDC) or 2 (SFWM)");
}

RealVector envelope_z_grid(const PumpSpec& spec, const EnvelopeSampling& sampling) {
  spec.validate();
  if (sampling.n_points < 2) throw ConfigError("pump.envelope.n_points", "must be at least 2");
  if (!(sampling.half_width_in_widths > 0.0)) throw ConfigError("pump.envelope.half_width", "must be positive");
  const double half = sampling.half_width_in_widths * spec.width();
  return RealVector::LinSpaced(sampling.n_points, spec.z0 - half, spec.z0 + half);
}

double gaussian_envelope_value(const PumpSpec& spec, double z) {
  const double w = spec.width();
  const double norm = std::sqrt(spec.n_photons) * std::pow(kPi * w * w, -0.25);
  const double x = (z - spec.z0) / w;
  return norm * std::exp(-0.5 * x * x);
}

Vector gaussian_envelope(const PumpSpec& spec, const RealVector& z_grid, std::vector<std::string>* warnings) {
  spec.validate();
  if (warnings != nullptr && z_grid.size() > 0) {
    const double w = spec.width();
    const double cover = std::min(spec.z0 - z_grid.minCoeff(), z_grid.maxCoeff() - spec.z0) / w;
    if (cover < 5.0)
      warnings->push_back("envelope grid covers only " + std::to_string(cover) +
                          " pulse widths around z0 (< 5); |Lambda|^2 is truncated");
  }
  Vector out(z_grid.size());
  for (Eigen::Index k = 0; k < z_grid.size(); ++k) out(k) = gaussian_envelope_value(spec, z_grid(k));
  return out;
}

double spm_phase(const PumpSpec& spec, double intensity, double z, double z_prime) {
  if (spec.zeta_p.is_zero()) return 0.0;
  return intensity * spec.zeta_p.integral(z_prime, z) / spec.v_p;
}

double spm_phase(const PumpSpec& spec, double z, double z_prime) {
  const double lam = gaussian_envelope_value(spec, z_prime);
  return spm_phase(spec, lam * lam, z, z_prime);
}

PumpField::PumpField(PumpSpec spec, RealVector z, Vector envelope)
    : spec_(std::move(spec)), z_(std::move(z)), envelope_(std::move(envelope)) {
  weights_ = trapezoid_weights(z_);
}

PumpField PumpField::gaussian(const PumpSpec& spec, const EnvelopeSampling& sampling) {
  RealVector z = envelope_z_grid(spec, sampling);
  std::vector<std::string> warnings;
  Vector env = gaussian_envelope(spec, z, &warnings);
  PumpField field(spec, std::move(z), std::move(env));
  field.warnings_ = std::move(warnings);
  return field;
}

PumpField PumpField::sampled(const PumpSpec& spec, RealVector z, Vector envelope) {
  spec.validate();
  if (z.size() < 2) throw ConfigError("pump.envelope.z", "need at least 2 samples");
  if (z.size() != envelope.size()) throw ConfigError("pump.envelope", "z and envelope lengths differ");
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    if (!finite(z(k)) || !finite(envelope(k).real()) || !finite(envelope(k).imag()))
      throw ConfigError("pump.envelope", "non-finite sample");
    if (k > 0 && !(z(k) > z(k - 1))) throw ConfigError("pump.envelope.z", "must be strictly increasing");
  }
  return PumpField(spec, std::move(z), std::move(envelope));
}

double PumpField::photon_number() const { return weights_.dot(envelope_.cwiseAbs2()); }

bool PumpField::spm_free() const { return spec_.zeta_p.is_zero() || spec_.n_photons == 0.0; }

double PumpField::spm_phase_at_sample(double z, Eigen::Index k) const {
  return tbsim::spm_phase(spec_, std::norm(envelope_(k)), z, z_(k));
}

double PumpField::spm_phase(double z, double z_prime) const {
  if (z_prime < z_(0) || z_prime > z_(z_.size() - 1)) return 0.0;
  const auto* begin = z_.data();
  const auto* end = begin + z_.size();
  auto it = std::upper_bound(begin, end, z_prime);
  const Eigen::Index hi = std::min<Eigen::Index>(it - begin, z_.size() - 1);
  const Eigen::Index lo = hi - 1;
  const double t = (z_prime - z_(lo)) / (z_(hi) - z_(lo));
  const double intensity = (1.0 - t) * std::norm(envelope_(lo)) + t * std::norm(envelope_(hi));
  return tbsim::spm_phase(spec_, intensity, z, z_prime);
}

Vector PumpField::beta(double z, const RealVector& nu) const {
  const double pre = prefactor(spec_);
  const int d = spec_.delta;
  Vector integrand(z_.size());
  for (Eigen::Index k = 0; k < z_.size(); ++k) {
    const cplx lam_pow = (d == 1) ? envelope_(k) : envelope_(k) * envelope_(k);
    const double theta = spm_free() ? 0.0 : spm_phase_at_sample(z, k);
    integrand(k) = weights_(k) * lam_pow * std::polar(1.0, d * theta);
  }
  Vector out(nu.size());
  for (Eigen::Index j = 0; j < nu.size(); ++j) {
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < z_.size(); ++k) acc += integrand(k) * std::polar(1.0, -nu(j) * z_(k) / spec_.v_p);
    out(j) = pre * std::polar(1.0, nu(j) * spec_.t0) * acc;
  }
  return out;
}

Vector PumpField::energy_spectrum(const RealVector& nu) const {
  Vector out(nu.size());
  for (Eigen::Index j = 0; j < nu.size(); ++j) {
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < z_.size(); ++k)
      acc += weights_(k) * std::norm(envelope_(k)) * std::polar(1.0, -nu(j) * z_(k) / spec_.v_p);
    out(j) = spec_.hbar_omega_p * std::polar(1.0, nu(j) * spec_.t0) * acc;
  }
  return out;
}

Vector beta_p(const PumpField& field, double z, const RealVector& nu) { return field.beta(z, nu); }

Vector energy_spectrum(const PumpField& field, const RealVector& nu) { return field.energy_spectrum(nu); }

BetaEvaluator::BetaEvaluator(const PumpField& field, RealVector nu)
    : spec_(field.spec()), z_(field.z()), intensity_(field.envelope().cwiseAbs2()), nu_(std::move(nu)) {
  const double pre = prefactor(spec_);
  phase_.resize(nu_.size(), z_.size());
  for (Eigen::Index k = 0; k < z_.size(); ++k)
    for (Eigen::Index j = 0; j < nu_.size(); ++j)
      phase_(j, k) = pre * field.weights()(k) * std::polar(1.0, nu_(j) * spec_.t0 - nu_(j) * z_(k) / spec_.v_p);
  lambda_pow_ = field.envelope();
  if (spec_.delta == 2) lambda_pow_ = lambda_pow_.array().square().matrix();
  zeta_antiderivative_.resize(z_.size());
  for (Eigen::Index k = 0; k < z_.size(); ++k) zeta_antiderivative_(k) = spec_.zeta_p.antiderivative(z_(k));
}

Vector BetaEvaluator::operator()(double z) const {
  if (spec_.zeta_p.is_zero()) return phase_ * lambda_pow_;
  Vector v(z_.size());
  const double p_z = spec_.zeta_p.antiderivative(z);
  for (Eigen::Index k = 0; k < z_.size(); ++k) {
    const double theta = intensity_(k) * (p_z - zeta_antiderivative_(k)) / spec_.v_p;
    v(k) = lambda_pow_(k) * std::polar(1.0, spec_.delta * theta);
  }
  return phase_ * v;
}

}  // namespace tbsim
