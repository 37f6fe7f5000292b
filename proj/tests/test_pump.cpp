#include <doctest.h>

#include "tbsim/error.hpp"
#include "tbsim/grid.hpp"
#include "tbsim/pump.hpp"
#include "oracles.hpp"

using namespace tbsim;

namespace {

PumpSpec spec_with(double np, double sigma = 1.0, double v_p = 1.0, double hw = 1.0, double z0 = 0.0, double t0 = 0.0) {
  PumpSpec s;
  s.n_photons = np;
  s.sigma = sigma;
  s.v_p = v_p;
  s.hbar_omega_p = hw;
  s.z0 = z0;
  s.t0 = t0;
  return s;
}

}  // namespace

TEST_CASE("Gaussian envelope values") {
  CHECK(gaussian_envelope_value(spec_with(1.0), 0.0) == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-15));
  CHECK(gaussian_envelope_value(spec_with(1.0), 0.0) == doctest::Approx(0.7511255444649425));
  const PumpField zero = PumpField::gaussian(spec_with(0.0));
  CHECK(zero.envelope().cwiseAbs().maxCoeff() == 0.0);
  const PumpField f = PumpField::gaussian(spec_with(2.5, 1.3, 0.7));
  CHECK(f.photon_number() == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(f.warnings().empty());
}

TEST_CASE("truncated envelope grid records a warning; NaN parameters are rejected") {
  EnvelopeSampling narrow;
  narrow.half_width_in_widths = 3.0;
  const PumpField f = PumpField::gaussian(spec_with(1.0), narrow);
  CHECK(f.warnings().size() == 1);
  CHECK_THROWS_AS(PumpField::gaussian(spec_with(std::nan(""))), ConfigError);
  CHECK_THROWS_AS(PumpField::gaussian(spec_with(1.0, -1.0)), ConfigError);
}

TEST_CASE("SPM phase") {
  PumpSpec s = spec_with(1.0, 1.0, 2.0);
  CHECK(spm_phase(s, 3.0, -1.0) == 0.0);

  s.zeta_p = PiecewiseProfile::constant(0.0, 2.0, 0.7);
  const double lam2 = std::pow(gaussian_envelope_value(s, -1.0), 2);
  CHECK(spm_phase(s, 3.0, -1.0) == doctest::Approx(lam2 * 0.7 * 2.0 / 2.0).epsilon(1e-14));

  s.zeta_p = PiecewiseProfile({{-0.5, 0.3, 1.3}, {0.3, 1.7, -0.4}});
  for (double zp : {-1.2, -0.1, 0.9}) {
    const double l2 = std::pow(gaussian_envelope_value(s, zp), 2);
    // Quadrature split at the profile breakpoints so each piece is smooth.
    std::vector<double> cuts{zp};
    for (double b : s.zeta_p.breakpoints())
      if (b > zp && b < 2.0) cuts.push_back(b);
    cuts.push_back(2.0);
    double q = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
      const double v = s.zeta_p(mid);
      q += oracle::simpson([&](double) { return cplx(v); }, cuts[k], cuts[k + 1], 64).real();
    }
    CHECK(std::abs(spm_phase(s, 2.0, zp) - l2 * q / s.v_p) < 1e-10);
  }
}

TEST_CASE("piecewise SPM phase matches exact segment integration") {
  PumpSpec s = spec_with(1.0);
  s.zeta_p = PiecewiseProfile({{-0.5, 0.25, 1.5}, {0.25, 1.0, -0.5}});
  const double l2 = std::pow(gaussian_envelope_value(s, -0.2), 2);
  // int_{-0.2}^{0.6} zeta = 1.5 * 0.45 - 0.5 * 0.35
  CHECK(std::abs(spm_phase(s, 0.6, -0.2) - l2 * (1.5 * 0.45 - 0.5 * 0.35)) < 1e-10);
}

TEST_CASE("beta_p matches the closed-form Gaussian transform") {
  const FrequencyGrid grid(4.0, 101);
  for (auto [sigma, v_p, hw, z0, t0] : {std::tuple{1.0, 1.0, 1.0, 0.0, 0.0}, std::tuple{0.6, 1.7, 2.3, 0.4, -0.3}}) {
    const PumpSpec s = spec_with(0.8, sigma, v_p, hw, z0, t0);
    const PumpField f = PumpField::gaussian(s);
    const Vector b = f.beta(3.0, grid.doubled_nu());
    double peak = 0.0, err = 0.0;
    for (int k = 0; k < grid.doubled_size(); ++k) {
      const cplx ref = oracle::gaussian_beta_spdc(grid.doubled_nu(k), 0.8, sigma, hw, z0, t0, v_p);
      peak = std::max(peak, std::abs(ref));
      err = std::max(err, std::abs(b(k) - ref));
    }
    CHECK(err / peak < 1e-8);
  }

  PumpSpec s2 = spec_with(0.5, 1.2, 0.9, 1.4, 0.1, 0.2);
  s2.delta = 2;
  const PumpField f2 = PumpField::gaussian(s2);
  const Vector b2 = f2.beta(0.0, grid.doubled_nu());
  double err = 0.0;
  for (int k = 0; k < grid.doubled_size(); ++k)
    err = std::max(err, std::abs(b2(k) - oracle::gaussian_beta_sfwm(grid.doubled_nu(k), 0.5, 1.2, 1.4, 0.1, 0.2, 0.9)));
  CHECK(err < 1e-8);

  CHECK(PumpField::gaussian(spec_with(0.0)).beta(0.0, grid.nu()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("energy spectrum") {
  const FrequencyGrid grid(4.0, 81);
  const PumpSpec s = spec_with(1.7, 0.8, 1.3, 2.0, -0.4, 0.25);
  const PumpField f = PumpField::gaussian(s);
  const Vector e = f.energy_spectrum(grid.doubled_nu());
  double err = 0.0;
  for (int k = 0; k < grid.doubled_size(); ++k)
    err = std::max(err, std::abs(e(k) - oracle::gaussian_energy(grid.doubled_nu(k), 1.7, 0.8, 2.0, -0.4, 0.25, 1.3)));
  CHECK(err < 1e-9);
  CHECK(std::abs(f.energy_spectrum(RealVector::Zero(1))(0) - 2.0 * 1.7) < 1e-8 * 3.4);
  // E(-nu) = E(nu)^*
  for (int k = 0; k < grid.doubled_size(); ++k)
    CHECK(std::abs(e(k) - std::conj(e(grid.doubled_size() - 1 - k))) < 1e-12);
  CHECK(PumpField::gaussian(spec_with(0.0)).energy_spectrum(grid.nu()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("BetaEvaluator agrees with direct quadrature, with and without SPM") {
  const FrequencyGrid grid(3.0, 31);
  PumpSpec s = spec_with(0.3, 1.0, 1.0, 1.0, -1.0);
  s.zeta_p = PiecewiseProfile::constant(-2.0, 2.0, 1.1);
  const PumpField f = PumpField::gaussian(s);
  const BetaEvaluator ev(f, grid.doubled_nu());
  for (double z : {-3.0, -1.0, 0.5, 2.0, 4.0})
    CHECK(max_abs(ev(z) - f.beta(z, grid.doubled_nu())) < 1e-12);

  // Parseval: SPM only rephases the envelope, so the norm of beta is z-independent.
  const FrequencyGrid wide(6.0, 121);
  const double n0 = f.beta(-2.0, wide.doubled_nu()).squaredNorm();
  for (double z : {-1.0, 0.0, 2.0}) CHECK(std::abs(f.beta(z, wide.doubled_nu()).squaredNorm() - n0) / n0 < 1e-6);
}

TEST_CASE("sampled envelopes are validated") {
  const PumpSpec s = spec_with(1.0);
  CHECK_THROWS_AS(PumpField::sampled(s, RealVector::LinSpaced(3, 0, 1), Vector::Zero(2)), ConfigError);
  RealVector z(3);
  z << 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(PumpField::sampled(s, z, Vector::Zero(3)), ConfigError);
  const RealVector zz = envelope_z_grid(s);
  const PumpField g = PumpField::gaussian(s);
  const PumpField copy = PumpField::sampled(s, zz, g.envelope());
  CHECK(max_abs(copy.beta(0.0, RealVector::LinSpaced(5, -1, 1)) - g.beta(0.0, RealVector::LinSpaced(5, -1, 1))) == 0.0);
}
