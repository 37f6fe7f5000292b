#include <doctest.h>

#include "tbsim/analytic.hpp"
#include "tbsim/decompose.hpp"
#include "tbsim/error.hpp"
#include "tbsim/propagator.hpp"
#include "oracles.hpp"

using namespace tbsim;

TEST_CASE("optimal kappa") {
  CHECK(kappa_optimal(1.0) == doctest::Approx(1.42478).epsilon(1e-5));
  CHECK(kappa_optimal(2.0) == doctest::Approx(0.71239).epsilon(1e-5));
  CHECK_THROWS_AS(kappa_optimal(0.0), ConfigError);
}

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  for (double x : {1e-6, 5e-5, 9.9e-5, 1.01e-4, 0.3, 2.0, -7.5})
    CHECK(std::abs(sinc(x) - std::sin(x) / x) <= 1e-15);
}

TEST_CASE("symmetric low-gain configuration") {
  const LowGainConfig c = symmetric_lowgain_config(1.2, 8.0, 1.0, 0.01, 1.0);
  CHECK(symmetric_gvm_residual(c) <= 1e-15);
  CHECK(1.0 / c.v_s - 1.0 == doctest::Approx(0.3));
  CHECK(1.0 / c.v_i - 1.0 == doctest::Approx(-0.3));
  // Phase matching argument: dk_s(nu_s) + dk_i(nu_i) = 2 kappa (nu_s - nu_i) / ell.
  const double arg = delta_k(0.7, c.v_s, c.v_p) + delta_k(-0.4, c.v_i, c.v_p);
  CHECK(arg == doctest::Approx(2.0 * 1.2 * 1.1 / 8.0));
}

TEST_CASE("low-gain JSA values") {
  const LowGainConfig c = symmetric_lowgain_config(1.4, 10.0, 1.0, 4.0, 0.5);
  const double origin = 0.5 * 2.0 / std::sqrt(2.0 * kPi * c.v_s * c.v_i * std::sqrt(kPi)) * 10.0;
  CHECK(lowgain_jsa(c, 0.0, 0.0) == doctest::Approx(origin).epsilon(1e-14));
  CHECK(lowgain_jsa(c, 0.5, -0.5) == doctest::Approx(origin * sinc(5.0 * 2.8 / 10.0)).epsilon(1e-14));
  LowGainConfig off = c;
  off.n_photons = 0.0;
  CHECK(lowgain_jsa(off, 0.3, 0.1) == 0.0);
  const FrequencyGrid grid(4.0, 11);
  const RealMatrix m = lowgain_jsa(c, grid);
  CHECK(m(3, 7) == doctest::Approx(lowgain_jsa(c, grid.nu(3), grid.nu(7))).epsilon(1e-15));
}

TEST_CASE("phase matching function") {
  // Top hat: xi ell sinc(ell dk / 2) / sqrt(2 pi).
  const PiecewiseProfile hat = PiecewiseProfile::constant(-2.0, 2.0, 1.0);
  for (double dk : {0.0, 0.4, 3.0})
    CHECK(std::abs(phase_matching_phi(dk, hat, 2.0) - 2.0 * 4.0 * sinc(2.0 * dk) / std::sqrt(2.0 * kPi)) <= 1e-14);

  // Off-centre top hat acquires a linear phase.
  const PiecewiseProfile shifted = PiecewiseProfile::constant(0.0, 4.0, 1.0);
  CHECK(std::abs(phase_matching_phi(0.4, shifted, 1.0) -
                 std::polar(1.0, -0.8) * 4.0 * sinc(0.8) / std::sqrt(2.0 * kPi)) <= 1e-14);

  // Reversing the sign of the profile flips Phi.
  const PiecewiseProfile neg = PiecewiseProfile::constant(-2.0, 2.0, -1.0);
  CHECK(std::abs(phase_matching_phi(0.9, neg, 1.0) + phase_matching_phi(0.9, hat, 1.0)) <= 1e-15);

  // Three segments against quadrature.
  const PiecewiseProfile three({{-3.0, -1.0, 1.0}, {-1.0, 0.5, -1.0}, {1.0, 2.5, 1.0}});
  const cplx xi(0.7, -0.2);
  for (double dk : {0.0, 0.8, 2.3}) {
    cplx ref = 0.0;
    for (auto [a, b] : {std::pair{-3.0, -1.0}, std::pair{-1.0, 0.5}, std::pair{1.0, 2.5}})
      ref += oracle::simpson([&](double z) { return xi * three(0.5 * (a + b)) * std::polar(1.0, -z * dk); }, a, b, 2000) /
             std::sqrt(2.0 * kPi);
    CHECK(std::abs(phase_matching_phi(dk, three, xi) - ref) <= 1e-12);
  }
}

TEST_CASE("first-order kernel equals i times the low-gain JSA") {
  const LowGainConfig c = symmetric_lowgain_config(kappa_optimal(1.0), 10.0, 1.0, 1e-6, 1.0);
  const FrequencyGrid grid(4.0, 41);
  const Matrix first = first_order_propagator(c, grid);
  const RealMatrix j = lowgain_jsa(c, grid);
  CHECK(first.real().cwiseAbs().maxCoeff() <= 1e-12 * j.cwiseAbs().maxCoeff());
  CHECK((first.imag() - j).cwiseAbs().maxCoeff() <= 1e-9 * j.cwiseAbs().maxCoeff());
}

TEST_CASE("first-order kernel agrees with the full propagator at low gain") {
  const LowGainConfig c = symmetric_lowgain_config(kappa_optimal(1.0), 10.0, 1.0, 1e-8, 1.0);
  const FrequencyGrid grid(4.0, 60);
  const PumpField pump = PumpField::gaussian(lowgain_pump(c));
  const WaveguideSpec wg = lowgain_waveguide(c);
  const GeneratorAssembler gen(pump, wg, grid);
  const Propagator p = dress_in_out(propagate_uniform(gen.Q(0.0), wg.length(), wg.ell_min), wg, grid);
  const Matrix usi = p.U_si() / grid.delta_omega();
  const Matrix first = first_order_propagator(pump, wg, grid);
  CHECK((usi - first).norm() <= 1e-3 * first.norm());
}
