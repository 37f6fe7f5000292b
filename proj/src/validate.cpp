#include "tbsim/validate.hpp"

#include <cmath>
#include <sstream>

#include "tbsim/analytic.hpp"
#include "tbsim/coupling.hpp"
#include "tbsim/decompose.hpp"
#include "tbsim/pipeline.hpp"

namespace tbsim {

namespace {

CheckResult at_most(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), std::isfinite(value) && value <= threshold, value, threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), std::isfinite(value) && value >= threshold, value, threshold, std::move(detail)};
}

double rel_l2(const Matrix& a, const Matrix& b) { return (a - b).norm() / b.norm(); }

}  // namespace

double normalized_kernel_distance(const Matrix& a, const Matrix& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return (na == nb) ? 0.0 : 1.0;
  const cplx overlap = (b.array().conjugate() * a.array()).sum();
  const cplx phase = (std::abs(overlap) > 0.0) ? overlap / std::abs(overlap) : cplx(1.0);
  return (a / na - phase * b / nb).norm();
}

Json builtin_config(int n_points, double sqrt_np) {
  return Json{{"schema_version", kSchemaVersion},
              {"pump", {{"sqrt_n_photons", sqrt_np}, {"sigma", 1.0}, {"v_p", 1.0}}},
              {"waveguide", {{"symmetric_gvm", {{"kappa", "optimal"}, {"length", 10.0}}}, {"gamma", 1.0}}},
              {"grid", {{"span", 4.0}, {"n_points", n_points}}},
              {"outputs", {{"jsa", true}, {"moment", true}, {"modes", 4}}}};
}

std::vector<CheckResult> run_validation(const ValidateOptions& options) {
  std::vector<CheckResult> out;
  const int n = options.full ? 200 : 40;
  SimulateOptions sim;
  if (options.inject_delta_omega_fault) sim.delta_omega_factor = 1.0 + 1e-3;

  // High gain, uniform waveguide.
  {
    const RunConfig cfg = parse_config(builtin_config(n, 0.6));
    const RunResult res = simulate(cfg, sim);
    std::ostringstream d;
    d << "r_1 = " << res.decomposition.r(0) << ", N = " << n;
    out.push_back(at_most("su11_group", res.su11.group, 1e-10, d.str()));
    out.push_back(at_most("su11_commutators", std::max({res.su11.comm_ss, res.su11.comm_ii, res.su11.comm_si}), 1e-10));
    out.push_back(at_most("decomposition_reconstruction", res.residuals.reconstruction, 1e-9));
    out.push_back(at_most("decomposition_orthonormality", res.residuals.orthonormality, 1e-10));
    out.push_back(at_most("hyperbolic_pairing", res.residuals.hyperbolic, 1e-9));

    const RealVector sv = Eigen::BDCSVD<Matrix>(res.observables.M * res.grid.delta_omega()).singularValues();
    const RealVector expect = (res.decomposition.r.array().sinh() * res.decomposition.r.array().cosh()).matrix();
    out.push_back(at_most("moment_singular_values", (sv - expect).cwiseAbs().maxCoeff(), 1e-9));

    const double n_sum = res.observables.mean_n_signal;
    const double trace_dev = std::max(std::abs(res.block_mean_n_signal - n_sum), std::abs(res.block_mean_n_idler - n_sum)) /
                             std::max(n_sum, 1e-300);
    out.push_back(at_most("photon_number_trace", trace_dev, 1e-9));
  }

  // Low gain: analytic JSA and first-order transfer function.
  {
    const double sqrt_np = 2.5e-4;
    const RunConfig cfg = parse_config(builtin_config(n, sqrt_np));
    const RunResult res = simulate(cfg, sim);
    const LowGainConfig lg = symmetric_lowgain_config(kappa_optimal(1.0), 10.0, 1.0, sqrt_np * sqrt_np,
                                                      std::sqrt(cfg.waveguide.v_s * cfg.waveguide.v_i));
    const Matrix analytic = lowgain_jsa(lg, res.grid).cast<cplx>();
    std::ostringstream d;
    d << "r_1 = " << res.decomposition.r(0);
    out.push_back(at_most("lowgain_jsa_oracle", normalized_kernel_distance(res.observables.J, analytic), 1e-2, d.str()));
    const Matrix first = first_order_propagator(make_pump_field(cfg), cfg.waveguide, res.grid);
    const Matrix usi = matrix_to_transfer(res.propagator.U_si(), res.grid);
    out.push_back(at_most("first_order_oracle", rel_l2(usi, first), 1e-2));
    out.push_back(at_most("moment_vs_jsa_lowgain", rel_l2(res.observables.M, res.observables.J), 1e-6));
  }

  // Trotter: z-independent limit and SPM self-convergence.
  {
    const int nt = std::min(n, 40);
    const RunConfig cfg = parse_config(builtin_config(nt, 0.4));
    const FrequencyGrid grid(cfg.grid_span, cfg.grid_points);
    const GeneratorAssembler gen(make_pump_field(cfg), cfg.waveguide, grid);
    const double a = cfg.waveguide.ell_min;
    const double b = cfg.waveguide.ell_max;
    const Propagator uni = propagate_uniform(gen.Q(0.0), b - a, a);
    const Propagator tro = propagate_trotter([&](double z) { return gen.Q(z); }, a, b, 16);
    out.push_back(at_most("trotter_uniform_limit", max_abs(tro.U - uni.U), 1e-12));

    Json spm = builtin_config(24, 0.3);
    spm["pump"]["zeta_p"] = 2.0;
    spm["pump"]["z0"] = -2.0;
    const RunConfig sc = parse_config(spm);
    const FrequencyGrid sg(sc.grid_span, sc.grid_points);
    const GeneratorAssembler sgen(make_pump_field(sc), sc.waveguide, sg);
    TrotterOptions topt;
    topt.breakpoints = sgen.breakpoints();
    auto run = [&](int steps) {
      return propagate_trotter([&](double z) { return sgen.Q(z); }, sc.waveguide.ell_min, sc.waveguide.ell_max, steps, topt).U;
    };
    const Matrix u1 = run(16);
    const Matrix u2 = run(32);
    const Matrix ref = run(128);
    const double order = std::log2(max_abs(u1 - ref) / max_abs(u2 - ref));
    out.push_back(at_least("trotter_order_spm", order, 1.9));
  }

  // Pump identities.
  {
    Json j = builtin_config(n, 0.5);
    const RunConfig cfg = parse_config(j);
    const FrequencyGrid grid(cfg.grid_span, cfg.grid_points);
    const PumpField field = make_pump_field(cfg);
    const Vector beta = field.beta(0.0, grid.doubled_nu());
    const double integral = beta.squaredNorm() * grid.delta_omega();
    const double np = cfg.pump.n_photons;
    out.push_back(at_most("pump_beta_norm", std::abs(integral - cfg.pump.hbar_omega_p * np) / np, 1e-4));
    const Vector e0 = field.energy_spectrum(RealVector::Zero(1));
    out.push_back(at_most("pump_energy_dc", std::abs(e0(0) - cfg.pump.hbar_omega_p * np) / np, 1e-8));

    j["pump"]["zeta_p"] = 0.5;
    j["pump"]["z0"] = -5.0;
    const RunConfig sc = parse_config(j);
    const PumpField sfield = make_pump_field(sc);
    const double ref = sfield.beta(sc.waveguide.ell_min, grid.doubled_nu()).squaredNorm();
    double worst = 0.0;
    for (double z : {-2.5, 0.0, 2.5, 5.0})
      worst = std::max(worst, std::abs(sfield.beta(z, grid.doubled_nu()).squaredNorm() - ref) / ref);
    out.push_back(at_most("pump_spm_norm_conservation", worst, 1e-6));
  }
  return out;
}

}  // namespace tbsim
