#include "tbsim/pipeline.hpp"

#include <chrono>

#include "tbsim/coupling.hpp"
#include "tbsim/error.hpp"

namespace tbsim {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

PumpField make_pump_field(const RunConfig& cfg) {
  if (cfg.envelope) return PumpField::sampled(cfg.pump, cfg.envelope->z, cfg.envelope->values);
  return PumpField::gaussian(cfg.pump, cfg.sampling);
}

RunResult simulate(const RunConfig& cfg, const SimulateOptions& options) {
  RunResult out;
  out.grid = FrequencyGrid(cfg.grid_span, cfg.grid_points);
  PumpField field = make_pump_field(cfg);
  out.warnings = field.warnings();
  const GeneratorAssembler gen(std::move(field), cfg.waveguide, out.grid);
  const double a = cfg.waveguide.ell_min;
  const double b = cfg.waveguide.ell_max;

  const bool uniform_ok = gen.z_independent();
  SolverMethod method = cfg.solver.method;
  if (method == SolverMethod::kAuto) method = uniform_ok ? SolverMethod::kUniform : SolverMethod::kTrotter;
  if (method == SolverMethod::kUniform && !uniform_ok)
    throw ConfigError("solver.method",
                      "uniform solver needs zeta_p = 0 and single-segment profiles over [ell_min, ell_max]");

  const auto t0 = std::chrono::steady_clock::now();
  Propagator raw;
  if (method == SolverMethod::kUniform) {
    out.solver.method = "uniform";
    raw = propagate_uniform(gen.Q(0.5 * (a + b)), b - a, a);
  } else {
    out.solver.method = "trotter";
    const GeneratorSampler sampler = [&gen](double z) { return gen.Q(z); };
    TrotterOptions topt;
    topt.breakpoints = gen.breakpoints();
    if (cfg.solver.adaptive) {
      AdaptiveOptions aopt;
      aopt.tolerance = cfg.solver.tolerance;
      aopt.max_steps = cfg.solver.max_steps;
      AdaptiveResult res = propagate_adaptive(sampler, a, b, aopt, topt);
      raw = std::move(res.propagator);
      out.solver.adaptive = true;
      out.solver.n_steps = res.n_steps;
      out.solver.converged = res.converged;
      out.solver.last_change = res.last_change;
      if (!res.converged)
        out.warnings.push_back("adaptive Trotter stopped at " + std::to_string(res.n_steps) +
                               " steps with change " + std::to_string(res.last_change));
    } else {
      raw = propagate_trotter(sampler, a, b, cfg.solver.n_steps, topt);
      out.solver.n_steps = cfg.solver.n_steps;
    }
  }
  out.propagator = dress_in_out(raw, cfg.waveguide, out.grid, cfg.solver.dressing);
  out.seconds_propagate = seconds_since(t0);

  const auto t1 = std::chrono::steady_clock::now();
  out.su11 = check_su11(out.propagator, 1e-10);
  if (!out.su11.pass)
    out.warnings.push_back("SU(1,1) residual " + std::to_string(out.su11.worst()) + " exceeds 1e-10");
  const double dw = out.grid.delta_omega();
  out.decomposition = schmidt_decompose(out.propagator, dw * options.delta_omega_factor);
  out.observables = observables(out.decomposition);
  const auto [ns, ni] = mean_photon_numbers(out.propagator);
  out.block_mean_n_signal = ns;
  out.block_mean_n_idler = ni;
  if (options.residuals) {
    out.has_residuals = true;
    out.residuals = decomposition_residuals(out.decomposition, out.propagator, dw);
    const Matrix m_blocks = moment_matrix(out.propagator, dw);
    const Matrix m_printed = moment_matrix_block_formula(out.propagator, dw);
    const double scale = std::max(max_abs(m_blocks), 1e-300);
    out.moment_transpose_residual = max_abs(Matrix(m_printed.transpose()) - m_blocks) / scale;
  }
  out.seconds_decompose = seconds_since(t1);
  return out;
}

}  // namespace tbsim
