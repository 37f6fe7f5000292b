#pragma once

#include <string>
#include <vector>

#include "tbsim/config.hpp"
#include "tbsim/decompose.hpp"
#include "tbsim/grid.hpp"
#include "tbsim/propagator.hpp"

namespace tbsim {

struct SolverInfo {
  std::string method;  ///< "uniform" or "trotter"
  int n_steps = 1;
  bool adaptive = false;
  bool converged = true;
  double last_change = 0.0;
};

struct RunResult {
  FrequencyGrid grid{1.0, 2};
  Propagator propagator;  ///< dressed
  Su11Report su11;
  TwinBeamDecomposition decomposition;
  TwinBeamObservables observables;
  bool has_residuals = false;
  DecompositionResiduals residuals;
  double moment_transpose_residual = 0.0;  ///< max|M_block^T - M| / max|M|
  double block_mean_n_signal = 0.0;
  double block_mean_n_idler = 0.0;
  SolverInfo solver;
  std::vector<std::string> warnings;
  double seconds_propagate = 0.0;
  double seconds_decompose = 0.0;
};

struct SimulateOptions {
  bool residuals = true;
  /// Test hook: the decomposition is normalized with delta_omega times this factor.
  double delta_omega_factor = 1.0;
};

PumpField make_pump_field(const RunConfig& cfg);

/// Full pipeline: generator, propagator, dressing, SU(1,1) check, decomposition, observables.
RunResult simulate(const RunConfig& cfg, const SimulateOptions& options = {});

}  // namespace tbsim
