#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "tbsim/coupling.hpp"
#include "tbsim/propagator.hpp"
#include "tbsim/pump.hpp"
#include "tbsim/units.hpp"

namespace tbsim {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class SolverMethod { kAuto, kUniform, kTrotter };

struct SolverConfig {
  SolverMethod method = SolverMethod::kAuto;
  bool adaptive = true;  ///< Trotter only; otherwise n_steps is used
  int n_steps = 0;
  double tolerance = 1e-8;
  int max_steps = 4096;
  DressingConvention dressing = DressingConvention::kConsistent;
};

struct OutputConfig {
  bool jsa = true;
  bool moment = true;
  int modes = 4;  ///< number of Schmidt modes written to modes.csv (0: none)
  bool propagator = false;  ///< TBSM dump of the dressed U
  bool binary = false;      ///< TBSM dumps of J and M
};

struct SampledEnvelope {
  RealVector z;
  Vector values;
};

/// Fully parsed run configuration in internal (dimensionless) units.
struct RunConfig {
  PumpSpec pump;
  EnvelopeSampling sampling;
  std::optional<SampledEnvelope> envelope;
  WaveguideSpec waveguide;
  double grid_span = 4.0;
  int grid_points = 200;
  SolverConfig solver;
  OutputConfig outputs;
  UnitSystem units;
  Json source;  ///< the configuration as given
};

RunConfig parse_config(const Json& j);
/// Reads and parses a file. Malformed JSON raises ConfigError naming the byte offset.
RunConfig load_config(const std::string& path);
Json read_json_file(const std::string& path);

/// FNV-1a 64 of the canonical (sorted-key, compact) dump, as 16 hex digits.
std::string config_hash(const Json& j);

/// Copy of `j` with pump.sqrt_n_photons set and any pump.n_photons removed.
Json with_sqrt_np(const Json& j, double sqrt_np);

}  // namespace tbsim
