#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tbsim/coupling.hpp"
#include "tbsim/grid.hpp"
#include "tbsim/types.hpp"

namespace tbsim {

/// Spatial propagator U(z1, z0) on the 2N-dimensional (signal, idler^*) space.
///
/// Block layout follows the generator: U = [[U_ss, U_si], [U_is^*, U_ii^*]].
struct Propagator {
  Matrix U;
  double z0 = 0.0;
  double z1 = 0.0;
  bool dressed = false;

  int size() const { return static_cast<int>(U.rows() / 2); }
  Matrix U_ss() const { return U.topLeftCorner(size(), size()); }
  Matrix U_si() const { return U.topRightCorner(size(), size()); }
  Matrix U_is_conj() const { return U.bottomLeftCorner(size(), size()); }
  Matrix U_ii_conj() const { return U.bottomRightCorner(size(), size()); }
};

/// exp(i Q length) for a z-independent generator.
Propagator propagate_uniform(const Matrix& Q, double length, double z0 = 0.0);
Propagator propagate_uniform(const GeneratorMatrices& Q, double length, double z0 = 0.0);

using GeneratorSampler = std::function<Matrix(double)>;

struct TrotterOptions {
  /// Slice boundaries are forced onto these points (those inside (z0, z1)).
  std::vector<double> breakpoints;
  /// Cache exponentials of repeated (Q, dz) pairs; poled waveguides reuse two.
  bool cache = true;
};

struct TrotterStats {
  int slices = 0;
  int exponentials = 0;
};

/// Midpoint product prod_p exp(i dz_p Q(z_p)), later slices multiplied on the left.
///
/// n_steps nominal slices of equal width are distributed over the intervals
/// between breakpoints (at least one per interval). Consecutive slices with
/// identical Q are merged into one exponential.
Propagator propagate_trotter(const GeneratorSampler& Q_of_z, double z0, double z1, int n_steps,
                             const TrotterOptions& options = {}, TrotterStats* stats = nullptr);

struct AdaptiveOptions {
  double tolerance = 1e-8;
  int max_steps = 4096;
  int initial_steps = 1;
};

struct AdaptiveResult {
  Propagator propagator;
  int n_steps = 0;
  double last_change = 0.0;
  bool converged = false;
};

/// Doubles n_steps until max|U_2n - U_n| < tolerance or max_steps is reached.
AdaptiveResult propagate_adaptive(const GeneratorSampler& Q_of_z, double z0, double z1,
                                  const AdaptiveOptions& adaptive = {}, const TrotterOptions& options = {});

enum class DressingConvention {
  /// Phases derived from a_l^(in/out) = exp(-i dk_l z0/z1) a_l(z0/z1).
  kConsistent,
  /// Cross-block phases exactly as the formula is usually printed (signal and idler swapped).
  kAsPrinted,
};

/// Converts U(z1, z0) into input/output transfer functions by diagonal phase factors.
/// Throws StateError if already dressed.
Propagator dress_in_out(const Propagator& prop, const WaveguideSpec& wg, const FrequencyGrid& grid,
                        DressingConvention convention = DressingConvention::kConsistent);

struct Su11Report {
  double group = 0.0;    ///< max|U S U^H - S|
  double comm_ss = 0.0;  ///< max|U_ss U_ss^H - U_si U_si^H - I|
  double comm_ii = 0.0;  ///< max|U_ii U_ii^H - U_is U_is^H - I|
  double comm_si = 0.0;  ///< max|U_ss U_is^T - U_si U_ii^T|
  double tolerance = 0.0;
  bool pass = false;

  double worst() const;
};

Su11Report check_su11(const Propagator& prop, double tol = 1e-10);
Su11Report check_su11(const Matrix& U, double tol = 1e-10);

/// Row-major little-endian dump: "TBSM", u32 version, u32 rows, u32 cols, then (re, im) float64 pairs.
void write_tbsm(const std::string& path, const Matrix& m);
Matrix read_tbsm(const std::string& path);

}  // namespace tbsim
