#include "tbsim/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "tbsim/error.hpp"
#include "tbsim/expm.hpp"

namespace tbsim {

namespace {

void require_finite(const Matrix& Q, double z) {
  if (!Q.allFinite()) throw NumericalError("generator has non-finite entries at z = " + std::to_string(z));
}

Matrix step_exponential(const Matrix& Q, double dz) { return expm((kI * dz) * Q); }

// Exponentials of previously seen (Q, dz) pairs. dz may differ by rounding
// between nominally equal domains, so it is matched to a relative 1e-13.
class ExpCache {
 public:
  explicit ExpCache(bool enabled) : enabled_(enabled) {}

  const Matrix& get(const Matrix& Q, double dz, int* computed) {
    if (enabled_) {
      for (const auto& e : entries_)
        if (std::abs(e.dz - dz) <= 1e-13 * std::abs(dz) && e.Q.rows() == Q.rows() && e.Q == Q) return e.exp;
    }
    ++*computed;
    entries_.push_front({Q, dz, step_exponential(Q, dz)});
    if (entries_.size() > kCapacity) entries_.pop_back();
    return entries_.front().exp;
  }

 private:
  struct Entry {
    Matrix Q;
    double dz;
    Matrix exp;
  };
  static constexpr std::size_t kCapacity = 4;
  bool enabled_;
  std::deque<Entry> entries_;
};

std::vector<double> interval_points(double z0, double z1, const std::vector<double>& breakpoints) {
  std::vector<double> pts{z0};
  for (double b : breakpoints)
    if (b > z0 && b < z1) pts.push_back(b);
  pts.push_back(z1);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

Propagator propagate_uniform(const Matrix& Q, double length, double z0) {
  if (Q.rows() != Q.cols() || Q.rows() % 2 != 0) throw ConfigError("Q", "must be square with even dimension");
  if (!std::isfinite(length)) throw ConfigError("length", "must be finite");
  require_finite(Q, z0);
  return {step_exponential(Q, length), z0, z0 + length, false};
}

Propagator propagate_uniform(const GeneratorMatrices& Q, double length, double z0) {
  return propagate_uniform(Q.Q, length, z0);
}

Propagator propagate_trotter(const GeneratorSampler& Q_of_z, double z0, double z1, int n_steps,
                             const TrotterOptions& options, TrotterStats* stats) {
  if (n_steps <= 0) throw ConfigError("n_steps", "must be >= 1");
  if (!std::isfinite(z0) || !std::isfinite(z1) || !(z0 < z1)) throw ConfigError("z1", "need finite z0 < z1");

  const std::vector<double> pts = interval_points(z0, z1, options.breakpoints);
  const double h = (z1 - z0) / n_steps;

  ExpCache cache(options.cache);
  TrotterStats local;
  Matrix U;
  Matrix run_Q;
  double run_start = z0;
  double run_end = z0;

  auto flush = [&]() {
    if (run_Q.size() == 0) return;
    const Matrix& e = cache.get(run_Q, run_end - run_start, &local.exponentials);
    U = (U.size() == 0) ? e : Matrix(e * U);
  };

  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double a = pts[k];
    const double b = pts[k + 1];
    const int m = std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-9)));
    const double w = (b - a) / m;
    for (int j = 0; j < m; ++j) {
      const double lo = a + j * w;
      const double hi = (j == m - 1) ? b : a + (j + 1) * w;
      const double mid = a + (j + 0.5) * w;
      Matrix Q = Q_of_z(mid);
      require_finite(Q, mid);
      ++local.slices;
      if (run_Q.size() != 0 && Q.rows() == run_Q.rows() && Q == run_Q) {
        run_end = hi;
        continue;
      }
      flush();
      run_Q = std::move(Q);
      run_start = lo;
      run_end = hi;
    }
  }
  flush();

  if (stats) *stats = local;
  return {std::move(U), z0, z1, false};
}

AdaptiveResult propagate_adaptive(const GeneratorSampler& Q_of_z, double z0, double z1,
                                  const AdaptiveOptions& adaptive, const TrotterOptions& options) {
  if (adaptive.initial_steps <= 0) throw ConfigError("solver.initial_steps", "must be >= 1");
  if (adaptive.max_steps <= 0) throw ConfigError("solver.max_steps", "must be >= 1");
  if (!(adaptive.tolerance > 0.0)) throw ConfigError("solver.tolerance", "must be positive");

  // Start where every breakpoint interval already holds at least one full
  // slice, so each doubling refines all of them.
  const std::vector<double> pts = interval_points(z0, z1, options.breakpoints);
  double shortest = z1 - z0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) shortest = std::min(shortest, pts[k + 1] - pts[k]);
  int n = std::max(adaptive.initial_steps, static_cast<int>(std::ceil((z1 - z0) / shortest - 1e-9)));

  AdaptiveResult result;
  result.propagator = propagate_trotter(Q_of_z, z0, z1, n, options);
  result.n_steps = n;
  while (2 * n <= adaptive.max_steps) {
    n *= 2;
    Propagator finer = propagate_trotter(Q_of_z, z0, z1, n, options);
    result.last_change = max_abs(finer.U - result.propagator.U);
    result.propagator = std::move(finer);
    result.n_steps = n;
    if (result.last_change < adaptive.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

Propagator dress_in_out(const Propagator& prop, const WaveguideSpec& wg, const FrequencyGrid& grid,
                        DressingConvention convention) {
  if (prop.dressed) throw StateError("propagator is already dressed");
  const int n = prop.size();
  if (n != grid.size()) throw ConfigError("grid.n_points", "does not match the propagator dimension");

  Vector out_s(n), out_i(n), in_s(n), in_i(n);
  for (int k = 0; k < n; ++k) {
    const double dks = delta_k(grid.nu(k), wg.v_s, wg.v_p);
    const double dki = delta_k(grid.nu(k), wg.v_i, wg.v_p);
    out_s(k) = std::polar(1.0, -dks * prop.z1);
    out_i(k) = std::polar(1.0, -dki * prop.z1);
    in_s(k) = std::polar(1.0, dks * prop.z0);
    in_i(k) = std::polar(1.0, dki * prop.z0);
  }

  // Physical kernels: U^{ss} row/col phases out_s / in_s, U^{ii} out_i / in_i,
  // U^{si} out_s / conj(in_i), U^{is} out_i / conj(in_s). The lower blocks
  // store conjugated kernels.
  Vector si_row = out_s, si_col = in_i.conjugate();
  Vector is_row = out_i, is_col = in_s.conjugate();
  if (convention == DressingConvention::kAsPrinted) {
    si_row = out_i;
    si_col = in_s.conjugate();
    is_row = out_s;
    is_col = in_i.conjugate();
  }

  Propagator d = prop;
  auto apply = [](Eigen::Block<Matrix> block, const Vector& row, const Vector& col) {
    block = row.asDiagonal() * block * col.asDiagonal();
  };
  apply(d.U.topLeftCorner(n, n), out_s, in_s);
  apply(d.U.topRightCorner(n, n), si_row, si_col);
  apply(d.U.bottomLeftCorner(n, n), is_row.conjugate(), is_col.conjugate());
  apply(d.U.bottomRightCorner(n, n), out_i.conjugate(), in_i.conjugate());
  d.dressed = true;
  return d;
}

double Su11Report::worst() const { return std::max({group, comm_ss, comm_ii, comm_si}); }

Su11Report check_su11(const Matrix& U, double tol) {
  Su11Report rep;
  rep.tolerance = tol;
  if (U.rows() != U.cols() || U.rows() % 2 != 0) throw ConfigError("U", "must be square with even dimension");
  const Eigen::Index n = U.rows() / 2;

  Matrix SUh = U.adjoint();
  SUh.bottomRows(n) *= -1.0;
  Matrix res = U * SUh;
  res.diagonal().head(n).array() -= 1.0;
  res.diagonal().tail(n).array() += 1.0;
  rep.group = max_abs(res);

  const Matrix ss = U.topLeftCorner(n, n);
  const Matrix si = U.topRightCorner(n, n);
  const Matrix is = U.bottomLeftCorner(n, n).conjugate();
  const Matrix ii = U.bottomRightCorner(n, n).conjugate();
  const Matrix ident = Matrix::Identity(n, n);
  rep.comm_ss = max_abs(ss * ss.adjoint() - si * si.adjoint() - ident);
  rep.comm_ii = max_abs(ii * ii.adjoint() - is * is.adjoint() - ident);
  rep.comm_si = max_abs(ss * is.transpose() - si * ii.transpose());

  const double w = rep.worst();
  rep.pass = std::isfinite(w) && w <= tol;
  return rep;
}

Su11Report check_su11(const Propagator& prop, double tol) { return check_su11(prop.U, tol); }

}  // namespace tbsim
