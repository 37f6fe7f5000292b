#include "tbsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "tbsim/error.hpp"
#include "tbsim/output.hpp"
#include "tbsim/pipeline.hpp"

namespace tbsim {

std::vector<double> sweep_values(double from, double to, int points, bool log_spacing) {
  if (points < 1) throw ConfigError("points", "must be >= 1");
  if (!std::isfinite(from) || !std::isfinite(to) || from < 0.0 || to < 0.0)
    throw ConfigError("from", "sqrt_np range must be finite and >= 0");
  if (points > 1 && !(from < to)) throw ConfigError("to", "range must be increasing");
  if (log_spacing && !(from > 0.0)) throw ConfigError("from", "log spacing needs from > 0");
  std::vector<double> v(points);
  for (int k = 0; k < points; ++k) {
    const double t = (points == 1) ? 0.0 : static_cast<double>(k) / (points - 1);
    v[k] = log_spacing ? from * std::pow(to / from, t) : from + t * (to - from);
  }
  if (points > 1) v.back() = to;
  return v;
}

int worker_count() {
  if (const char* env = std::getenv("TBSIM_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepRow sweep_point(const Json& base, double sqrt_np) {
  const RunConfig cfg = parse_config(with_sqrt_np(base, sqrt_np));
  SimulateOptions opt;
  opt.residuals = false;
  const RunResult res = simulate(cfg, opt);
  SweepRow row;
  row.sqrt_np = sqrt_np;
  row.n_photons = cfg.pump.n_photons;
  for (int l = 0; l < 4 && l < res.decomposition.size(); ++l) row.r[l] = res.decomposition.r(l);
  row.mean_n = res.observables.mean_n_signal;
  row.schmidt_number = res.observables.schmidt_number;
  row.jsa_schmidt_number = res.observables.jsa_schmidt_number;
  return row;
}

std::vector<SweepRow> run_sweep(const Json& base, const std::vector<double>& values, int threads) {
  if (threads <= 0) threads = worker_count();
  threads = std::min<int>(threads, static_cast<int>(values.size()));
  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&]() {
    Eigen::setNbThreads(1);
    for (std::size_t k = next++; k < values.size(); k = next++) {
      try {
        rows[k] = sweep_point(base, values[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows, const std::string& hash) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "# config_hash: " << hash << '\n';
  out << "sqrt_np,n_photons,r_1,r_2,r_3,r_4,mean_n,schmidt_number,jsa_schmidt_number\n";
  for (const auto& row : rows) {
    out << format_double(row.sqrt_np) << ',' << format_double(row.n_photons);
    for (double r : row.r) out << ',' << format_double(r);
    out << ',' << format_double(row.mean_n) << ',' << format_double(row.schmidt_number) << ','
        << format_double(row.jsa_schmidt_number) << '\n';
  }
  out.close();
  if (!out) throw IoError("write failed: " + path.string());
}

BisectResult bisect_mean_n(const Json& base, double lo, double hi, double target, double tolerance,
                           int max_iterations) {
  if (!(lo >= 0.0) || !(hi > lo)) throw ConfigError("from", "bisection needs 0 <= from < to");
  if (!(target > 0.0)) throw ConfigError("target_mean_n", "must be positive");
  BisectResult out;
  SweepRow a = sweep_point(base, lo);
  SweepRow b = sweep_point(base, hi);
  out.evaluations = 2;
  if (a.mean_n > target || b.mean_n < target)
    throw ConfigError("to", "range [" + format_double(lo) + ", " + format_double(hi) + "] gives mean_n in [" +
                                format_double(a.mean_n) + ", " + format_double(b.mean_n) + "], not bracketing " +
                                format_double(target));
  out.row = (target - a.mean_n < b.mean_n - target) ? a : b;
  for (int it = 0; it < max_iterations; ++it) {
    if (std::abs(out.row.mean_n - target) <= tolerance) {
      out.converged = true;
      break;
    }
    const double mid = 0.5 * (a.sqrt_np + b.sqrt_np);
    SweepRow m = sweep_point(base, mid);
    ++out.evaluations;
    (m.mean_n < target ? a : b) = m;
    out.row = m;
  }
  return out;
}

}  // namespace tbsim
