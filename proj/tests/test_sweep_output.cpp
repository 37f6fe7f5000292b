#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tbsim/error.hpp"
#include "tbsim/output.hpp"
#include "tbsim/pipeline.hpp"
#include "tbsim/sweep.hpp"

using namespace tbsim;
namespace fs = std::filesystem;

namespace {

Json base(int n = 24) {
  Json j = Json::parse(R"({
    "pump": {"sqrt_n_photons": 0.3},
    "waveguide": {"symmetric_gvm": {"kappa": "optimal", "length": 10}, "gamma": 1.0},
    "outputs": {"binary": true, "propagator": true}
  })");
  j["grid"] = {{"span", 4.0}, {"n_points", n}};
  return j;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("sweep values") {
  const auto lin = sweep_values(0.0, 1.0, 5);
  REQUIRE(lin.size() == 5);
  CHECK(lin[2] == doctest::Approx(0.5));
  CHECK(lin.back() == 1.0);
  const auto lg = sweep_values(1e-3, 1e-1, 3, true);
  CHECK(lg[1] == doctest::Approx(1e-2));
  CHECK(sweep_values(0.4, 0.9, 1) == std::vector<double>{0.4});
  CHECK_THROWS_AS(sweep_values(0.0, 1.0, 3, true), ConfigError);
  CHECK_THROWS_AS(sweep_values(0.0, 1.0, 0), ConfigError);
}

TEST_CASE("a one-point sweep matches simulate") {
  const auto rows = run_sweep(base(), {0.3}, 1);
  REQUIRE(rows.size() == 1);
  const RunResult res = simulate(parse_config(base()));
  CHECK(rows[0].r[0] == res.decomposition.r(0));
  CHECK(rows[0].mean_n == res.observables.mean_n_signal);
  CHECK(rows[0].n_photons == doctest::Approx(0.09));
}

TEST_CASE("parallel sweep is ordered and thread-count independent") {
  const std::vector<double> v = {0.1, 0.4, 0.2, 0.3};
  const auto a = run_sweep(base(), v, 1);
  const auto b = run_sweep(base(), v, 3);
  REQUIRE(a.size() == 4);
  for (std::size_t k = 0; k < v.size(); ++k) {
    CHECK(a[k].sqrt_np == v[k]);
    CHECK(a[k].r == b[k].r);
    CHECK(a[k].mean_n == b[k].mean_n);
  }
  CHECK(a[1].r[0] > a[3].r[0]);
}

TEST_CASE("bisection on the mean photon number") {
  const BisectResult r = bisect_mean_n(base(), 0.1, 0.8, 1.0, 0.01);
  CHECK(r.converged);
  CHECK(std::abs(r.row.mean_n - 1.0) <= 0.01);
  CHECK_THROWS_AS(bisect_mean_n(base(), 0.1, 0.2, 1e6), ConfigError);
}

TEST_CASE("run outputs are complete and deterministic") {
  const RunConfig cfg = parse_config(base());
  const RunResult res = simulate(cfg);
  const fs::path d1 = fresh_dir("tbsim_out_a");
  const fs::path d2 = fresh_dir("tbsim_out_b");
  const auto files = write_run_outputs(cfg, res, d1);
  write_run_outputs(cfg, simulate(cfg), d2);
  for (const char* f : {"squeezing.csv", "jsa.csv", "moment.csv", "modes.csv", "jsa.tbsm", "moment.tbsm",
                        "propagator.tbsm", "timing.json", "report.json"}) {
    CHECK(std::find(files.begin(), files.end(), f) != files.end());
    CHECK(fs::exists(d1 / f));
  }
  CHECK(files.back() == "report.json");
  for (const char* f : {"report.json", "squeezing.csv", "jsa.csv", "propagator.tbsm"})
    CHECK(slurp(d1 / f) == slurp(d2 / f));

  const Json rep = Json::parse(slurp(d1 / "report.json"));
  CHECK(rep["config_hash"] == config_hash(cfg.source));
  CHECK(rep["su11"]["pass"] == true);
  CHECK(rep.contains("r"));
  CHECK(slurp(d1 / "jsa.csv").find("# config_hash: " + config_hash(cfg.source)) != std::string::npos);

  const Matrix u = read_tbsm((d1 / "propagator.tbsm").string());
  CHECK(max_abs(u - res.propagator.U) == 0.0);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("zero pump gives a vacuum report") {
  Json j = base();
  j["pump"]["sqrt_n_photons"] = 0.0;
  const RunResult res = simulate(parse_config(j));
  CHECK(res.observables.vacuum);
  CHECK(res.decomposition.r.maxCoeff() == 0.0);
  CHECK(res.observables.mean_n_signal == 0.0);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("pump reference time changes phases only") {
  Json j = base();
  const RunResult a = simulate(parse_config(j));
  j["pump"]["t0"] = 1.3;
  const RunResult b = simulate(parse_config(j));
  CHECK(max_abs(a.decomposition.r - b.decomposition.r) <= 1e-12);
  CHECK(std::abs(a.observables.mean_n_signal - b.observables.mean_n_signal) <= 1e-12);
  CHECK(max_abs(a.observables.J - b.observables.J) > 1e-3);
}
