#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tbsim/config.hpp"
#include "tbsim/coupling.hpp"
#include "tbsim/error.hpp"
#include "tbsim/output.hpp"
#include "tbsim/pipeline.hpp"
#include "tbsim/sweep.hpp"
#include "tbsim/units.hpp"
#include "tbsim/validate.hpp"

namespace fs = std::filesystem;
using tbsim::Json;

namespace {

enum ExitCode { kOk = 0, kValidateFailed = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

int fail(const char* kind, const std::string& message, int code, const std::string& field = {}) {
  Json err = {{"error", {{"kind", kind}, {"message", message}}}};
  if (!field.empty()) err["error"]["field"] = field;
  std::cerr << err.dump() << '\n';
  return code;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
  const tbsim::RunConfig cfg = tbsim::load_config(config_path);
  const tbsim::RunResult res = tbsim::simulate(cfg);
  tbsim::write_run_outputs(cfg, res, out_dir);
  std::cout << "r_1 = " << tbsim::format_double(res.decomposition.size() ? res.decomposition.r(0) : 0.0)
            << "  <N> = " << tbsim::format_double(res.observables.mean_n_signal)
            << "  K = " << tbsim::format_double(res.observables.schmidt_number)
            << "  su11 = " << res.su11.worst() << "  -> " << (fs::path(out_dir) / "report.json").string() << '\n';
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
  return kOk;
}

struct SweepArgs {
  std::string config;
  std::string param = "sqrt_np";
  double from = 0.0;
  double to = 0.0;
  int points = 2;
  bool log = false;
  double target = -1.0;
  std::string out = ".";
};

int cmd_sweep(const SweepArgs& a) {
  if (a.param != "sqrt_np") throw tbsim::ConfigError("param", "only sqrt_np can be swept");
  const Json base = tbsim::read_json_file(a.config);
  tbsim::parse_config(base);
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw tbsim::IoError("cannot create " + a.out + ": " + ec.message());
  const std::string hash = tbsim::config_hash(base);

  if (a.target > 0.0) {
    const tbsim::BisectResult b = tbsim::bisect_mean_n(base, a.from, a.to, a.target);
    const Json j = {{"config_hash", hash},
                    {"target_mean_n", a.target},
                    {"sqrt_np", b.row.sqrt_np},
                    {"n_photons", b.row.n_photons},
                    {"mean_n", b.row.mean_n},
                    {"r", b.row.r},
                    {"schmidt_number", b.row.schmidt_number},
                    {"jsa_schmidt_number", b.row.jsa_schmidt_number},
                    {"evaluations", b.evaluations},
                    {"converged", b.converged}};
    tbsim::write_json(fs::path(a.out) / "bisect.json", j);
    std::cout << j.dump(2) << '\n';
    return b.converged ? kOk : kNumerical;
  }

  const auto values = tbsim::sweep_values(a.from, a.to, a.points, a.log);
  const auto rows = tbsim::run_sweep(base, values);
  const fs::path csv = fs::path(a.out) / "sweep.csv";
  tbsim::write_sweep_csv(csv, rows, hash);
  std::cout << "wrote " << rows.size() << " rows to " << csv.string() << '\n';
  return kOk;
}

int cmd_validate(const std::string& suite, bool inject) {
  if (suite != "fast" && suite != "full") throw tbsim::ConfigError("suite", "expected fast or full");
  tbsim::ValidateOptions opt;
  opt.full = suite == "full";
  opt.inject_delta_omega_fault = inject;
  bool ok = true;
  for (const auto& c : tbsim::run_validation(opt)) {
    ok = ok && c.pass;
    std::printf("%-4s %-32s %.3e (limit %.1e)%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.threshold,
                c.detail.empty() ? "" : "  ", c.detail.c_str());
  }
  return ok ? kOk : kValidateFailed;
}

double require(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw tbsim::ConfigError(key, "missing or not a number");
  return j.at(key).get<double>();
}

int cmd_estimate(const std::string& path) {
  const Json j = tbsim::read_json_file(path);
  constexpr double kC = 299792458.0;
  tbsim::PhysicalWaveguide p;
  p.area = require(j, "area");
  p.refractive_index = require(j, "refractive_index");
  auto beam = [&](const std::string& name, double& v_g, double& omega) {
    const std::string vg = "v_g_" + name;
    const std::string om = "omega_" + name;
    v_g = j.contains(vg) ? require(j, vg.c_str()) : kC / require(j, ("group_index_" + name).c_str());
    omega = j.contains(om) ? require(j, om.c_str()) : 2.0 * tbsim::kPi * kC / require(j, ("wavelength_" + name).c_str());
  };
  beam("p", p.v_g_p, p.omega_p);
  beam("s", p.v_g_s, p.omega_s);
  beam("i", p.v_g_i, p.omega_i);
  p.chi2 = j.value("chi2", 0.0);
  p.chi3 = j.value("chi3", 0.0);
  const tbsim::CouplingEstimate e = tbsim::estimate_gamma(p);
  Json out = {{"units", "SI"},
              {"d_p", e.d_p},
              {"d_s", e.d_s},
              {"d_i", e.d_i},
              {"xi1", e.xi1},
              {"gamma1", e.gamma1},
              {"xi2", e.xi2},
              {"gamma2", e.gamma2},
              {"zeta_p", e.zeta_p},
              {"zeta_s", e.zeta_s},
              {"zeta_i", e.zeta_i},
              {"gamma_xpm_s", e.gamma_xpm_s},
              {"gamma_xpm_i", e.gamma_xpm_i}};
  if (j.contains("sigma")) {
    constexpr double kHbar = 1.054571817e-34;
    const auto us = tbsim::UnitSystem::from_pump(require(j, "sigma"), p.v_g_p, kHbar * p.omega_p);
    out["internal"] = {{"gamma1", us.to_internal(e.gamma1, tbsim::dims::kGammaSpdc)},
                       {"gamma2", us.to_internal(e.gamma2, tbsim::dims::kGammaSfwm)},
                       {"zeta_p", us.to_internal(e.zeta_p, tbsim::dims::kZeta)},
                       {"gamma_xpm_s", us.to_internal(e.gamma_xpm_s, tbsim::dims::kGammaXpm)},
                       {"gamma_xpm_i", us.to_internal(e.gamma_xpm_i, tbsim::dims::kGammaXpm)}};
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twin-beam generation in nonlinear waveguides"};
  app.set_version_flag("--version", std::string(tbsim::kToolVersion));
  app.require_subcommand(1);

  std::string sim_config;
  std::string sim_out = ".";
  auto* sim = app.add_subcommand("simulate", "Run one configuration");
  sim->add_option("config", sim_config, "Config JSON")->required();
  sim->add_option("--out", sim_out, "Output directory");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Sweep sqrt(N_p), or bisect to a target mean photon number");
  sweep->add_option("config", sw.config, "Config JSON")->required();
  sweep->add_option("--param", sw.param, "Swept parameter (sqrt_np)");
  sweep->add_option("--from", sw.from, "Start value")->required();
  sweep->add_option("--to", sw.to, "End value")->required();
  sweep->add_option("--points", sw.points, "Number of points");
  sweep->add_flag("--log", sw.log, "Logarithmic spacing");
  sweep->add_option("--target-mean-n", sw.target, "Bisect in [from, to] for this mean photon number");
  sweep->add_option("--out", sw.out, "Output directory");

  std::string suite = "fast";
  bool inject = false;
  auto* val = app.add_subcommand("validate", "Run the built-in invariant suite");
  val->add_option("--suite", suite, "fast or full");
  val->add_flag("--inject-delta-omega-fault", inject, "Test hook: corrupt the grid spacing used for normalization");

  std::string est_path;
  auto* est = app.add_subcommand("estimate", "Flat-mode coupling estimate from physical parameters");
  est->add_option("params", est_path, "Parameters JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what(), kConfig);
  }

  try {
    if (*sim) return cmd_simulate(sim_config, sim_out);
    if (*sweep) return cmd_sweep(sw);
    if (*val) return cmd_validate(suite, inject);
    if (*est) return cmd_estimate(est_path);
  } catch (const tbsim::ConfigError& e) {
    return fail("config", e.what(), kConfig, e.field());
  } catch (const tbsim::StateError& e) {
    return fail("state", e.what(), kNumerical);
  } catch (const tbsim::NumericalError& e) {
    return fail("numerical", e.what(), kNumerical);
  } catch (const tbsim::IoError& e) {
    return fail("io", e.what(), kIo);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kNumerical);
  }
  return kOk;
}
