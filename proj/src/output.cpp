#include "tbsim/output.hpp"

#include <cstdio>
#include <fstream>

#include "tbsim/error.hpp"

namespace tbsim {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void close_out(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("write failed: " + path.string());
}

Json dimension_scales(const UnitSystem& u) {
  return {{"physical", u.physical},
          {"length_m", u.length},
          {"time_s", u.time},
          {"energy_J", u.energy},
          {"frequency_rad_per_s", 1.0 / u.time},
          {"velocity_m_per_s", u.length / u.time}};
}

const char* method_name(SolverMethod m) {
  switch (m) {
    case SolverMethod::kUniform: return "uniform";
    case SolverMethod::kTrotter: return "trotter";
    default: return "auto";
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json make_report(const RunConfig& cfg, const RunResult& res, const std::vector<std::string>& files) {
  const TwinBeamDecomposition& d = res.decomposition;
  const TwinBeamObservables& o = res.observables;
  Json r_list = Json::array();
  for (int l = 0; l < d.occupied_modes(); ++l) r_list.push_back(d.r(l));

  Json report;
  report["schema_version"] = kSchemaVersion;
  report["tool"] = {{"name", "tbsim"}, {"version", kToolVersion}};
  report["config_hash"] = config_hash(cfg.source);
  report["config"] = cfg.source;
  report["units"] = dimension_scales(cfg.units);
  report["grid"] = {{"span", res.grid.span()}, {"n_points", res.grid.size()}, {"delta_omega", res.grid.delta_omega()}};
  report["internal"] = {{"n_photons", cfg.pump.n_photons},
                        {"v_s", cfg.waveguide.v_s},
                        {"v_i", cfg.waveguide.v_i},
                        {"v_p", cfg.waveguide.v_p},
                        {"ell_min", cfg.waveguide.ell_min},
                        {"ell_max", cfg.waveguide.ell_max},
                        {"pump_z0", cfg.pump.z0},
                        {"gamma", {{"re", cfg.waveguide.gamma_delta.real()}, {"im", cfg.waveguide.gamma_delta.imag()}}}};
  report["solver"] = {{"requested", method_name(cfg.solver.method)},
                      {"method", res.solver.method},
                      {"n_steps", res.solver.n_steps},
                      {"adaptive", res.solver.adaptive},
                      {"converged", res.solver.converged},
                      {"last_change", res.solver.last_change},
                      {"dressing", cfg.solver.dressing == DressingConvention::kConsistent ? "consistent" : "as_printed"}};
  report["r"] = r_list;
  report["occupied_modes"] = d.occupied_modes();
  report["mean_n_signal"] = o.mean_n_signal;
  report["mean_n_idler"] = o.mean_n_idler;
  report["schmidt_number"] = o.schmidt_number;
  report["jsa_schmidt_number"] = o.jsa_schmidt_number;
  report["vacuum"] = o.vacuum;
  report["su11"] = {{"group", res.su11.group},
                    {"comm_ss", res.su11.comm_ss},
                    {"comm_ii", res.su11.comm_ii},
                    {"comm_si", res.su11.comm_si},
                    {"tolerance", res.su11.tolerance},
                    {"pass", res.su11.pass}};
  Json checks = {{"block_mean_n_signal", res.block_mean_n_signal}, {"block_mean_n_idler", res.block_mean_n_idler}};
  if (res.has_residuals) {
    checks["reconstruction"] = res.residuals.reconstruction;
    checks["orthonormality"] = res.residuals.orthonormality;
    checks["hyperbolic"] = res.residuals.hyperbolic;
    checks["cosh_sinh"] = res.residuals.cosh_sinh;
    checks["moment_block_formula_transposed"] = res.moment_transpose_residual;
  }
  report["decomposition"] = checks;
  report["warnings"] = res.warnings;
  report["files"] = files;
  return report;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  close_out(out, path);
}

void write_kernel_csv(const fs::path& path, const Matrix& kernel, const FrequencyGrid& grid, const std::string& hash,
                      const std::string& name) {
  std::ofstream out = open_out(path);
  out << "# config_hash: " << hash << "\n# " << name << "(nu_s, nu_i), internal units\n";
  out << "nu_s,nu_i,abs,arg\n";
  for (int k = 0; k < grid.size(); ++k)
    for (int m = 0; m < grid.size(); ++m) {
      const cplx v = kernel(k, m);
      out << format_double(grid.nu(k)) << ',' << format_double(grid.nu(m)) << ',' << format_double(std::abs(v)) << ','
          << format_double(std::arg(v)) << '\n';
    }
  close_out(out, path);
}

namespace {

void write_modes_csv(const fs::path& path, const TwinBeamDecomposition& d, const FrequencyGrid& grid, int count,
                     const std::string& hash) {
  std::ofstream out = open_out(path);
  out << "# config_hash: " << hash << "\n# Schmidt modes, delta_omega * sum |mode|^2 = 1\n";
  out << "nu";
  const char* names[] = {"rho_s", "rho_i", "tau_s", "tau_i"};
  for (int l = 0; l < count; ++l)
    for (const char* n : names) out << ',' << n << '_' << (l + 1) << "_re," << n << '_' << (l + 1) << "_im";
  out << '\n';
  const Matrix* mats[] = {&d.rho_s, &d.rho_i, &d.tau_s, &d.tau_i};
  for (int k = 0; k < grid.size(); ++k) {
    out << format_double(grid.nu(k));
    for (int l = 0; l < count; ++l)
      for (const Matrix* m : mats) out << ',' << format_double((*m)(k, l).real()) << ',' << format_double((*m)(k, l).imag());
    out << '\n';
  }
  close_out(out, path);
}

void write_squeezing_csv(const fs::path& path, const TwinBeamDecomposition& d, const std::string& hash) {
  std::ofstream out = open_out(path);
  out << "# config_hash: " << hash << "\nmode,r,sinh2_r\n";
  for (int l = 0; l < d.size(); ++l) {
    const double s = std::sinh(d.r(l));
    out << (l + 1) << ',' << format_double(d.r(l)) << ',' << format_double(s * s) << '\n';
  }
  close_out(out, path);
}

}  // namespace

std::vector<std::string> write_run_outputs(const RunConfig& cfg, const RunResult& res, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const std::string hash = config_hash(cfg.source);
  std::vector<std::string> files;

  write_squeezing_csv(dir / "squeezing.csv", res.decomposition, hash);
  files.push_back("squeezing.csv");
  if (cfg.outputs.jsa) {
    write_kernel_csv(dir / "jsa.csv", res.observables.J, res.grid, hash, "J");
    files.push_back("jsa.csv");
  }
  if (cfg.outputs.moment) {
    write_kernel_csv(dir / "moment.csv", res.observables.M, res.grid, hash, "M");
    files.push_back("moment.csv");
  }
  const int modes = std::min(cfg.outputs.modes, res.decomposition.size());
  if (modes > 0) {
    write_modes_csv(dir / "modes.csv", res.decomposition, res.grid, modes, hash);
    files.push_back("modes.csv");
  }
  if (cfg.outputs.binary) {
    write_tbsm((dir / "jsa.tbsm").string(), res.observables.J);
    write_tbsm((dir / "moment.tbsm").string(), res.observables.M);
    files.push_back("jsa.tbsm");
    files.push_back("moment.tbsm");
  }
  if (cfg.outputs.propagator) {
    write_tbsm((dir / "propagator.tbsm").string(), res.propagator.U);
    files.push_back("propagator.tbsm");
  }
  write_json(dir / "timing.json", {{"config_hash", hash},
                                   {"seconds_propagate", res.seconds_propagate},
                                   {"seconds_decompose", res.seconds_decompose}});
  files.push_back("timing.json");
  write_json(dir / "report.json", make_report(cfg, res, files));
  files.push_back("report.json");
  return files;
}

}  // namespace tbsim
