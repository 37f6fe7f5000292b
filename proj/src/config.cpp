#include "tbsim/config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "tbsim/analytic.hpp"
#include "tbsim/error.hpp"

namespace tbsim {

namespace {

bool is_tagged(const Json& j) { return j.is_object() && j.contains("unit"); }

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

void check_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where.empty() ? "config" : where, "must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!ok.count(key) && key.rfind('_', 0) != 0) throw ConfigError(join(where, key), "unknown key");
}

class Parser {
 public:
  explicit Parser(const Json& root) : root_(root) {}

  RunConfig parse();

 private:
  double number(const Json& j, const std::string& field) const {
    if (!j.is_number()) throw ConfigError(field, "must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    return v;
  }

  int integer(const Json& j, const std::string& field) const {
    if (!j.is_number_integer()) throw ConfigError(field, "must be an integer");
    return j.get<int>();
  }

  bool boolean(const Json& j, const std::string& field) const {
    if (!j.is_boolean()) throw ConfigError(field, "must be true or false");
    return j.get<bool>();
  }

  std::string string(const Json& j, const std::string& field) const {
    if (!j.is_string()) throw ConfigError(field, "must be a string");
    return j.get<std::string>();
  }

  double unit_scale(const Json& j, const std::string& field, const Dimension& dim) const {
    const Unit u = parse_unit(string(j.at("unit"), field + ".unit"), field + ".unit");
    if (!(u.dim == dim)) throw ConfigError(field, "unit has dimension " + u.dim.str() + ", expected " + dim.str());
    if (!units_.physical)
      throw ConfigError(field, "unit-tagged values need pump.sigma, pump.v_p and pump.hbar_omega_p with units");
    return u.factor / units_.scale(dim);
  }

  // Plain number (internal units) or {"value": x, "unit": "..."}.
  double quantity(const Json& j, const std::string& field, const Dimension& dim) const {
    if (j.is_number()) return number(j, field);
    if (is_tagged(j)) {
      check_keys(j, field, {"value", "unit"});
      if (!j.contains("value")) throw ConfigError(field + ".value", "missing");
      return number(j.at("value"), field + ".value") * unit_scale(j, field, dim);
    }
    throw ConfigError(field, "must be a number or {\"value\", \"unit\"}");
  }

  cplx complex_number(const Json& j, const std::string& field) const {
    if (j.is_number()) return number(j, field);
    if (j.is_object() && !j.contains("unit")) {
      check_keys(j, field, {"re", "im"});
      const double re = j.contains("re") ? number(j.at("re"), field + ".re") : 0.0;
      const double im = j.contains("im") ? number(j.at("im"), field + ".im") : 0.0;
      return {re, im};
    }
    throw ConfigError(field, "must be a number or {\"re\", \"im\"}");
  }

  cplx complex_quantity(const Json& j, const std::string& field, const Dimension& dim) const {
    if (is_tagged(j)) {
      check_keys(j, field, {"value", "unit"});
      if (!j.contains("value")) throw ConfigError(field + ".value", "missing");
      return complex_number(j.at("value"), field + ".value") * unit_scale(j, field, dim);
    }
    return complex_number(j, field);
  }

  double position(const Json& j, const std::string& field, double unit_factor) const {
    if (j.is_number()) return number(j, field) * unit_factor;
    return quantity(j, field, dims::kLength);
  }

  // "uniform" | "off" | {"poling_period": L} | {"segments": [...], "unit": "mm"}.
  PiecewiseProfile profile(const Json& j, const std::string& field, double a, double b) const {
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      if (s == "uniform") return PiecewiseProfile::constant(a, b, 1.0);
      if (s == "off") return PiecewiseProfile();
      throw ConfigError(field, "expected \"uniform\", \"off\" or an object");
    }
    check_keys(j, field, {"poling_period", "segments", "unit"});
    if (j.contains("poling_period")) {
      if (j.contains("segments")) throw ConfigError(field, "give either poling_period or segments");
      const double period = quantity(j.at("poling_period"), field + ".poling_period", dims::kLength);
      return PiecewiseProfile::periodic_poling(a, b, period);
    }
    if (!j.contains("segments") || !j.at("segments").is_array())
      throw ConfigError(field + ".segments", "must be an array");
    double factor = 1.0;
    if (j.contains("unit")) {
      const std::string f = field + ".unit";
      const Unit u = parse_unit(string(j.at("unit"), f), f);
      if (!(u.dim == dims::kLength)) throw ConfigError(f, "must be a length unit");
      if (!units_.physical) throw ConfigError(f, "unit-tagged values need pump.sigma, pump.v_p and pump.hbar_omega_p with units");
      factor = u.factor / units_.length;
    }
    std::vector<Segment> segs;
    const auto& arr = j.at("segments");
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string f = field + ".segments[" + std::to_string(k) + "]";
      check_keys(arr[k], f, {"z_start", "z_end", "value"});
      for (const char* key : {"z_start", "z_end", "value"})
        if (!arr[k].contains(key)) throw ConfigError(f + "." + key, "missing");
      segs.push_back({position(arr[k].at("z_start"), f + ".z_start", factor),
                      position(arr[k].at("z_end"), f + ".z_end", factor), number(arr[k].at("value"), f + ".value")});
    }
    try {
      return PiecewiseProfile(std::move(segs));
    } catch (const ConfigError& e) {
      throw ConfigError(field, e.what());
    }
  }

  void parse_units();
  void parse_region(RunConfig& cfg);
  void parse_pump(RunConfig& cfg);
  void parse_waveguide(RunConfig& cfg);
  void parse_grid(RunConfig& cfg);
  void parse_solver(RunConfig& cfg);
  void parse_outputs(RunConfig& cfg);

  const Json& root_;
  UnitSystem units_;
};

void Parser::parse_units() {
  const Json& p = root_.at("pump");
  const bool s = p.contains("sigma") && is_tagged(p.at("sigma"));
  const bool v = p.contains("v_p") && is_tagged(p.at("v_p"));
  const bool e = p.contains("hbar_omega_p") && is_tagged(p.at("hbar_omega_p"));
  if (!(s || v || e)) return;
  if (!(s && v && e))
    throw ConfigError("pump", "sigma, v_p and hbar_omega_p must all carry units or all be plain numbers");
  auto si = [&](const char* key, const Dimension& dim) {
    const std::string f = std::string("pump.") + key;
    const Json& q = p.at(key);
    check_keys(q, f, {"value", "unit"});
    const Unit u = parse_unit(string(q.at("unit"), f + ".unit"), f + ".unit");
    if (!(u.dim == dim)) throw ConfigError(f, "unit has dimension " + u.dim.str() + ", expected " + dim.str());
    if (!q.contains("value")) throw ConfigError(f + ".value", "missing");
    return number(q.at("value"), f + ".value") * u.factor;
  };
  units_ = UnitSystem::from_pump(si("sigma", dims::kFrequency), si("v_p", dims::kVelocity),
                                 si("hbar_omega_p", dims::kEnergy));
}

void Parser::parse_region(RunConfig& cfg) {
  const Json& w = root_.at("waveguide");
  WaveguideSpec& wg = cfg.waveguide;
  if (w.contains("symmetric_gvm")) {
    const std::string f = "waveguide.symmetric_gvm";
    const Json& s = w.at("symmetric_gvm");
    check_keys(s, f, {"kappa", "length", "center"});
    for (const char* key : {"v_s", "v_i", "ell_min", "ell_max"})
      if (w.contains(key)) throw ConfigError(std::string("waveguide.") + key, "conflicts with symmetric_gvm");
    if (!s.contains("kappa")) throw ConfigError(f + ".kappa", "missing");
    if (!s.contains("length")) throw ConfigError(f + ".length", "missing");
    const double ell = quantity(s.at("length"), f + ".length", dims::kLength);
    double kappa = 0.0;
    if (s.at("kappa").is_string()) {
      if (s.at("kappa").get<std::string>() != "optimal") throw ConfigError(f + ".kappa", "expected \"optimal\" or a time");
      kappa = kappa_optimal(cfg.pump.sigma);
    } else {
      kappa = quantity(s.at("kappa"), f + ".kappa", dims::kTime);
    }
    const double center = s.contains("center") ? quantity(s.at("center"), f + ".center", dims::kLength) : 0.0;
    const WaveguideSpec sym = symmetric_gvm_waveguide(kappa, ell, cfg.pump.v_p, 1.0);
    wg.v_s = sym.v_s;
    wg.v_i = sym.v_i;
    wg.ell_min = center + sym.ell_min;
    wg.ell_max = center + sym.ell_max;
    return;
  }
  for (const char* key : {"v_s", "v_i", "ell_min", "ell_max"})
    if (!w.contains(key)) throw ConfigError(std::string("waveguide.") + key, "missing (or give symmetric_gvm)");
  wg.v_s = quantity(w.at("v_s"), "waveguide.v_s", dims::kVelocity);
  wg.v_i = quantity(w.at("v_i"), "waveguide.v_i", dims::kVelocity);
  wg.ell_min = quantity(w.at("ell_min"), "waveguide.ell_min", dims::kLength);
  wg.ell_max = quantity(w.at("ell_max"), "waveguide.ell_max", dims::kLength);
  if (!(wg.ell_min < wg.ell_max)) throw ConfigError("waveguide.ell_max", "must exceed ell_min");
}

void Parser::parse_pump(RunConfig& cfg) {
  const Json& p = root_.at("pump");
  check_keys(p, "pump", {"n_photons", "sqrt_n_photons", "sigma", "v_p", "hbar_omega_p", "z0", "t0", "delta", "zeta_p",
                         "envelope"});
  PumpSpec& s = cfg.pump;
  if (p.contains("n_photons") == p.contains("sqrt_n_photons"))
    throw ConfigError("pump.n_photons", "give exactly one of n_photons, sqrt_n_photons");
  if (p.contains("n_photons")) {
    s.n_photons = number(p.at("n_photons"), "pump.n_photons");
  } else {
    const double r = number(p.at("sqrt_n_photons"), "pump.sqrt_n_photons");
    if (r < 0.0) throw ConfigError("pump.sqrt_n_photons", "must be >= 0");
    s.n_photons = r * r;
  }
  if (s.n_photons < 0.0) throw ConfigError("pump.n_photons", "must be >= 0");
  if (units_.physical) {
    s.sigma = 1.0;
    s.v_p = 1.0;
    s.hbar_omega_p = 1.0;
  } else {
    if (p.contains("sigma")) s.sigma = number(p.at("sigma"), "pump.sigma");
    if (p.contains("v_p")) s.v_p = number(p.at("v_p"), "pump.v_p");
    if (p.contains("hbar_omega_p")) s.hbar_omega_p = number(p.at("hbar_omega_p"), "pump.hbar_omega_p");
  }
  if (p.contains("t0")) s.t0 = quantity(p.at("t0"), "pump.t0", dims::kTime);
  if (p.contains("delta")) s.delta = integer(p.at("delta"), "pump.delta");
  s.validate();
}

void Parser::parse_waveguide(RunConfig& cfg) {
  const Json& w = root_.at("waveguide");
  check_keys(w, "waveguide", {"v_s", "v_i", "v_p", "ell_min", "ell_max", "symmetric_gvm", "gamma", "g_profile",
                              "gamma_xpm_s", "gamma_xpm_i", "h_s_profile", "h_i_profile", "carriers"});
  WaveguideSpec& wg = cfg.waveguide;
  wg.v_p = cfg.pump.v_p;
  if (w.contains("v_p")) {
    const double v = quantity(w.at("v_p"), "waveguide.v_p", dims::kVelocity);
    if (std::abs(v - wg.v_p) > 1e-12 * wg.v_p) throw ConfigError("waveguide.v_p", "differs from pump.v_p");
  }
  parse_region(cfg);
  const double a = wg.ell_min;
  const double b = wg.ell_max;
  wg.delta = cfg.pump.delta;

  const Dimension gamma_dim = (wg.delta == 1) ? dims::kGammaSpdc : dims::kGammaSfwm;
  if (!w.contains("gamma")) throw ConfigError("waveguide.gamma", "missing");
  wg.gamma_delta = complex_quantity(w.at("gamma"), "waveguide.gamma", gamma_dim);
  wg.g_profile = w.contains("g_profile") ? profile(w.at("g_profile"), "waveguide.g_profile", a, b)
                                         : PiecewiseProfile::constant(a, b, 1.0);
  if (w.contains("gamma_xpm_s")) wg.gamma_xpm_s = quantity(w.at("gamma_xpm_s"), "waveguide.gamma_xpm_s", dims::kGammaXpm);
  if (w.contains("gamma_xpm_i")) wg.gamma_xpm_i = quantity(w.at("gamma_xpm_i"), "waveguide.gamma_xpm_i", dims::kGammaXpm);
  wg.h_s_profile = w.contains("h_s_profile") ? profile(w.at("h_s_profile"), "waveguide.h_s_profile", a, b)
                                             : PiecewiseProfile::constant(a, b, 1.0);
  wg.h_i_profile = w.contains("h_i_profile") ? profile(w.at("h_i_profile"), "waveguide.h_i_profile", a, b)
                                             : PiecewiseProfile::constant(a, b, 1.0);

  if (w.contains("carriers")) {
    const Json& c = w.at("carriers");
    check_keys(c, "waveguide.carriers", {"omega_s", "omega_i", "omega_p", "k_s", "k_i", "k_p"});
    auto opt = [&](const char* key, const Dimension& dim) -> std::optional<double> {
      if (!c.contains(key)) return std::nullopt;
      return quantity(c.at(key), std::string("waveguide.carriers.") + key, dim);
    };
    wg.carriers.omega_s = opt("omega_s", dims::kFrequency);
    wg.carriers.omega_i = opt("omega_i", dims::kFrequency);
    wg.carriers.omega_p = opt("omega_p", dims::kFrequency);
    wg.carriers.k_s = opt("k_s", {-1, 0, 0});
    wg.carriers.k_i = opt("k_i", {-1, 0, 0});
    wg.carriers.k_p = opt("k_p", {-1, 0, 0});
  }
  wg.validate();

  // Pump quantities that refer to positions along the waveguide.
  const Json& p = root_.at("pump");
  PumpSpec& s = cfg.pump;
  s.z0 = p.contains("z0") ? quantity(p.at("z0"), "pump.z0", dims::kLength) : 0.5 * (a + b);
  if (p.contains("zeta_p")) {
    const Json& z = p.at("zeta_p");
    if (z.is_object() && z.contains("strength")) {
      check_keys(z, "pump.zeta_p", {"strength", "profile"});
      const double strength = quantity(z.at("strength"), "pump.zeta_p.strength", dims::kZeta);
      const PiecewiseProfile shape =
          z.contains("profile") ? profile(z.at("profile"), "pump.zeta_p.profile", a, b) : PiecewiseProfile::constant(a, b, 1.0);
      std::vector<Segment> segs = shape.segments();
      for (auto& seg : segs) seg.value *= strength;
      s.zeta_p = PiecewiseProfile(std::move(segs));
    } else {
      const double strength = quantity(z, "pump.zeta_p", dims::kZeta);
      if (strength != 0.0) s.zeta_p = PiecewiseProfile::constant(a, b, strength);
    }
  }

  if (p.contains("envelope")) {
    const Json& e = p.at("envelope");
    check_keys(e, "pump.envelope", {"type", "n_points", "half_width", "z", "re", "im", "z_unit", "unit"});
    const std::string type = e.contains("type") ? string(e.at("type"), "pump.envelope.type") : "gaussian";
    if (type == "gaussian") {
      if (e.contains("n_points")) cfg.sampling.n_points = integer(e.at("n_points"), "pump.envelope.n_points");
      if (e.contains("half_width")) cfg.sampling.half_width_in_widths = number(e.at("half_width"), "pump.envelope.half_width");
      if (cfg.sampling.n_points < 2) throw ConfigError("pump.envelope.n_points", "must be at least 2");
      if (!(cfg.sampling.half_width_in_widths > 0.0)) throw ConfigError("pump.envelope.half_width", "must be positive");
    } else if (type == "samples") {
      for (const char* key : {"z", "re"})
        if (!e.contains(key) || !e.at(key).is_array())
          throw ConfigError(std::string("pump.envelope.") + key, "must be an array");
      const auto& zj = e.at("z");
      const auto& rj = e.at("re");
      const bool has_im = e.contains("im");
      if (has_im && !e.at("im").is_array()) throw ConfigError("pump.envelope.im", "must be an array");
      if (rj.size() != zj.size() || (has_im && e.at("im").size() != zj.size()))
        throw ConfigError("pump.envelope", "z, re and im must have equal length");
      double zf = 1.0;
      double vf = 1.0;
      if (e.contains("z_unit") || e.contains("unit")) {
        if (!units_.physical)
          throw ConfigError("pump.envelope", "unit-tagged values need pump.sigma, pump.v_p and pump.hbar_omega_p with units");
        if (e.contains("z_unit")) {
          const Unit u = parse_unit(string(e.at("z_unit"), "pump.envelope.z_unit"), "pump.envelope.z_unit");
          if (!(u.dim == dims::kLength)) throw ConfigError("pump.envelope.z_unit", "must be a length unit");
          zf = u.factor / units_.length;
        }
        if (e.contains("unit")) {
          const Unit u = parse_unit(string(e.at("unit"), "pump.envelope.unit"), "pump.envelope.unit");
          if (!(u.dim == dims::kEnvelope)) throw ConfigError("pump.envelope.unit", "must have dimension L^-1/2");
          vf = u.factor / units_.scale(dims::kEnvelope);
        }
      }
      SampledEnvelope env{RealVector(zj.size()), Vector(zj.size())};
      for (std::size_t k = 0; k < zj.size(); ++k) {
        const std::string idx = "[" + std::to_string(k) + "]";
        env.z(k) = number(zj[k], "pump.envelope.z" + idx) * zf;
        const double im = has_im ? number(e.at("im")[k], "pump.envelope.im" + idx) : 0.0;
        env.values(k) = vf * cplx(number(rj[k], "pump.envelope.re" + idx), im);
      }
      cfg.envelope = std::move(env);
    } else {
      throw ConfigError("pump.envelope.type", "expected \"gaussian\" or \"samples\"");
    }
  }
}

void Parser::parse_grid(RunConfig& cfg) {
  if (!root_.contains("grid")) return;
  const Json& g = root_.at("grid");
  check_keys(g, "grid", {"span", "n_points"});
  if (g.contains("span")) cfg.grid_span = quantity(g.at("span"), "grid.span", dims::kFrequency);
  if (g.contains("n_points")) cfg.grid_points = integer(g.at("n_points"), "grid.n_points");
  if (cfg.grid_points < 2) throw ConfigError("grid.n_points", "must be at least 2");
  if (!(cfg.grid_span > 0.0)) throw ConfigError("grid.span", "must be positive");
}

void Parser::parse_solver(RunConfig& cfg) {
  if (!root_.contains("solver")) return;
  const Json& s = root_.at("solver");
  check_keys(s, "solver", {"method", "n_steps", "tolerance", "max_steps", "dressing"});
  SolverConfig& out = cfg.solver;
  if (s.contains("method")) {
    const std::string m = string(s.at("method"), "solver.method");
    if (m == "auto") out.method = SolverMethod::kAuto;
    else if (m == "uniform") out.method = SolverMethod::kUniform;
    else if (m == "trotter") out.method = SolverMethod::kTrotter;
    else throw ConfigError("solver.method", "expected auto, uniform or trotter");
  }
  if (s.contains("n_steps")) {
    const Json& n = s.at("n_steps");
    if (n.is_string() && n.get<std::string>() == "adaptive") {
      out.adaptive = true;
    } else {
      out.n_steps = integer(n, "solver.n_steps");
      if (out.n_steps < 1) throw ConfigError("solver.n_steps", "must be >= 1 or \"adaptive\"");
      out.adaptive = false;
    }
  }
  if (s.contains("tolerance")) out.tolerance = number(s.at("tolerance"), "solver.tolerance");
  if (!(out.tolerance > 0.0)) throw ConfigError("solver.tolerance", "must be positive");
  if (s.contains("max_steps")) out.max_steps = integer(s.at("max_steps"), "solver.max_steps");
  if (out.max_steps < 1) throw ConfigError("solver.max_steps", "must be >= 1");
  if (s.contains("dressing")) {
    const std::string d = string(s.at("dressing"), "solver.dressing");
    if (d == "consistent") out.dressing = DressingConvention::kConsistent;
    else if (d == "as_printed") out.dressing = DressingConvention::kAsPrinted;
    else throw ConfigError("solver.dressing", "expected consistent or as_printed");
  }
}

void Parser::parse_outputs(RunConfig& cfg) {
  if (!root_.contains("outputs")) return;
  const Json& o = root_.at("outputs");
  check_keys(o, "outputs", {"jsa", "moment", "modes", "propagator", "binary"});
  OutputConfig& out = cfg.outputs;
  if (o.contains("jsa")) out.jsa = boolean(o.at("jsa"), "outputs.jsa");
  if (o.contains("moment")) out.moment = boolean(o.at("moment"), "outputs.moment");
  if (o.contains("modes")) out.modes = integer(o.at("modes"), "outputs.modes");
  if (out.modes < 0) throw ConfigError("outputs.modes", "must be >= 0");
  if (o.contains("propagator")) out.propagator = boolean(o.at("propagator"), "outputs.propagator");
  if (o.contains("binary")) out.binary = boolean(o.at("binary"), "outputs.binary");
}

RunConfig Parser::parse() {
  check_keys(root_, "", {"schema_version", "description", "pump", "waveguide", "grid", "solver", "outputs"});
  if (root_.contains("schema_version")) {
    if (!root_.at("schema_version").is_number_integer() || root_.at("schema_version").get<int>() != kSchemaVersion)
      throw ConfigError("schema_version", "unsupported; expected " + std::to_string(kSchemaVersion));
  }
  if (!root_.contains("pump")) throw ConfigError("pump", "missing");
  if (!root_.contains("waveguide")) throw ConfigError("waveguide", "missing");

  RunConfig cfg;
  parse_units();
  cfg.units = units_;
  parse_pump(cfg);
  parse_waveguide(cfg);
  parse_grid(cfg);
  parse_solver(cfg);
  parse_outputs(cfg);
  cfg.source = root_;
  return cfg;
}

}  // namespace

RunConfig parse_config(const Json& j) { return Parser(j).parse(); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("json", path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

RunConfig load_config(const std::string& path) { return parse_config(read_json_file(path)); }

std::string config_hash(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

Json with_sqrt_np(const Json& j, double sqrt_np) {
  Json out = j;
  out["pump"].erase("n_photons");
  out["pump"]["sqrt_n_photons"] = sqrt_np;
  return out;
}

}  // namespace tbsim
