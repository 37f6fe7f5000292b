#include "tbsim/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "tbsim/error.hpp"

namespace tbsim {

void WaveguideSpec::validate() const {
  for (auto [v, name] : {std::pair{v_s, "waveguide.v_s"}, {v_i, "waveguide.v_i"}, {v_p, "waveguide.v_p"}})
    if (!std::isfinite(v) || !(v > 0.0)) throw ConfigError(name, "velocity must be positive");
  if (!std::isfinite(ell_min) || !std::isfinite(ell_max) || !(ell_min < ell_max))
    throw ConfigError("waveguide.ell_min", "need ell_min < ell_max");
  if (!std::isfinite(gamma_delta.real()) || !std::isfinite(gamma_delta.imag()))
    throw ConfigError("waveguide.gamma_delta", "must be finite");
  if (!std::isfinite(gamma_xpm_s) || !std::isfinite(gamma_xpm_i))
    throw ConfigError("waveguide.gamma_xpm", "must be finite");
  if (delta != 1 && delta != 2) throw ConfigError("waveguide.delta", "must be 1 or 2");
  g_profile.require_values({-1.0, 0.0, 1.0}, "waveguide.g_profile");
  h_s_profile.require_values({0.0, 1.0}, "waveguide.h_s_profile");
  h_i_profile.require_values({0.0, 1.0}, "waveguide.h_i_profile");
  if (!g_profile.within(ell_min, ell_max)) throw ConfigError("waveguide.g_profile", "extends outside the nonlinear region");
  if (!h_s_profile.within(ell_min, ell_max))
    throw ConfigError("waveguide.h_s_profile", "extends outside the nonlinear region");
  if (!h_i_profile.within(ell_min, ell_max))
    throw ConfigError("waveguide.h_i_profile", "extends outside the nonlinear region");
}

WaveguideSpec symmetric_gvm_waveguide(double kappa, double ell, double v_p, cplx gamma_delta) {
  if (!(ell > 0.0)) throw ConfigError("waveguide.symmetric_gvm.length", "must be positive");
  if (!(v_p > 0.0)) throw ConfigError("waveguide.v_p", "must be positive");
  const double slope = 2.0 * kappa / ell;
  const double inv_s = 1.0 / v_p + slope;
  const double inv_i = 1.0 / v_p - slope;
  if (!(inv_s > 0.0) || !(inv_i > 0.0))
    throw ConfigError("waveguide.symmetric_gvm.kappa", "2 kappa / ell must be smaller than 1 / v_p");
  WaveguideSpec wg;
  wg.v_p = v_p;
  wg.v_s = 1.0 / inv_s;
  wg.v_i = 1.0 / inv_i;
  wg.ell_min = -0.5 * ell;
  wg.ell_max = 0.5 * ell;
  wg.gamma_delta = gamma_delta;
  wg.g_profile = PiecewiseProfile::constant(wg.ell_min, wg.ell_max, 1.0);
  return wg;
}

double delta_k(double nu, double v_j, double v_p) { return (1.0 / v_j - 1.0 / v_p) * nu; }

Matrix assemble_Q_blocks(const Matrix& F, const Matrix& G, const Matrix& H) {
  const Eigen::Index n = F.rows();
  Matrix Q(2 * n, 2 * n);
  Q.topLeftCorner(n, n) = G;
  Q.topRightCorner(n, n) = F;
  Q.bottomLeftCorner(n, n) = -F.adjoint();
  Q.bottomRightCorner(n, n) = -H.adjoint();
  return Q;
}

namespace {

void require_doubled(const Vector& v, const FrequencyGrid& grid, const char* what) {
  if (v.size() != grid.doubled_size())
    throw ConfigError(what, "must be sampled on the doubled grid (" + std::to_string(grid.doubled_size()) +
                                " nodes covering [-" + std::to_string(2.0 * grid.span()) + ", " +
                                std::to_string(2.0 * grid.span()) + "])");
}

}  // namespace

Matrix build_F(cplx gamma_g, const Vector& beta_doubled, const FrequencyGrid& grid) {
  require_doubled(beta_doubled, grid, "beta_p");
  const int n = grid.size();
  Matrix F(n, n);
  if (gamma_g == 0.0) return Matrix::Zero(n, n);
  const cplx scale = gamma_g / std::sqrt(2.0 * kPi) * grid.delta_omega();
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) F(k, m) = scale * beta_doubled(grid.sum_index(k, m));
  return F;
}

Matrix build_walkoff_xpm(double v_j, double v_p, double gamma_h, const Vector& energy_doubled,
                         const FrequencyGrid& grid, bool conjugate_kernel) {
  const int n = grid.size();
  Matrix M = Matrix::Zero(n, n);
  if (gamma_h != 0.0) {
    require_doubled(energy_doubled, grid, "energy_spectrum");
    const double scale = gamma_h / (2.0 * kPi) * grid.delta_omega();
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k) {
        const cplx e = energy_doubled(grid.difference_index(k, m));
        M(k, m) = scale * (conjugate_kernel ? std::conj(e) : e);
      }
  }
  for (int k = 0; k < n; ++k) M(k, k) += delta_k(grid.nu(k), v_j, v_p);
  return M;
}

GeneratorAssembler::GeneratorAssembler(PumpField pump, WaveguideSpec waveguide, FrequencyGrid grid)
    : pump_(std::move(pump)),
      waveguide_(std::move(waveguide)),
      grid_(std::move(grid)),
      beta_(pump_, grid_.doubled_nu()) {
  waveguide_.validate();
  if (pump_.spec().delta != waveguide_.delta)
    throw ConfigError("waveguide.delta", "process order differs between pump and waveguide");
  if (pump_.spec().v_p != waveguide_.v_p) throw ConfigError("waveguide.v_p", "differs from pump.v_p");

  if (pump_.spm_free()) beta_static_ = beta_(0.0);

  // Only the non-negative half is integrated; the other half follows from E(-nu) = E*(nu).
  const int n = grid_.size();
  const int nd = grid_.doubled_size();
  RealVector half(n);
  for (int k = 0; k < n; ++k) half(k) = grid_.doubled_nu(n - 1 + k);
  const Vector e_half = pump_.energy_spectrum(half);
  energy_doubled_.resize(nd);
  for (int k = 0; k < n; ++k) {
    energy_doubled_(n - 1 + k) = e_half(k);
    energy_doubled_(n - 1 - k) = std::conj(e_half(k));
  }
  energy_doubled_(n - 1) = e_half(0).real();
}

Vector GeneratorAssembler::beta_doubled(double z) const { return beta_static_ ? *beta_static_ : beta_(z); }

Matrix GeneratorAssembler::F(double z) const {
  const double g = inside(z) ? waveguide_.g_profile(z) : 0.0;
  if (g == 0.0 || waveguide_.gamma_delta == 0.0) return Matrix::Zero(grid_.size(), grid_.size());
  return build_F(waveguide_.gamma_delta * g, beta_doubled(z), grid_);
}

Matrix GeneratorAssembler::G(double z) const {
  const double h = inside(z) ? waveguide_.h_s_profile(z) : 0.0;
  return build_walkoff_xpm(waveguide_.v_s, waveguide_.v_p, waveguide_.gamma_xpm_s * h, energy_doubled_, grid_, false);
}

Matrix GeneratorAssembler::H(double z) const {
  const double h = inside(z) ? waveguide_.h_i_profile(z) : 0.0;
  return build_walkoff_xpm(waveguide_.v_i, waveguide_.v_p, waveguide_.gamma_xpm_i * h, energy_doubled_, grid_, true);
}

GeneratorMatrices GeneratorAssembler::assemble(double z) const {
  GeneratorMatrices out{F(z), G(z), H(z), {}};
  out.Q = assemble_Q_blocks(out.F, out.G, out.H);
  return out;
}

Matrix GeneratorAssembler::Q(double z) const { return assemble(z).Q; }

std::vector<double> GeneratorAssembler::breakpoints() const {
  const double a = waveguide_.ell_min;
  const double b = waveguide_.ell_max;
  std::vector<double> pts{a, b};
  for (const auto* p : {&waveguide_.g_profile, &waveguide_.h_s_profile, &waveguide_.h_i_profile, &pump_.spec().zeta_p})
    for (double z : p->breakpoints())
      if (z > a && z < b) pts.push_back(z);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

bool GeneratorAssembler::z_independent() const {
  if (!pump_.spm_free()) return false;
  const double a = waveguide_.ell_min;
  const double b = waveguide_.ell_max;
  auto uniform = [&](const PiecewiseProfile& p, bool active) {
    return !active || p.is_zero() || p.is_single_segment_over(a, b);
  };
  return uniform(waveguide_.g_profile, waveguide_.gamma_delta != 0.0) &&
         uniform(waveguide_.h_s_profile, waveguide_.gamma_xpm_s != 0.0) &&
         uniform(waveguide_.h_i_profile, waveguide_.gamma_xpm_i != 0.0);
}

Matrix assemble_F(double z, const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid) {
  return GeneratorAssembler(pump, wg, grid).F(z);
}

Matrix assemble_G(double z, const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid) {
  return GeneratorAssembler(pump, wg, grid).G(z);
}

Matrix assemble_H(double z, const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid) {
  return GeneratorAssembler(pump, wg, grid).H(z);
}

GeneratorMatrices assemble_Q(double z, const PumpField& pump, const WaveguideSpec& wg, const FrequencyGrid& grid) {
  return GeneratorAssembler(pump, wg, grid).assemble(z);
}

namespace {

constexpr double kEpsilon0 = 8.8541878128e-12;
constexpr double kHbar = 1.054571817e-34;
constexpr double kSpeedOfLight = 299792458.0;

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) throw ConfigError(name, "must be positive");
}

}  // namespace

CouplingEstimate estimate_gamma(const PhysicalWaveguide& p) {
  require_positive(p.area, "area");
  require_positive(p.refractive_index, "refractive_index");
  require_positive(p.v_g_p, "v_g_p");
  require_positive(p.v_g_s, "v_g_s");
  require_positive(p.v_g_i, "v_g_i");
  require_positive(p.omega_p, "omega_p");
  require_positive(p.omega_s, "omega_s");
  require_positive(p.omega_i, "omega_i");
  if (!std::isfinite(p.chi2) || p.chi2 < 0.0) throw ConfigError("chi2", "must be >= 0");
  if (!std::isfinite(p.chi3) || p.chi3 < 0.0) throw ConfigError("chi3", "must be >= 0");
  if (p.chi2 == 0.0 && p.chi3 == 0.0) throw ConfigError("chi2", "at least one of chi2, chi3 must be positive");

  const double n = p.refractive_index;
  const double n2 = n * n;
  const double v_phase = kSpeedOfLight / n;
  auto amplitude = [&](double v_g) { return std::sqrt(kEpsilon0 * n2 * v_g / (v_phase * p.area)); };

  CouplingEstimate e;
  e.d_p = amplitude(p.v_g_p);
  e.d_s = amplitude(p.v_g_s);
  e.d_i = amplitude(p.v_g_i);
  const double e_p = kHbar * p.omega_p;

  if (p.chi2 > 0.0) {
    const double gamma2_tensor = p.chi2 / (kEpsilon0 * n2 * n2 * n2);
    e.xi1 = 2.0 / (kEpsilon0 * kHbar) * std::sqrt(kHbar * kHbar * kHbar * p.omega_i * p.omega_s * p.omega_p / 8.0) *
            gamma2_tensor * e.d_i * e.d_s * e.d_p * p.area;
    e.gamma1 = e.xi1 / std::sqrt(p.v_g_p * p.v_g_s * p.v_g_i * e_p);
  }
  if (p.chi3 > 0.0) {
    const double gamma3_tensor = p.chi3 / (kEpsilon0 * kEpsilon0 * n2 * n2 * n2 * n2);
    const double pre = 3.0 / (kEpsilon0 * kHbar);
    const double dp2 = e.d_p * e.d_p;
    e.xi2 = pre * (0.5 * kHbar * std::sqrt(p.omega_s * p.omega_i)) * (0.5 * e_p) * gamma3_tensor * e.d_s * e.d_i * dp2 *
            p.area;
    e.gamma2 = e.xi2 / std::sqrt(p.v_g_p * p.v_g_s * p.v_g_i * e_p * e_p);
    e.zeta_p = pre * (0.5 * e_p) * (0.5 * e_p) * gamma3_tensor * dp2 * dp2 * p.area;
    e.zeta_s = 2.0 * pre * (0.5 * kHbar * p.omega_s) * (0.5 * e_p) * gamma3_tensor * dp2 * e.d_s * e.d_s * p.area;
    e.zeta_i = 2.0 * pre * (0.5 * kHbar * p.omega_i) * (0.5 * e_p) * gamma3_tensor * dp2 * e.d_i * e.d_i * p.area;
    e.gamma_xpm_s = e.zeta_s / (p.v_g_p * p.v_g_s * e_p);
    e.gamma_xpm_i = e.zeta_i / (p.v_g_p * p.v_g_i * e_p);
  }
  return e;
}

}  // namespace tbsim
