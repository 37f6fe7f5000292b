#pragma once

// Reference implementations used only by the tests. None of them share code
// with the library routine they check.

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "tbsim/types.hpp"

namespace oracle {

using tbsim::cplx;
using tbsim::Matrix;

/// exp(A) through the eigendecomposition A = V D V^-1.
inline Matrix expm_eig(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> es(a);
  const Matrix& v = es.eigenvectors();
  const tbsim::Vector d = es.eigenvalues().array().exp().matrix();
  return v * d.asDiagonal() * v.inverse();
}

/// Truncated Taylor series, for small ||A||.
inline Matrix expm_taylor(const Matrix& a, int terms = 40) {
  Matrix acc = Matrix::Identity(a.rows(), a.cols());
  Matrix term = acc;
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    acc += term;
  }
  return acc;
}

inline Matrix random_matrix(int n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) m(r, c) = {g(rng), g(rng)};
  return m;
}

inline Matrix random_hermitian(int n, std::mt19937& rng) {
  const Matrix m = random_matrix(n, rng);
  return 0.5 * (m + m.adjoint());
}

/// Random generator [[G, F], [-F^H, -H^H]] with G, H Hermitian, scaled so ||Q||_2-ish ~ scale.
inline Matrix random_su11_generator(int n, double scale, std::mt19937& rng) {
  const Matrix G = random_hermitian(n, rng);
  const Matrix H = random_hermitian(n, rng);
  const Matrix F = random_matrix(n, rng);
  Matrix Q(2 * n, 2 * n);
  Q << G, F, -F.adjoint(), -H.adjoint();
  return Q * (scale / Q.norm());
}

inline Matrix S_matrix(int n) {
  Matrix s = Matrix::Identity(2 * n, 2 * n);
  s.bottomRightCorner(n, n) *= -1.0;
  return s;
}

/// Gaussian pump, delta = 1: closed-form Fourier transform of the envelope.
inline cplx gaussian_beta_spdc(double nu, double n_photons, double sigma, double hbar_omega, double z0, double t0,
                               double v_p) {
  const double amp = std::sqrt(hbar_omega * n_photons) * std::pow(tbsim::kPi, -0.25) / std::sqrt(sigma);
  return amp * std::exp(-nu * nu / (2 * sigma * sigma)) * std::polar(1.0, nu * (t0 - z0 / v_p));
}

/// Gaussian pump, delta = 2.
inline cplx gaussian_beta_sfwm(double nu, double n_photons, double sigma, double hbar_omega, double z0, double t0,
                               double v_p) {
  const double amp = hbar_omega * n_photons / std::sqrt(2 * tbsim::kPi * v_p);
  return amp * std::exp(-nu * nu / (4 * sigma * sigma)) * std::polar(1.0, nu * (t0 - z0 / v_p));
}

/// Energy spectrum of the Gaussian pump.
inline cplx gaussian_energy(double nu, double n_photons, double sigma, double hbar_omega, double z0, double t0,
                            double v_p) {
  return hbar_omega * n_photons * std::exp(-nu * nu / (4 * sigma * sigma)) * std::polar(1.0, nu * (t0 - z0 / v_p));
}

/// Composite Simpson rule for a complex integrand.
template <typename F>
cplx simpson(F f, double a, double b, int intervals = 20000) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  cplx acc = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return acc * h / 3.0;
}

}  // namespace oracle
