#include "tbsim/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "tbsim/error.hpp"

namespace tbsim {

namespace {

struct Svd {
  Matrix u;
  RealVector s;
  Matrix v;
};

Svd full_svd(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

RealVector singular_values(const Matrix& m) { return Eigen::BDCSVD<Matrix>(m).singularValues(); }

// Phase that makes the first component with |a_k| >= 1e-2 max|a| real positive.
cplx gauge_phase(const Eigen::Ref<const Vector>& col) {
  const double peak = col.cwiseAbs().maxCoeff();
  if (peak == 0.0) return 1.0;
  for (Eigen::Index k = 0; k < col.size(); ++k)
    if (std::abs(col(k)) >= 1e-2 * peak) return std::conj(col(k)) / std::abs(col(k));
  return 1.0;
}

double orthonormality(const Matrix& modes, double delta_omega) {
  Matrix g = delta_omega * (modes.adjoint() * modes);
  g.diagonal().array() -= 1.0;
  return max_abs(g);
}

}  // namespace

int TwinBeamDecomposition::occupied_modes() const {
  if (r.size() == 0 || r(0) == 0.0) return 0;
  const double cut = 1e-12 * r(0);
  return static_cast<int>((r.array() > cut).count());
}

TwinBeamDecomposition schmidt_decompose(const Propagator& prop, double delta_omega, const DecomposeOptions& options) {
  if (!(delta_omega > 0.0)) throw ConfigError("delta_omega", "must be positive");
  const Su11Report check = check_su11(prop, options.su11_tolerance);
  if (!check.pass) {
    std::ostringstream msg;
    msg << "propagator fails the SU(1,1) check (group " << check.group << ", ss " << check.comm_ss << ", ii "
        << check.comm_ii << ", si " << check.comm_si << "; tolerance " << options.su11_tolerance << ")";
    throw NumericalError(msg.str());
  }

  const int n = prop.size();
  const Matrix P = prop.U_ss();
  const Matrix R = prop.U_si();
  const Matrix Y = prop.U_ii_conj();

  Matrix W, V;
  RealVector sinh_r;
  if (max_abs(R) == 0.0) {
    W = Matrix::Identity(n, n);
    V = Matrix::Identity(n, n);
    sinh_r = RealVector::Zero(n);
  } else {
    Svd svd = full_svd(R);
    W = std::move(svd.u);
    V = std::move(svd.v);
    sinh_r = std::move(svd.s);
    for (int l = 0; l < n; ++l) {
      const cplx ph = gauge_phase(W.col(l));
      W.col(l) *= ph;
      V.col(l) *= ph;
    }
  }

  RealVector cosh_r = (1.0 + sinh_r.array().square()).sqrt().matrix();
  const RealVector inv_cosh = cosh_r.cwiseInverse();

  // U_ss = W C T_s^H  =>  T_s = U_ss^H W C^-1; U_ii^* = A_i^* C V^H  =>  A_i^* = U_ii^* V C^-1.
  const Matrix t_s = P.adjoint() * W * inv_cosh.asDiagonal();
  const Matrix a_i = (Y * V * inv_cosh.asDiagonal()).conjugate();

  const double scale = 1.0 / std::sqrt(delta_omega);
  TwinBeamDecomposition d;
  d.r = sinh_r.array().asinh().matrix();
  d.rho_s = scale * W;
  d.tau_i = scale * V.conjugate();
  d.tau_s = scale * t_s;
  d.rho_i = scale * a_i;
  d.delta_omega = delta_omega;
  return d;
}

DecompositionResiduals decomposition_residuals(const TwinBeamDecomposition& d, const Propagator& prop,
                                               double delta_omega) {
  DecompositionResiduals res;
  const RealVector sinh_r = d.r.array().sinh().matrix();
  const RealVector cosh_r = d.r.array().cosh().matrix();
  const double dw = d.delta_omega;
  const Matrix ss = dw * d.rho_s * cosh_r.asDiagonal() * d.tau_s.adjoint();
  const Matrix si = dw * d.rho_s * sinh_r.asDiagonal() * d.tau_i.transpose();
  const Matrix ii_c = dw * d.rho_i.conjugate() * cosh_r.asDiagonal() * d.tau_i.transpose();
  const Matrix is_c = dw * d.rho_i.conjugate() * sinh_r.asDiagonal() * d.tau_s.adjoint();
  res.reconstruction = std::max({max_abs(ss - prop.U_ss()), max_abs(si - prop.U_si()),
                                 max_abs(ii_c - prop.U_ii_conj()), max_abs(is_c - prop.U_is_conj())});

  res.orthonormality = std::max({orthonormality(d.rho_s, delta_omega), orthonormality(d.rho_i, delta_omega),
                                 orthonormality(d.tau_s, delta_omega), orthonormality(d.tau_i, delta_omega)});

  const RealVector s_ss = singular_values(prop.U_ss());
  const RealVector s_si = singular_values(prop.U_si());
  const RealVector predicted = (1.0 + s_si.array().square()).sqrt().matrix();
  res.hyperbolic = (s_ss - predicted).cwiseAbs().maxCoeff();
  res.cosh_sinh = (s_ss.array().square() - s_si.array().square() - 1.0).abs().maxCoeff();
  return res;
}

Matrix moment_matrix(const Propagator& prop, double delta_omega) {
  // U_si (U_ii)^T with U_ii = conj(U_ii^*).
  return prop.U_si() * prop.U_ii_conj().adjoint() / delta_omega;
}

Matrix moment_matrix_block_formula(const Propagator& prop, double delta_omega) {
  return prop.U_ii_conj().conjugate() * prop.U_si().transpose() / delta_omega;
}

Matrix moment_matrix(const TwinBeamDecomposition& d) {
  const RealVector w = (d.r.array().sinh() * d.r.array().cosh()).matrix();
  return d.rho_s * w.asDiagonal() * d.rho_i.transpose();
}

Matrix jsa(const TwinBeamDecomposition& d) { return d.rho_s * d.r.asDiagonal() * d.rho_i.transpose(); }

double schmidt_number_from_weights(const RealVector& weights) {
  const double s1 = weights.sum();
  const double s2 = weights.squaredNorm();
  if (s2 == 0.0) return 1.0;
  return s1 * s1 / s2;
}

double kernel_schmidt_number(const Matrix& kernel) {
  return schmidt_number_from_weights(singular_values(kernel).array().square().matrix());
}

TwinBeamObservables observables(const TwinBeamDecomposition& d) {
  TwinBeamObservables o;
  o.J = jsa(d);
  o.M = moment_matrix(d);
  const RealVector lambda = d.r.array().sinh().square().matrix();
  o.mean_n_signal = lambda.sum();
  o.mean_n_idler = o.mean_n_signal;
  o.vacuum = d.occupied_modes() == 0;
  o.schmidt_number = schmidt_number_from_weights(lambda);
  o.jsa_schmidt_number = schmidt_number_from_weights(d.r.array().square().matrix());
  return o;
}

std::pair<double, double> mean_photon_numbers(const Propagator& prop) {
  return {prop.U_si().squaredNorm(), prop.U_is_conj().squaredNorm()};
}

}  // namespace tbsim
