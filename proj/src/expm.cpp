#include "tbsim/expm.hpp"

#include <array>
#include <cmath>

#include "tbsim/error.hpp"

namespace tbsim {

namespace {

constexpr std::array<double, 5> kTheta{1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                       2.097847961257068e0, 5.371920351148152e0};

constexpr std::array<double, 4> kB3{120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kB5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kB7{17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
constexpr std::array<double, 10> kB9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                     2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 14> kB13{64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                      1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                      670442572800.0,      33522128640.0,       1323241920.0,
                                      40840800.0,          960960.0,            16380.0,
                                      182.0,               1.0};

// Low-degree approximant: U collects odd powers, V even powers.
template <std::size_t K>
Matrix pade_low(const Matrix& a, const std::array<double, K>& b) {
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix power = ident;
  Matrix u_inner = b[1] * ident;
  Matrix v = b[0] * ident;
  for (std::size_t k = 2; k < K; k += 2) {
    power = power * a2;
    v.noalias() += b[k] * power;
    u_inner.noalias() += b[k + 1] * power;
  }
  const Matrix u = a * u_inner;
  return (v - u).partialPivLu().solve(v + u);
}

Matrix pade13(const Matrix& a) {
  const auto& b = kB13;
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  Matrix inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  Matrix u = a6 * inner;
  u.noalias() += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  u = a * u;
  inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  Matrix v = a6 * inner;
  v.noalias() += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

double norm1(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

Matrix expm(const Matrix& a, ExpmInfo* info) {
  if (a.rows() != a.cols()) throw NumericalError("expm: matrix is not square");
  if (!a.allFinite()) throw NumericalError("expm: non-finite entries");
  ExpmInfo local;
  ExpmInfo& out = info ? *info : local;
  out = {};
  if (a.size() == 0) return a;

  const double norm = norm1(a);
  if (norm <= kTheta[3]) {
    if (norm <= kTheta[0]) out.pade_degree = 3;
    else if (norm <= kTheta[1]) out.pade_degree = 5;
    else if (norm <= kTheta[2]) out.pade_degree = 7;
    else out.pade_degree = 9;
    switch (out.pade_degree) {
      case 3: return pade_low(a, kB3);
      case 5: return pade_low(a, kB5);
      case 7: return pade_low(a, kB7);
      default: return pade_low(a, kB9);
    }
  }

  int s = 0;
  if (norm > kTheta[4]) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta[4]))));
  out.pade_degree = 13;
  out.squarings = s;
  Matrix r = pade13(a / std::ldexp(1.0, s));
  for (int k = 0; k < s; ++k) r = r * r;
  if (!r.allFinite()) throw NumericalError("expm: overflow");
  return r;
}

}  // namespace tbsim
