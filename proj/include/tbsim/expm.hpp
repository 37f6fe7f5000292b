#pragma once

#include "tbsim/types.hpp"

namespace tbsim {

struct ExpmInfo {
  int pade_degree = 0;
  int squarings = 0;
};

/// Dense matrix exponential by scaling and squaring with a diagonal Pade
/// approximant (degree 3, 5, 7, 9 or 13 chosen from the 1-norm, Higham 2005).
///
/// Throws NumericalError on non-finite input.
Matrix expm(const Matrix& a, ExpmInfo* info = nullptr);

/// Exact induced 1-norm (maximum absolute column sum).
double norm1(const Matrix& a);

}  // namespace tbsim
