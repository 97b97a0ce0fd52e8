#pragma once

#include <optional>
#include <vector>

#include "choicone/matrix.hpp"

namespace choicone {

struct Eigensystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column j belongs to values[j]

  std::vector<Complex> vector(std::size_t j) const;
};

// Cyclic complex Jacobi. Throws NotHermitian when ||H - H*||_max > tol,
// NoConvergence after the sweep cap.
Eigensystem hermitian_eig(const ComplexMatrix& h, double tol = 1e-8);

struct SingularSystem {
  ComplexMatrix u;            // rows × k, orthonormal columns
  std::vector<double> values; // k = min(rows, cols), descending, nonnegative
  ComplexMatrix v;            // cols × k, orthonormal columns
};

// One-sided (Hestenes) Jacobi; A = U diag(s) V*.
SingularSystem svd(const ComplexMatrix& a);

// s_min / s_max; 0 for a zero matrix.
double reciprocal_condition(const ComplexMatrix& a);

struct Inverse {
  ComplexMatrix matrix;  // empty when an exact zero pivot was hit
  double rcond = 0.0;    // 1 / (||A||_1 ||A^-1||_1)
};

// LU with partial pivoting.
Inverse lu_inverse(const ComplexMatrix& a);

// Reshape a length-(rows·cols) vector into a row-major rows×cols matrix and back.
ComplexMatrix reshape(std::span<const Complex> v, std::size_t rows, std::size_t cols);
std::vector<Complex> flatten(const ComplexMatrix& a);

}  // namespace choicone
