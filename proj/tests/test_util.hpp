#pragma once

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "choicone/matrix.hpp"
#include "choicone/random.hpp"

namespace choicone::testing {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
  Eigen::MatrixXcd out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

inline ComplexMatrix mat(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries) {
  return ComplexMatrix(rows, cols, std::vector<Complex>(entries));
}

// Σ_ij e_ij ⊗ e_ij on C^n ⊗ C^n.
inline ComplexMatrix max_entangled_projector(std::size_t n) {
  const auto omega = max_entangled_vector(n, n);
  return outer(omega, omega);
}

inline TensorMatrix random_tensor(Rng& rng, std::size_t m, std::size_t n) {
  return TensorMatrix(m, n, gaussian_matrix(rng, m * n, m * n));
}

inline TensorMatrix random_hermitian_tensor(Rng& rng, std::size_t m, std::size_t n) {
  return TensorMatrix(m, n, random_hermitian(rng, m * n));
}

}  // namespace choicone::testing

#define EXPECT_MAT_NEAR(a, b, tol) EXPECT_LE(::choicone::max_abs_diff((a), (b)), (tol))
