#pragma once

#include <functional>

#include "choicone/mapspace.hpp"
#include "choicone/matrix.hpp"

namespace choicone {

// Linear map Θ on M_m ⊗ M_n as a (mn)²×(mn)² matrix acting on column-stacked
// coordinates: vec(z)[c·mn + r] = z[r, c].
class SuperOp {
 public:
  SuperOp() = default;
  SuperOp(std::size_t m, std::size_t n, ComplexMatrix matrix);

  // Builds the matrix column by column from the images of the matrix units.
  static SuperOp from_function(std::size_t m, std::size_t n,
                               const std::function<ComplexMatrix(const ComplexMatrix&)>& f);
  static SuperOp identity(std::size_t m, std::size_t n);
  // σ ⊗ τ for σ on M_m and τ on M_n.
  static SuperOp local(const LinearMap& sigma, const LinearMap& tau);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return m_ * n_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  TensorMatrix apply(const TensorMatrix& z) const;
  ComplexMatrix apply(const ComplexMatrix& z) const;

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  ComplexMatrix matrix_;
};

// after ∘ before
SuperOp compose(const SuperOp& after, const SuperOp& before);
SuperOp scaled(const SuperOp& theta, Complex factor);

// Throws SingularTheta when the reciprocal condition estimate is below min_rcond.
SuperOp invert(const SuperOp& theta, double min_rcond = 1e-12);
double max_abs_diff(const SuperOp& a, const SuperOp& b);

std::vector<Complex> vec_columns(const ComplexMatrix& z);
ComplexMatrix unvec_columns(std::span<const Complex> v, std::size_t dim);

// True iff Θ(H)* = Θ(H) within tol for every element of a Hermitian basis.
bool is_hermiticity_preserving_superop(const SuperOp& theta, double tol);

}  // namespace choicone
