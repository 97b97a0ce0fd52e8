#pragma once

#include <functional>
#include <span>
#include <vector>

#include "choicone/matrix.hpp"

namespace choicone {

// A linear map φ: M_m → M_n, stored as its standard Choi matrix
// C_φ = Σ_ij e_ij ⊗ φ(e_ij).
class LinearMap {
 public:
  LinearMap() = default;
  explicit LinearMap(TensorMatrix choi) : choi_(std::move(choi)) {}

  // Assembles the Choi matrix by evaluating f on the matrix units of M_m.
  static LinearMap from_function(std::size_t m, std::size_t n,
                                 const std::function<ComplexMatrix(const ComplexMatrix&)>& f);
  static LinearMap identity(std::size_t n);
  static LinearMap transpose(std::size_t n);
  // x ↦ s* x s for an m×n matrix s (a map M_m → M_n).
  static LinearMap congruence(const ComplexMatrix& s);
  // x ↦ tr(x)·I_n
  static LinearMap trace_identity(std::size_t m, std::size_t n);

  std::size_t m() const noexcept { return choi_.m(); }
  std::size_t n() const noexcept { return choi_.n(); }
  const TensorMatrix& choi() const noexcept { return choi_; }

  friend bool operator==(const LinearMap&, const LinearMap&) = default;

 private:
  TensorMatrix choi_;
};

// φ(x) = tr_1[(x^t ⊗ I_n) C_φ]
ComplexMatrix apply_map(const LinearMap& phi, const ComplexMatrix& x);

// φ†(x) = φ(x*)*; its Choi matrix is C_φ*.
LinearMap involution(const LinearMap& phi);

bool is_hermiticity_preserving(const LinearMap& phi, double tol);

// Kraus operators are n×m: φ(x) = Σ K x K*.
LinearMap kraus_to_choi(std::span<const ComplexMatrix> kraus);
// Throws NotCompletelyPositive when min eig(C_φ) < -tol. Eigenvalues in
// [-tol, 0] are clipped to zero.
std::vector<ComplexMatrix> choi_to_kraus(const LinearMap& phi, double tol = 1e-8);

// x ↦ τ(φ(σ(x)))
LinearMap compose(const LinearMap& tau, const LinearMap& phi, const LinearMap& sigma);
// x ↦ outer(inner(x))
LinearMap compose(const LinearMap& outer, const LinearMap& inner);

}  // namespace choicone
