#pragma once

#include <optional>
#include <vector>

#include "choicone/mapspace.hpp"
#include "choicone/superop.hpp"

namespace choicone {

// Bilinear form on M_m that a basis pair is dual under.
enum class BilinearForm {
  Trace,        // <x, y> = tr(x y^t)
  TraceNoFlip,  // <x, y>_t = tr(x y)
};

Complex evaluate_form(BilinearForm form, const ComplexMatrix& x, const ComplexMatrix& y);

// Bases {e_i}, {f_i} of M_m with <e_i, f_j> = δ_ij under `form`.
class BasisPair {
 public:
  // Throws NotDualPair when the δ_ij condition fails beyond tol.
  BasisPair(BilinearForm form, std::vector<ComplexMatrix> e, std::vector<ComplexMatrix> f, double tol = 1e-10);

  static BasisPair standard(std::size_t m);           // {e_ij}, {e_ij}
  static BasisPair transposed_units(std::size_t m);   // {e_ij}, {e_ji} under tr(xy)
  static BasisPair weyl2();                            // self-dual under tr(xy^t)
  static BasisPair pauli2();                           // self-dual under tr(xy)
  // Unique {f_i} dual to {e_i}, by inverting the Gram matrix of the form.
  static BasisPair dual_of(BilinearForm form, std::vector<ComplexMatrix> e, double tol = 1e-10);

  BilinearForm form() const noexcept { return form_; }
  std::size_t m() const noexcept { return m_; }
  const std::vector<ComplexMatrix>& e() const noexcept { return e_; }
  const std::vector<ComplexMatrix>& f() const noexcept { return f_; }
  bool hermitian(double tol = 1e-10) const;

 private:
  BilinearForm form_;
  std::size_t m_ = 0;
  std::vector<ComplexMatrix> e_;
  std::vector<ComplexMatrix> f_;
};

// Γ(φ) = C_φ
const TensorMatrix& choi(const LinearMap& phi);

// Σ_i e_i ⊗ φ(f_i)
TensorMatrix choi_from_basis(const BasisPair& bp, const LinearMap& phi);

// C^Θ_φ = Θ(C_φ)
TensorMatrix choi_theta(const SuperOp& theta, const LinearMap& phi);

// Returns σ when Θ = σ ⊗ id (operator-Schmidt rank one with an identity
// second factor), nullopt otherwise.
std::optional<LinearMap> detect_left_simple(const SuperOp& theta, double tol = 1e-8);

enum class ChoiVariant {
  Standard,  // Θ = id
  DePillis,  // t ⊗ id
  IdT,       // id ⊗ t
  TT,        // t ⊗ t
  Flip,      // a⊗b ↦ b⊗a (m = n)
  AdU,       // z ↦ U* z U
};

SuperOp variant_superop(ChoiVariant variant, std::size_t m, std::size_t n,
                        const std::optional<ComplexMatrix>& unitary = std::nullopt);

}  // namespace choicone
