#pragma once

#include "choicone/mapspace.hpp"
#include "choicone/superop.hpp"

namespace choicone {

// Bilinear (never sesquilinear): Σ_ij x_ij y_ij = tr(x y^t).
Complex trace_pair(const ComplexMatrix& x, const ComplexMatrix& y);

// <φ, z> = <C_φ, z>; on z = x⊗y this is <φ(x), y>.
Complex map_state_pair(const LinearMap& phi, const TensorMatrix& z);

// <φ, z>_Θ = <φ, Θ^{-1}(z)>. Throws SingularTheta.
Complex map_state_pair_theta(const SuperOp& theta, const LinearMap& phi, const TensorMatrix& z);

// <Θ(z1), z2> = <z1, Θ*(z2)>; in matrix-unit coordinates Θ* is the transpose.
SuperOp superop_dual(const SuperOp& theta);

// σ* with <σ(x), y> = <x, σ*(y)> for σ: M_m → M_n.
LinearMap map_dual(const LinearMap& sigma);

// True iff ||Θ1 ∘ (Θ2*)^{-1} - Θ3||_max <= tol. Throws SingularTheta.
bool check_pairing_transform(const SuperOp& theta1, const SuperOp& theta2, const SuperOp& theta3,
                             double tol);

// <Γ^{Θ2}(φ), z>_{Θ1} = <Θ2(C_φ), Θ1^{-1}(z)>
Complex twisted_choi_pair(const SuperOp& theta1, const SuperOp& theta2, const LinearMap& phi,
                          const TensorMatrix& z);

// <φ, ψ>_Θ = <C_φ, Θ^{-1}(C_ψ)>
Complex map_map_pair(const LinearMap& phi, const LinearMap& psi, const SuperOp& theta);

enum class StatePairing {
  Standard,    // <C_φ, z>
  Woronowicz,  // <C_φ, z>_{t⊗t}
  Horodecki,   // <C^{t⊗id}_φ, z>_{t⊗t}, evaluated as <φ, z>_{id⊗t}
};
enum class MapPairing {
  Standard,  // <C_φ, C_ψ>
  Ssz,       // <C_φ, C_ψ>_{t⊗t}
};

Complex preset_state_pair(StatePairing preset, const LinearMap& phi, const TensorMatrix& z);
Complex preset_map_pair(MapPairing preset, const LinearMap& phi, const LinearMap& psi);

}  // namespace choicone
