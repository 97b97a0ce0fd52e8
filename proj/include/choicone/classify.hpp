#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "choicone/cones.hpp"
#include "choicone/superop.hpp"
#include "choicone/transforms.hpp"

namespace choicone {

// Θ = scale · (ad_s ⊗ ad_t) ∘ (transposes) ∘ (flip): the flip acts first,
// then the partial transposes, then the local congruence.
struct CanonicalFactorization {
  ComplexMatrix s;  // m×m, ||s||_F = 1, first nonzero entry real positive
  ComplexMatrix t;  // n×n, same normalization
  bool transpose_left = false;
  bool transpose_right = false;
  bool flip = false;
  double scale = 1.0;
};

// Atoms in application order; the scale is not an atom.
TransformSpec to_spec(const CanonicalFactorization& fac);
// Unscaled superoperator of the factorization.
SuperOp compile(const CanonicalFactorization& fac);

// ||Θ - scale·compile(fac)||_max. Throws DimMismatch.
double verify_factorization(const SuperOp& theta, const CanonicalFactorization& fac);

struct Counterexample {
  ComplexMatrix p;  // rank-one projection in M_m
  ComplexMatrix q;  // rank-one projection in M_n
  TensorMatrix image;  // Θ(p⊗q)
  // Refuted when the image is certified outside S_1; otherwise Unknown and
  // `reason` names the structural property Θ(p⊗q) violates.
  Certificate image_certificate;
  std::string reason;
  double violation = 0.0;
};

struct Classification {
  std::optional<CanonicalFactorization> factorization;
  std::optional<Counterexample> counterexample;
  double residual = 0.0;  // reconstruction residual when factored
};

// Why Θ(p⊗q) fails to be a positive multiple of a product of rank-one
// projections, or nullopt when it is one.
std::optional<std::string> extreme_ray_violation(const TensorMatrix& image, double tol, double* violation = nullptr);

// Either the canonical factorization of Θ (then Θ(S_1) = S_1) or a product
// state whose image shows Θ(S_1) ≠ S_1. Requires m, n >= 2.
// Throws SingularTheta, NotHermiticityPreserving, BadDims.
Classification classify_separability_preserver(const SuperOp& theta, double tol = 1e-8, std::uint64_t seed = 0);

// Recomputes Θ(p⊗q) and checks the stated failure again.
bool counterexample_holds(const SuperOp& theta, const Counterexample& cex, double tol = 1e-8);

}  // namespace choicone
