#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "choicone/cones.hpp"
#include "choicone/superop.hpp"

namespace choicone {

// z ↦ (s⊗t)* z (s⊗t), i.e. ad_s ⊗ ad_t.
struct AdLocal {
  ComplexMatrix s;
  ComplexMatrix t;
};
struct TransposeLeft {};
struct TransposeRight {};
// a⊗b ↦ b⊗a, m = n only.
struct Flip {};
// z ↦ V* z V
struct AdGlobal {
  ComplexMatrix v;
};

using Atom = std::variant<AdLocal, TransposeLeft, TransposeRight, Flip, AdGlobal>;

// Atoms are applied in list order: atoms[0] acts first.
struct TransformSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Atom> atoms;
};

// Throws DimMismatch for shape errors, SingularAd when an Ad factor has
// reciprocal condition below min_rcond.
void validate(const TransformSpec& spec, double min_rcond = 1e-10);
TensorMatrix apply_atom(const Atom& atom, const TensorMatrix& z);
// Sequential application, without building a superoperator.
TensorMatrix apply_atoms(const TransformSpec& spec, const TensorMatrix& z);
SuperOp compile(const TransformSpec& spec, double min_rcond = 1e-10);
TensorMatrix apply_transform(const SuperOp& theta, const TensorMatrix& z);

struct PreservationResult {
  bool counterexample = false;
  std::size_t samples = 0;
  // Lowest normalized certificate value seen over the images (negative means
  // the image was refuted).
  double worst_margin = 0.0;
  std::optional<TensorMatrix> member;
  std::optional<Certificate> member_certificate;
  std::optional<Certificate> image_certificate;
};

// Draws certified members z of the cone and tries to refute Θ(z). The first
// members drawn are the canonical ones (|Ω_k><Ω_k| for S_k, k·I - |Ω><Ω| for
// BP_k); the rest are random. A missing counterexample is evidence, not proof.
// SP_k and P_k are tested through their Choi images S_k and BP_k.
PreservationResult preserves_cone_sampled(const SuperOp& theta, const ConeId& cone, std::size_t samples,
                                          std::uint64_t seed, std::size_t restarts = 50);

}  // namespace choicone
