#include "choicone/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "choicone/error.hpp"
#include "choicone/linalg.hpp"
#include "choicone/random.hpp"

namespace choicone {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_shape(const ComplexMatrix& a, std::size_t dim, const char* what) {
  if (a.rows() != dim || a.cols() != dim) {
    throw Error(ErrorCode::DimMismatch, std::string(what) + " must be " + std::to_string(dim) + "×" +
                                            std::to_string(dim) + ", got " + std::to_string(a.rows()) + "×" +
                                            std::to_string(a.cols()));
  }
}

void require_conditioned(const ComplexMatrix& a, double min_rcond, const char* what) {
  const double rc = reciprocal_condition(a);
  if (rc < min_rcond) {
    throw Error(ErrorCode::SingularAd, std::string(what) + " has reciprocal condition " + std::to_string(rc));
  }
}

void check_atom_shape(const Atom& atom, std::size_t m, std::size_t n) {
  std::visit(overloaded{
                 [&](const AdLocal& a) {
                   require_shape(a.s, m, "adLocal s");
                   require_shape(a.t, n, "adLocal t");
                 },
                 [](const TransposeLeft&) {},
                 [](const TransposeRight&) {},
                 [&](const Flip&) {
                   if (m != n) throw Error(ErrorCode::DimMismatch, "flip needs m = n");
                 },
                 [&](const AdGlobal& a) { require_shape(a.v, m * n, "adGlobal v"); },
             },
             atom);
}

ComplexMatrix congruence(const ComplexMatrix& s, const ComplexMatrix& z) { return s.adjoint() * z * s; }

}  // namespace

void validate(const TransformSpec& spec, double min_rcond) {
  if (spec.m == 0 || spec.n == 0) throw Error(ErrorCode::BadDims, "dimensions must be positive");
  for (const auto& atom : spec.atoms) {
    check_atom_shape(atom, spec.m, spec.n);
    if (const auto* a = std::get_if<AdLocal>(&atom)) {
      require_conditioned(a->s, min_rcond, "adLocal s");
      require_conditioned(a->t, min_rcond, "adLocal t");
    } else if (const auto* g = std::get_if<AdGlobal>(&atom)) {
      require_conditioned(g->v, min_rcond, "adGlobal v");
    }
  }
}

TensorMatrix apply_atom(const Atom& atom, const TensorMatrix& z) {
  const std::size_t m = z.m(), n = z.n();
  check_atom_shape(atom, m, n);
  return std::visit(overloaded{
                        [&](const AdLocal& a) { return TensorMatrix(m, n, congruence(kron(a.s, a.t), z.mat())); },
                        [&](const TransposeLeft&) { return partial_transpose(z, Side::First); },
                        [&](const TransposeRight&) { return partial_transpose(z, Side::Second); },
                        [&](const Flip&) {
                          const ComplexMatrix f = swap_operator(n);
                          return TensorMatrix(m, n, f * z.mat() * f);
                        },
                        [&](const AdGlobal& a) { return TensorMatrix(m, n, congruence(a.v, z.mat())); },
                    },
                    atom);
}

TensorMatrix apply_atoms(const TransformSpec& spec, const TensorMatrix& z) {
  if (z.m() != spec.m || z.n() != spec.n) throw Error(ErrorCode::DimMismatch, "tensor does not match the transform dimensions");
  TensorMatrix out = z;
  for (const auto& atom : spec.atoms) out = apply_atom(atom, out);
  return out;
}

SuperOp compile(const TransformSpec& spec, double min_rcond) {
  validate(spec, min_rcond);
  return SuperOp::from_function(spec.m, spec.n, [&](const ComplexMatrix& x) {
    return apply_atoms(spec, TensorMatrix(spec.m, spec.n, x)).mat();
  });
}

TensorMatrix apply_transform(const SuperOp& theta, const TensorMatrix& z) { return theta.apply(z); }

PreservationResult preserves_cone_sampled(const SuperOp& theta, const ConeId& cone, std::size_t samples,
                                          std::uint64_t seed, std::size_t restarts) {
  const std::size_t m = theta.m(), n = theta.n(), k = cone.k;
  check_cone(cone, m, n);
  const bool schmidt = cone.family == ConeFamily::SchmidtNumber || cone.family == ConeFamily::KSuperpositive;
  const ConeFamily tested = schmidt ? ConeFamily::SchmidtNumber : ConeFamily::BlockPositive;

  PreservationResult result;
  result.worst_margin = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = derive_seed(seed, s);
    TensorMatrix z;
    Certificate member;
    if (s == 0) {
      // Canonical members: |Ω_k><Ω_k| ∈ S_k, k·I - |Ω><Ω| ∈ BP_k.
      const auto omega_k = max_entangled_vector(m, n, k);
      if (schmidt) {
        z = TensorMatrix(m, n, outer(omega_k, omega_k));
        member.decomposition.push_back({1.0, omega_k});
      } else {
        z = gen_kpos_witness(m, n, k).choi();
        member.witness_terms.push_back(
            {1.0, k, ComplexMatrix::identity(m), ComplexMatrix::identity(n)});
      }
      member.verdict = Verdict::InCone;
      member.cone = {tested, k};
      member.m = m;
      member.n = n;
      member.method = "construction";
    } else {
      const std::size_t terms = 1 + rng.index(3);
      std::tie(z, member) = schmidt ? gen_sk_state(m, n, k, terms, sample_seed)
                                    : gen_bpk_member(m, n, k, terms, sample_seed);
    }
    ++result.samples;

    const TensorMatrix image = theta.apply(z);
    const double scale = std::max(image.mat().frobenius_norm(), 1e-300);
    const double defect = hermiticity_defect(image.mat());
    Certificate image_cert;
    if (defect > 1e-8 * std::max(1.0, image.mat().max_abs())) {
      // The cones hold Hermitian matrices only.
      image_cert.verdict = Verdict::Refuted;
      image_cert.cone = {tested, k};
      image_cert.m = m;
      image_cert.n = n;
      image_cert.method = "non-hermitian";
      image_cert.value = -defect;
    } else {
      const TensorMatrix h(m, n, Complex(0.5) * (image.mat() + image.mat().adjoint()));
      image_cert = schmidt ? schmidt_number_certify(h, k, {200, sample_seed, false})
                           : block_positivity_certify(h, k, restarts, sample_seed);
    }
    const double margin = image_cert.value.value_or(0.0) / scale;
    result.worst_margin = std::min(result.worst_margin, margin);
    if (image_cert.verdict == Verdict::Refuted) {
      result.counterexample = true;
      result.member = z;
      result.member_certificate = std::move(member);
      result.image_certificate = std::move(image_cert);
      return result;
    }
  }
  return result;
}

}  // namespace choicone
