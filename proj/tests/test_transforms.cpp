#include "choicone/error.hpp"
#include "choicone/linalg.hpp"
#include "choicone/transforms.hpp"
#include "test_util.hpp"

namespace choicone {
namespace {

TEST(Transforms, FlipSwapsFactors) {
  const ComplexMatrix e11 = ComplexMatrix::unit(2, 2, 0, 0), e22 = ComplexMatrix::unit(2, 2, 1, 1);
  const SuperOp flip = compile({2, 2, {Flip{}}});
  EXPECT_EQ(apply_transform(flip, TensorMatrix::product(e11, e22)), TensorMatrix::product(e22, e11));
}

TEST(Transforms, AdLocalActsFactorwise) {
  Rng rng(1);
  const ComplexMatrix s = gaussian_matrix(rng, 2, 2), t = gaussian_matrix(rng, 3, 3);
  const ComplexMatrix x = gaussian_matrix(rng, 2, 2), y = gaussian_matrix(rng, 3, 3);
  const SuperOp theta = compile({2, 3, {AdLocal{s, t}}});
  const TensorMatrix got = apply_transform(theta, TensorMatrix::product(x, y));
  EXPECT_MAT_NEAR(got.mat(), kron(s.adjoint() * x * s, t.adjoint() * y * t), 1e-10);
}

TEST(Transforms, TransposeLeftTwiceIsIdentity) {
  const SuperOp twice = compile({2, 3, {TransposeLeft{}, TransposeLeft{}}});
  EXPECT_EQ(twice.matrix(), SuperOp::identity(2, 3).matrix());
}

TEST(Transforms, AtomsApplyInListOrder) {
  Rng rng(2);
  const ComplexMatrix s = gaussian_matrix(rng, 2, 2), t = gaussian_matrix(rng, 2, 2);
  const TensorMatrix z = testing::random_tensor(rng, 2, 2);
  const TransformSpec spec{2, 2, {TransposeLeft{}, AdLocal{s, t}, Flip{}}};
  TensorMatrix expected = partial_transpose(z, Side::First);
  expected = TensorMatrix(2, 2, kron(s, t).adjoint() * expected.mat() * kron(s, t));
  expected = TensorMatrix(2, 2, swap_operator(2) * expected.mat() * swap_operator(2));
  EXPECT_MAT_NEAR(apply_atoms(spec, z).mat(), expected.mat(), 1e-10);
  EXPECT_MAT_NEAR(apply_transform(compile(spec), z).mat(), expected.mat(), 1e-10);
}

TEST(Transforms, CompileIsAHomomorphism) {
  Rng rng(3);
  const TransformSpec a{2, 3, {AdLocal{gaussian_matrix(rng, 2, 2), gaussian_matrix(rng, 3, 3)}, TransposeRight{}}};
  const TransformSpec b{2, 3, {AdGlobal{haar_unitary(rng, 6)}, TransposeLeft{}}};
  TransformSpec ab = a;
  ab.atoms.insert(ab.atoms.end(), b.atoms.begin(), b.atoms.end());
  EXPECT_LE(max_abs_diff(compile(ab), compose(compile(b), compile(a))), 1e-10);
}

TEST(Transforms, CompiledSpecsPreserveHermiticity) {
  Rng rng(4);
  const TransformSpec spec{2, 3,
                           {AdLocal{gaussian_matrix(rng, 2, 2), gaussian_matrix(rng, 3, 3)}, TransposeLeft{},
                            TransposeRight{}, AdGlobal{gaussian_matrix(rng, 6, 6)}}};
  EXPECT_TRUE(is_hermiticity_preserving_superop(compile(spec), 1e-10));
  EXPECT_TRUE(is_hermiticity_preserving_superop(compile({3, 3, {Flip{}}}), 0.0));
}

TEST(Transforms, RealCombinationOfAtomsPreservesHermiticity) {
  Rng rng(5);
  const SuperOp a = compile({2, 2, {AdLocal{gaussian_matrix(rng, 2, 2), gaussian_matrix(rng, 2, 2)}}});
  const SuperOp b = compile({2, 2, {TransposeRight{}}});
  const SuperOp sum(2, 2, 0.7 * a.matrix() + (-1.3) * b.matrix());
  EXPECT_TRUE(is_hermiticity_preserving_superop(sum, 1e-10));
}

TEST(Transforms, ImaginaryScalingBreaksHermiticity) {
  ComplexMatrix m = ComplexMatrix::identity(16);
  m(0, 0) = Complex(0.0, 1.0);
  EXPECT_FALSE(is_hermiticity_preserving_superop(SuperOp(2, 2, m), 1e-10));
}

TEST(Transforms, SingularAdFactorThrows) {
  const ComplexMatrix s = testing::mat(2, 2, {1.0, 1.0, 1.0, 1.0});
  try {
    compile({2, 2, {AdLocal{s, ComplexMatrix::identity(2)}}});
    FAIL() << "expected SingularAd";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularAd);
  }
}

TEST(Transforms, ShapeErrors) {
  try {
    compile({2, 3, {Flip{}}});
    FAIL() << "expected DimMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
  try {
    validate({2, 2, {AdLocal{ComplexMatrix::identity(3), ComplexMatrix::identity(2)}}});
    FAIL() << "expected DimMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
  EXPECT_THROW(validate({2, 2, {AdGlobal{ComplexMatrix::identity(3)}}}), Error);
  EXPECT_THROW(apply_transform(SuperOp::identity(2, 2), TensorMatrix(2, 3, ComplexMatrix(6, 6))), Error);
}

TEST(Preserves, TransposeTransposeKeepsSchmidtCones) {
  const SuperOp tt = compile({2, 3, {TransposeLeft{}, TransposeRight{}}});
  for (std::size_t k : {1u, 2u}) {
    const auto r = preserves_cone_sampled(tt, {ConeFamily::SchmidtNumber, k}, 20, 1, 4);
    EXPECT_FALSE(r.counterexample);
    EXPECT_EQ(r.samples, 20u);
  }
}

TEST(Preserves, PartialTransposeBreaksS2) {
  const SuperOp tid = compile({2, 2, {TransposeLeft{}}});
  const auto r = preserves_cone_sampled(tid, {ConeFamily::SchmidtNumber, 2}, 20, 1, 4);
  ASSERT_TRUE(r.counterexample);
  ASSERT_TRUE(r.member && r.member_certificate && r.image_certificate);
  EXPECT_EQ(r.member_certificate->verdict, Verdict::InCone);
  EXPECT_EQ(r.image_certificate->verdict, Verdict::Refuted);
  EXPECT_MAT_NEAR(r.member->mat(), testing::max_entangled_projector(2), 1e-14);
  EXPECT_NEAR(*r.image_certificate->value, -1.0, 1e-12);
  EXPECT_TRUE(certificate_holds(*r.member_certificate, *r.member));
  EXPECT_TRUE(certificate_holds(*r.image_certificate, apply_transform(tid, *r.member)));
}

TEST(Preserves, PartialTransposeKeepsS1) {
  const SuperOp tid = compile({2, 2, {TransposeLeft{}}});
  EXPECT_FALSE(preserves_cone_sampled(tid, {ConeFamily::SchmidtNumber, 1}, 30, 2, 4).counterexample);
}

TEST(Preserves, AdLocalKeepsS1AndBlockPositivity) {
  Rng rng(6);
  const SuperOp theta = compile({2, 3, {AdLocal{random_nonsingular(rng, 2), random_nonsingular(rng, 3)}}});
  EXPECT_FALSE(preserves_cone_sampled(theta, {ConeFamily::SchmidtNumber, 1}, 30, 3, 4).counterexample);
  EXPECT_FALSE(preserves_cone_sampled(theta, {ConeFamily::BlockPositive, 1}, 20, 3, 4).counterexample);
}

TEST(Preserves, EntanglingUnitaryBreaksS1) {
  // CNOT maps |+><+| ⊗ |0><0| to a maximally entangled state.
  ComplexMatrix cnot(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const auto r = preserves_cone_sampled(compile({2, 2, {AdGlobal{cnot}}}), {ConeFamily::SchmidtNumber, 1}, 50, 4, 4);
  EXPECT_TRUE(r.counterexample);
  EXPECT_LT(r.worst_margin, 0.0);
}

TEST(Preserves, IsDeterministicInSeed) {
  Rng rng(7);
  const SuperOp theta = compile({2, 2, {AdGlobal{haar_unitary(rng, 4)}}});
  const auto a = preserves_cone_sampled(theta, {ConeFamily::BlockPositive, 1}, 15, 9, 3);
  const auto b = preserves_cone_sampled(theta, {ConeFamily::BlockPositive, 1}, 15, 9, 3);
  EXPECT_EQ(a.counterexample, b.counterexample);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.worst_margin, b.worst_margin);
}

}  // namespace
}  // namespace choicone
