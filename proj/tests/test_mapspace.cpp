#include "choicone/error.hpp"
#include "choicone/linalg.hpp"
#include "choicone/mapspace.hpp"
#include "test_util.hpp"

namespace choicone {
namespace {

using testing::mat;

LinearMap random_map(Rng& rng, std::size_t m, std::size_t n) {
  return LinearMap(testing::random_tensor(rng, m, n));
}

TEST(ApplyMap, IdentityAndTranspose) {
  const ComplexMatrix e12 = ComplexMatrix::unit(2, 2, 0, 1);
  EXPECT_EQ(apply_map(LinearMap::identity(2), e12), e12);
  EXPECT_EQ(apply_map(LinearMap::transpose(2), e12), ComplexMatrix::unit(2, 2, 1, 0));
}

TEST(ApplyMap, CongruenceMatchesDirectProduct) {
  Rng rng(1);
  const ComplexMatrix s = gaussian_matrix(rng, 2, 3), x = gaussian_matrix(rng, 2, 2);
  const LinearMap phi = LinearMap::congruence(s);
  EXPECT_EQ(phi.m(), 2u);
  EXPECT_EQ(phi.n(), 3u);
  EXPECT_MAT_NEAR(apply_map(phi, x), s.adjoint() * x * s, 1e-12);
}

TEST(ApplyMap, FromFunctionRoundTrip) {
  Rng rng(2);
  const ComplexMatrix a = gaussian_matrix(rng, 3, 2), b = gaussian_matrix(rng, 2, 3);
  const auto f = [&](const ComplexMatrix& x) { return a * x.transpose() * b + x(0, 1) * ComplexMatrix::identity(3); };
  const LinearMap phi = LinearMap::from_function(2, 3, f);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix x = gaussian_matrix(rng, 2, 2);
    EXPECT_MAT_NEAR(apply_map(phi, x), f(x), 1e-12);
  }
}

TEST(ApplyMap, WrongInputShapeThrows) {
  EXPECT_THROW(apply_map(LinearMap::identity(2), ComplexMatrix(3, 3)), Error);
}

TEST(Involution, TransposeIsFixed) {
  EXPECT_EQ(involution(LinearMap::transpose(3)), LinearMap::transpose(3));
}

TEST(Involution, CongruenceIsFixed) {
  Rng rng(3);
  const LinearMap phi = LinearMap::congruence(gaussian_matrix(rng, 3, 3));
  EXPECT_MAT_NEAR(involution(phi).choi().mat(), phi.choi().mat(), 1e-12);
}

TEST(Involution, ChoiIsAdjointAndMatchesDefinition) {
  Rng rng(4);
  const LinearMap phi = random_map(rng, 2, 3);
  const LinearMap dag = involution(phi);
  EXPECT_EQ(dag.choi().mat(), phi.choi().mat().adjoint());
  const ComplexMatrix x = gaussian_matrix(rng, 2, 2);
  EXPECT_MAT_NEAR(apply_map(dag, x), apply_map(phi, x.adjoint()).adjoint(), 1e-12);
}

TEST(HermiticityPreserving, Examples) {
  Rng rng(5);
  EXPECT_TRUE(is_hermiticity_preserving(LinearMap::congruence(gaussian_matrix(rng, 2, 3)), 1e-10));
  const LinearMap itrace =
      LinearMap::from_function(2, 2, [](const ComplexMatrix& x) { return Complex(0, 1) * x.trace() * ComplexMatrix::identity(2); });
  EXPECT_FALSE(is_hermiticity_preserving(itrace, 1e-10));
  const LinearMap herm(TensorMatrix(3, 2, random_hermitian(rng, 6)));
  EXPECT_TRUE(is_hermiticity_preserving(herm, 1e-12));
}

TEST(Kraus, SingleIdentityIsIdentityMap) {
  const std::vector<ComplexMatrix> k{ComplexMatrix::identity(3)};
  EXPECT_EQ(kraus_to_choi(k), LinearMap::identity(3));
}

TEST(Kraus, PinchingChoiIsDiagonal) {
  const std::vector<ComplexMatrix> k{ComplexMatrix::unit(2, 2, 0, 0), ComplexMatrix::unit(2, 2, 1, 1)};
  const LinearMap pinch = kraus_to_choi(k);
  const std::vector<Complex> diag{1.0, 0.0, 0.0, 1.0};
  EXPECT_EQ(pinch.choi().mat(), ComplexMatrix::diagonal(diag));
  EXPECT_EQ(apply_map(pinch, mat(2, 2, {1.0, 2.0, 3.0, 4.0})), mat(2, 2, {1.0, 0.0, 0.0, 4.0}));
}

TEST(Kraus, TransposeIsNotCompletelyPositive) {
  try {
    choi_to_kraus(LinearMap::transpose(2));
    FAIL() << "expected NotCompletelyPositive";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCompletelyPositive);
  }
}

TEST(Kraus, RoundTripRandomCpMaps) {
  Rng rng(6);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
    std::vector<ComplexMatrix> k;
    for (int i = 0; i < 3; ++i) k.push_back(gaussian_matrix(rng, n, m));
    const LinearMap phi = kraus_to_choi(k);
    EXPECT_GE(hermitian_eig(phi.choi().mat()).values.back(), -1e-10);
    const auto back = choi_to_kraus(phi);
    EXPECT_LE(back.size(), 3u);
    EXPECT_MAT_NEAR(kraus_to_choi(back).choi().mat(), phi.choi().mat(), 1e-9);
    const ComplexMatrix x = gaussian_matrix(rng, m, m);
    ComplexMatrix direct(n, n);
    for (const auto& kk : k) direct += kk * x * kk.adjoint();
    EXPECT_MAT_NEAR(apply_map(phi, x), direct, 1e-10);
  }
}

TEST(Kraus, MixedShapesThrow) {
  const std::vector<ComplexMatrix> k{ComplexMatrix(2, 2), ComplexMatrix(3, 2)};
  EXPECT_THROW(kraus_to_choi(k), Error);
}

TEST(Compose, IdentitiesAreNeutral) {
  Rng rng(7);
  const LinearMap phi = random_map(rng, 2, 3);
  EXPECT_MAT_NEAR(compose(LinearMap::identity(3), phi, LinearMap::identity(2)).choi().mat(), phi.choi().mat(), 1e-12);
}

TEST(Compose, MatchesSequentialApplication) {
  Rng rng(8);
  const LinearMap sigma = random_map(rng, 2, 2), phi = random_map(rng, 2, 3), tau = random_map(rng, 3, 3);
  const LinearMap c = compose(tau, phi, sigma);
  const ComplexMatrix x = gaussian_matrix(rng, 2, 2);
  EXPECT_MAT_NEAR(apply_map(c, x), apply_map(tau, apply_map(phi, apply_map(sigma, x))), 1e-10);
}

TEST(Compose, DimensionMismatchThrows) {
  try {
    compose(LinearMap::identity(2), LinearMap::identity(3));
    FAIL() << "expected DimMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(TraceIdentity, ChoiIsIdentity) {
  EXPECT_EQ(LinearMap::trace_identity(2, 3).choi().mat(), ComplexMatrix::identity(6));
}

}  // namespace
}  // namespace choicone
