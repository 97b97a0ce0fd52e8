#include <cmath>

#include "choicone/error.hpp"
#include "choicone/linalg.hpp"
#include "test_util.hpp"

namespace choicone {
namespace {

using testing::mat;
using testing::to_eigen;

ComplexMatrix reconstruct(const Eigensystem& es) {
  const std::size_t n = es.values.size();
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = es.values[i];
  return es.vectors * d * es.vectors.adjoint();
}

ComplexMatrix reconstruct(const SingularSystem& sv) {
  const std::size_t k = sv.values.size();
  ComplexMatrix d(k, k);
  for (std::size_t i = 0; i < k; ++i) d(i, i) = sv.values[i];
  return sv.u * d * sv.v.adjoint();
}

TEST(Matrix, RejectsNonFiniteEntries) {
  const double nan = std::nan("");
  try {
    ComplexMatrix(1, 2, {1.0, Complex(nan, 0.0)});
    FAIL() << "expected NonFinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
}

TEST(Matrix, RejectsWrongEntryCount) {
  try {
    ComplexMatrix(2, 2, {1.0, 2.0, 3.0});
    FAIL() << "expected DimMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(Matrix, ProductShapeMismatchThrows) {
  EXPECT_THROW(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), Error);
  EXPECT_THROW(ComplexMatrix(2, 3) + ComplexMatrix(3, 2), Error);
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
}

TEST(Kron, MatrixUnitsLandAtCompositeIndex) {
  const ComplexMatrix k = kron(ComplexMatrix::unit(2, 2, 0, 0), ComplexMatrix::unit(2, 2, 1, 1));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(k(i, j), (i == 1 && j == 1) ? Complex(1.0) : Complex(0.0));
}

TEST(Kron, MatchesEigenKroneckerOnRectangularFactors) {
  Rng rng(11);
  const ComplexMatrix a = gaussian_matrix(rng, 2, 3), b = gaussian_matrix(rng, 3, 2);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6u);
  ASSERT_EQ(k.cols(), 6u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 2; ++q) EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
}

TEST(HermitianEig, IdentityHasUnitSpectrum) {
  const auto es = hermitian_eig(ComplexMatrix::identity(3));
  ASSERT_EQ(es.values.size(), 3u);
  for (double v : es.values) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(HermitianEig, PauliZ) {
  const auto es = hermitian_eig(mat(2, 2, {1.0, 0.0, 0.0, -1.0}));
  EXPECT_NEAR(es.values[0], 1.0, 1e-14);
  EXPECT_NEAR(es.values[1], -1.0, 1e-14);
}

TEST(HermitianEig, RandomReconstructionAndEigenOracle) {
  Rng rng(5);
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    const ComplexMatrix h = random_hermitian(rng, n);
    const auto es = hermitian_eig(h);
    EXPECT_MAT_NEAR(reconstruct(es), h, 1e-10);
    EXPECT_MAT_NEAR(es.vectors.adjoint() * es.vectors, ComplexMatrix::identity(n), 1e-12);
    for (std::size_t i = 1; i < n; ++i) EXPECT_GE(es.values[i - 1], es.values[i]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(h));
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(es.values[i], oracle.eigenvalues()(static_cast<Eigen::Index>(n - 1 - i)), 1e-10);
  }
}

TEST(HermitianEig, DegenerateSpectrum) {
  const auto es = hermitian_eig(swap_operator(3));
  EXPECT_NEAR(es.values.front(), 1.0, 1e-12);
  EXPECT_NEAR(es.values.back(), -1.0, 1e-12);
  int negatives = 0;
  for (double v : es.values) negatives += v < 0;
  EXPECT_EQ(negatives, 3);
}

TEST(HermitianEig, NonHermitianInputThrows) {
  try {
    hermitian_eig(mat(2, 2, {0.0, 1.0, 0.0, 0.0}));
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(Svd, DiagonalWithZero) {
  const auto sv = svd(mat(2, 2, {3.0, 0.0, 0.0, 0.0}));
  EXPECT_NEAR(sv.values[0], 3.0, 1e-14);
  EXPECT_NEAR(sv.values[1], 0.0, 1e-14);
}

TEST(Svd, SwapIsUnitary) {
  const auto sv = svd(swap_operator(2));
  ASSERT_EQ(sv.values.size(), 4u);
  for (double s : sv.values) EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(Svd, RandomRectangularMatchesEigen) {
  Rng rng(9);
  for (auto [r, c] : {std::pair<std::size_t, std::size_t>{3, 4}, {4, 3}, {6, 2}, {1, 5}}) {
    const ComplexMatrix a = gaussian_matrix(rng, r, c);
    const auto sv = svd(a);
    EXPECT_MAT_NEAR(reconstruct(sv), a, 1e-10);
    Eigen::JacobiSVD<Eigen::MatrixXcd> oracle(to_eigen(a));
    for (std::size_t i = 0; i < sv.values.size(); ++i)
      EXPECT_NEAR(sv.values[i], oracle.singularValues()(static_cast<Eigen::Index>(i)), 1e-10);
  }
}

TEST(Svd, RankDeficientInput) {
  Rng rng(12);
  const ComplexMatrix a = gaussian_matrix(rng, 5, 1) * gaussian_matrix(rng, 1, 4);
  const auto sv = svd(a);
  EXPECT_MAT_NEAR(reconstruct(sv), a, 1e-10);
  EXPECT_GT(sv.values[0], 0.1);
  for (std::size_t i = 1; i < sv.values.size(); ++i) EXPECT_LT(sv.values[i], 1e-10);
}

TEST(LuInverse, RandomInverseAndRcond) {
  Rng rng(3);
  const ComplexMatrix a = random_nonsingular(rng, 5);
  const auto inv = lu_inverse(a);
  EXPECT_MAT_NEAR(a * inv.matrix, ComplexMatrix::identity(5), 1e-10);
  EXPECT_GT(inv.rcond, 0.0);
  EXPECT_LE(inv.rcond, 1.0);
}

TEST(LuInverse, SingularMatrixHasZeroRcond) {
  const auto inv = lu_inverse(mat(2, 2, {1.0, 2.0, 2.0, 4.0}));
  EXPECT_LT(inv.rcond, 1e-12);
}

TEST(PartialTrace, ProductMarginals) {
  Rng rng(4);
  const ComplexMatrix x = gaussian_matrix(rng, 2, 2), y = gaussian_matrix(rng, 3, 3);
  const TensorMatrix z = TensorMatrix::product(x, y);
  EXPECT_MAT_NEAR(partial_trace(z, Side::Second), y.trace() * x, 1e-12);
  EXPECT_MAT_NEAR(partial_trace(z, Side::First), x.trace() * y, 1e-12);
}

TEST(PartialTrace, MaxEntangledMarginalIsIdentity) {
  const TensorMatrix z(2, 2, testing::max_entangled_projector(2));
  EXPECT_EQ(partial_trace(z, Side::First), ComplexMatrix::identity(2));
  EXPECT_EQ(partial_trace(z, Side::Second), ComplexMatrix::identity(2));
}

TEST(PartialTranspose, MaxEntangledBecomesSwap) {
  const TensorMatrix z(2, 2, testing::max_entangled_projector(2));
  EXPECT_EQ(partial_transpose(z, Side::First).mat(), swap_operator(2));
  EXPECT_EQ(partial_transpose(z, Side::Second).mat(), swap_operator(2));
}

TEST(PartialTranspose, InvolutionAndComposition) {
  Rng rng(6);
  const TensorMatrix z = testing::random_tensor(rng, 2, 3);
  for (Side side : {Side::First, Side::Second, Side::Both})
    EXPECT_EQ(partial_transpose(partial_transpose(z, side), side), z);
  EXPECT_EQ(partial_transpose(z, Side::Both).mat(), z.mat().transpose());
  EXPECT_EQ(partial_transpose(partial_transpose(z, Side::First), Side::Second), partial_transpose(z, Side::Both));
}

TEST(PartialTranspose, ActsOnTheNamedFactor) {
  Rng rng(8);
  const ComplexMatrix x = gaussian_matrix(rng, 2, 2), y = gaussian_matrix(rng, 3, 3);
  const TensorMatrix z = TensorMatrix::product(x, y);
  EXPECT_MAT_NEAR(partial_transpose(z, Side::First).mat(), kron(x.transpose(), y), 1e-14);
  EXPECT_MAT_NEAR(partial_transpose(z, Side::Second).mat(), kron(x, y.transpose()), 1e-14);
}

TEST(TensorMatrix, RejectsWrongShape) {
  try {
    TensorMatrix(2, 3, ComplexMatrix(5, 5));
    FAIL() << "expected DimMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(Random, StreamsAreReproducible) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.complex_gaussian(), b.complex_gaussian());
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Random, HaarUnitaryIsUnitary) {
  Rng rng(13);
  const ComplexMatrix u = haar_unitary(rng, 4);
  EXPECT_MAT_NEAR(u.adjoint() * u, ComplexMatrix::identity(4), 1e-12);
}

TEST(Reshape, RoundTrip) {
  Rng rng(14);
  const auto v = gaussian_vector(rng, 6);
  const ComplexMatrix r = reshape(v, 2, 3);
  EXPECT_EQ(r(1, 0), v[3]);
  EXPECT_EQ(flatten(r), v);
}

}  // namespace
}  // namespace choicone
