#include <cmath>

#include "choicone/cones.hpp"
#include "choicone/error.hpp"
#include "choicone/linalg.hpp"
#include "choicone/pairing.hpp"
#include "test_util.hpp"

namespace choicone {
namespace {

TensorMatrix max_entangled(std::size_t n) { return TensorMatrix(n, n, testing::max_entangled_projector(n)); }
TensorMatrix swap(std::size_t n) { return TensorMatrix(n, n, swap_operator(n)); }

double min_eig(const ComplexMatrix& h) { return hermitian_eig(h).values.back(); }

TEST(SchmidtRank, Examples) {
  std::vector<Complex> e11(6);
  e11[0] = 1.0;
  EXPECT_EQ(schmidt_rank(e11, 2, 3), 1u);
  EXPECT_EQ(schmidt_rank(max_entangled_vector(2, 3), 2, 3), 2u);
  EXPECT_EQ(schmidt_rank(max_entangled_vector(3, 3), 3, 3), 3u);
  const auto c = schmidt_coefficients(max_entangled_vector(3, 3), 3, 3);
  for (double s : c) EXPECT_NEAR(s, 1.0, 1e-12);
}

TEST(SchmidtRank, ZeroVectorThrows) {
  try {
    schmidt_rank(std::vector<Complex>(4), 2, 2);
    FAIL() << "expected ZeroVector";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
  }
}

TEST(CheckCone, LevelOutOfRange) {
  EXPECT_THROW(check_cone({ConeFamily::SchmidtNumber, 0}, 2, 2), Error);
  EXPECT_THROW(check_cone({ConeFamily::BlockPositive, 3}, 2, 3), Error);
  EXPECT_NO_THROW(check_cone({ConeFamily::KPositive, 2}, 2, 3));
}

TEST(ConeFamilyNames, RoundTrip) {
  for (auto f : {ConeFamily::SchmidtNumber, ConeFamily::BlockPositive, ConeFamily::KPositive,
                 ConeFamily::KSuperpositive}) {
    const auto back = parse_cone_family(to_string(f));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, f);
  }
  EXPECT_FALSE(parse_cone_family("bogus").has_value());
}

TEST(SchmidtCertify, DiagonalSeparableState) {
  const std::vector<Complex> d{1.0, 0.0, 0.0, 1.0};
  const TensorMatrix rho(2, 2, ComplexMatrix::diagonal(d));
  const Certificate c = schmidt_number_certify(rho, 1);
  EXPECT_EQ(c.verdict, Verdict::InCone);
  EXPECT_EQ(c.decomposition.size(), 2u);
  EXPECT_TRUE(certificate_holds(c, rho));
  EXPECT_LE(reassembly_residual(c, rho), 1e-12);
}

TEST(SchmidtCertify, MaxEntangledRefutedByPptAtLevelOne) {
  const TensorMatrix rho = max_entangled(2);
  const Certificate c = schmidt_number_certify(rho, 1);
  ASSERT_EQ(c.verdict, Verdict::Refuted);
  EXPECT_EQ(c.method, "ppt");
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_EQ(c.witness->kind, "ppt");
  EXPECT_NEAR(*c.value, -1.0, 1e-12);
  EXPECT_NEAR(witness_value(c, rho), -1.0, 1e-12);
  EXPECT_TRUE(certificate_holds(c, rho));
}

TEST(SchmidtCertify, MaxEntangledInConeAtFullLevel) {
  const TensorMatrix rho = max_entangled(2);
  const Certificate c = schmidt_number_certify(rho, 2);
  EXPECT_EQ(c.verdict, Verdict::InCone);
  EXPECT_TRUE(certificate_holds(c, rho));
}

TEST(SchmidtCertify, NonPsdRefutedByEigenvector) {
  const Certificate c = schmidt_number_certify(swap(2), 1);
  EXPECT_EQ(c.verdict, Verdict::Refuted);
  EXPECT_TRUE(certificate_holds(c, swap(2)));
}

TEST(SchmidtCertify, NonHermitianThrows) {
  TensorMatrix z(2, 2, ComplexMatrix::unit(4, 4, 0, 1));
  try {
    schmidt_number_certify(z, 1);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(SchmidtCertify, GeneratedMembersAreCertified) {
  for (auto [m, n, k] : {std::tuple<std::size_t, std::size_t, std::size_t>{2, 2, 1}, {2, 3, 1}, {3, 3, 1}, {3, 3, 2}}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto [rho, built] = gen_sk_state(m, n, k, 3, seed);
      EXPECT_TRUE(certificate_holds(built, rho));
      const Certificate c = schmidt_number_certify(rho, k, {200, seed, true});
      EXPECT_NE(c.verdict, Verdict::Refuted) << m << "x" << n << " k=" << k << " seed=" << seed;
      EXPECT_TRUE(certificate_holds(c, rho));
    }
  }
}

TEST(SchmidtCertify, EntangledPureStateRefutedAtLowerLevel) {
  // A Schmidt-rank-3 pure state on 3⊗3 is outside S_2.
  const auto omega = max_entangled_vector(3, 3);
  const TensorMatrix rho(3, 3, outer(omega, omega));
  const Certificate c = schmidt_number_certify(rho, 2);
  ASSERT_EQ(c.verdict, Verdict::Refuted);
  EXPECT_TRUE(certificate_holds(c, rho));
}

TEST(BlockPositivity, PsdIsNeverRefuted) {
  Rng rng(1);
  for (std::size_t k : {1u, 2u}) {
    const ComplexMatrix g = gaussian_matrix(rng, 6, 6);
    const TensorMatrix z(2, 3, g * g.adjoint());
    const Certificate c = block_positivity_certify(z, k, 5, 1);
    EXPECT_EQ(c.verdict, Verdict::InCone);
    EXPECT_TRUE(certificate_holds(c, z));
  }
}

TEST(BlockPositivity, SwapIsOneBlockPositive) {
  const Certificate c = block_positivity_certify(swap(2), 1, 50, 3);
  EXPECT_NE(c.verdict, Verdict::Refuted);
  ASSERT_TRUE(c.value.has_value());
  EXPECT_GE(*c.value, -1e-8);
}

TEST(BlockPositivity, SwapIsNotTwoBlockPositive) {
  const Certificate c = block_positivity_certify(swap(2), 2, 50, 3);
  ASSERT_EQ(c.verdict, Verdict::Refuted);
  EXPECT_NEAR(*c.value, -1.0, 1e-12);
  // The witness vector is the singlet up to phase.
  const auto& v = c.witness->vector;
  EXPECT_NEAR(std::abs(v[1]), 1.0 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(std::abs(v[2]), 1.0 / std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(std::abs(v[1] + v[2]), 0.0, 1e-10);
  EXPECT_TRUE(certificate_holds(c, swap(2)));
}

TEST(KPositive, Examples) {
  const Certificate id = k_positive_certify(LinearMap::identity(3), 3, 10, 0);
  EXPECT_EQ(id.verdict, Verdict::InCone);
  EXPECT_NE(k_positive_certify(LinearMap::identity(3), 1, 10, 0).verdict, Verdict::Refuted);

  EXPECT_NE(k_positive_certify(LinearMap::transpose(2), 1, 50, 0).verdict, Verdict::Refuted);
  EXPECT_EQ(k_positive_certify(LinearMap::transpose(2), 2, 50, 0).verdict, Verdict::Refuted);

  const LinearMap red =
      LinearMap::from_function(3, 3, [](const ComplexMatrix& x) { return x.trace() * ComplexMatrix::identity(3) - x; });
  EXPECT_NE(k_positive_certify(red, 1, 50, 0).verdict, Verdict::Refuted);
  const Certificate c2 = k_positive_certify(red, 2, 50, 0);
  ASSERT_EQ(c2.verdict, Verdict::Refuted);
  EXPECT_EQ(c2.cone.family, ConeFamily::KPositive);
  EXPECT_TRUE(certificate_holds(c2, red.choi()));
  // <ζ|C|ζ> for ζ = e1⊗e1 + e2⊗e2 normalized: (2·1 - 4)/2 = -1.
  EXPECT_LE(*c2.value, -1.0 + 1e-8);
}

TEST(KSuperpositive, Examples) {
  const LinearMap depol = LinearMap::trace_identity(2, 2);
  const Certificate c = k_superpositive_certify(depol, 1);
  EXPECT_EQ(c.verdict, Verdict::InCone);
  EXPECT_EQ(c.cone.family, ConeFamily::KSuperpositive);
  EXPECT_TRUE(certificate_holds(c, depol.choi()));

  EXPECT_EQ(k_superpositive_certify(LinearMap::identity(2), 1).verdict, Verdict::Refuted);
  const LinearMap cp = gen_cp_map(2, 3, 2, 5);
  EXPECT_EQ(k_superpositive_certify(cp, 2).verdict, Verdict::InCone);
}

TEST(Certify, DispatchAndReproducibility) {
  const auto [z, built] = gen_bpk_member(3, 3, 1, 3, 11);
  const Certificate a = certify(z, {ConeFamily::BlockPositive, 2}, 8, 42);
  const Certificate b = certify(z, {ConeFamily::BlockPositive, 2}, 8, 42);
  EXPECT_EQ(a.verdict, b.verdict);
  ASSERT_TRUE(a.value && b.value);
  EXPECT_EQ(*a.value, *b.value);
  EXPECT_EQ(a.seed, 42u);
  EXPECT_EQ(certify(z, {ConeFamily::KPositive, 1}, 4, 1).cone.family, ConeFamily::KPositive);
}

TEST(Certify, RefutationsAreSound) {
  // Every Refuted certificate must carry a witness that checks independently.
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const TensorMatrix z = testing::random_hermitian_tensor(rng, 2, 3);
    for (auto cone : {ConeId{ConeFamily::SchmidtNumber, 1}, ConeId{ConeFamily::BlockPositive, 1},
                      ConeId{ConeFamily::BlockPositive, 2}}) {
      const Certificate c = certify(z, cone, 8, trial);
      if (c.verdict != Verdict::Unknown) EXPECT_TRUE(certificate_holds(c, z));
      if (c.verdict == Verdict::Refuted) {
        EXPECT_LE(witness_value(c, z), -1e-10);
      }
    }
  }
}

TEST(Certify, NestingOfSchmidtCones) {
  // S_1 ⊂ S_2: a member certified at level 1 is never refuted at level 2.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto [rho, built] = gen_sk_state(3, 3, 1, 4, seed);
    EXPECT_NE(schmidt_number_certify(rho, 2, {100, seed, true}).verdict, Verdict::Refuted);
  }
}

TEST(Certify, TamperedCertificateFailsCheck) {
  const auto [rho, built] = gen_sk_state(2, 2, 1, 2, 3);
  Certificate bad = built;
  bad.decomposition.front().weight *= 2.0;
  EXPECT_FALSE(certificate_holds(bad, rho));
}

TEST(SeeSaw, ProductStateValueOnSwap) {
  const SeeSawResult r = see_saw_minimum(swap(3), 1, 10, 9);
  EXPECT_GE(r.value, -1e-8);
  EXPECT_EQ(schmidt_rank(r.zeta, 3, 3), 1u);
  EXPECT_NEAR(vector_norm(r.zeta), 1.0, 1e-10);
}

TEST(Generators, SkStatesArePpt) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto [rho, cert] = gen_sk_state(2, 2, 1, 3, seed);
    EXPECT_GE(min_eig(partial_transpose(rho, Side::First).mat()), -1e-10);
    for (const auto& t : cert.decomposition) EXPECT_EQ(schmidt_rank(t.zeta, 2, 2), 1u);
  }
}

TEST(Generators, KposWitnessAndCpMaps) {
  const LinearMap w = gen_kpos_witness(3, 3, 1);
  const ComplexMatrix expected = ComplexMatrix::identity(9) - testing::max_entangled_projector(3);
  EXPECT_MAT_NEAR(w.choi().mat(), expected, 1e-14);
  EXPECT_NE(k_positive_certify(w, 1, 50, 0).verdict, Verdict::Refuted);
  EXPECT_EQ(k_positive_certify(w, 2, 50, 0).verdict, Verdict::Refuted);

  const LinearMap cp = gen_cp_map(2, 3, 2, 4);
  EXPECT_GE(min_eig(cp.choi().mat()), -1e-10);
  EXPECT_EQ(gen_cp_map(2, 3, 2, 4), cp);
}

TEST(Generators, BpkMembersPairNonnegativelyWithSk) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [w, wcert] = gen_bpk_member(2, 3, 1, 2, seed);
    EXPECT_TRUE(certificate_holds(wcert, w));
    const auto [rho, rcert] = gen_sk_state(2, 3, 1, 3, seed + 100);
    EXPECT_GE(trace_pair(w.mat(), rho.mat().transpose()).real(), -1e-10);
  }
}

TEST(Generators, BadLevelThrows) {
  EXPECT_THROW(gen_sk_state(2, 2, 3, 1, 0), Error);
  EXPECT_THROW(gen_kpos_witness(2, 2, 0), Error);
}

}  // namespace
}  // namespace choicone
