#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "choicone/mapspace.hpp"
#include "choicone/matrix.hpp"

namespace choicone {

enum class ConeFamily {
  SchmidtNumber,   // S_k
  BlockPositive,   // BP_k
  KPositive,       // P_k, through C_φ ∈ BP_k
  KSuperpositive,  // SP_k, through C_φ ∈ S_k
};

struct ConeId {
  ConeFamily family = ConeFamily::SchmidtNumber;
  std::size_t k = 1;
};

const char* to_string(ConeFamily family);
// "schmidt", "blockpos", "kpos", "ksuperpos"
std::optional<ConeFamily> parse_cone_family(std::string_view name);
// Throws BadDims unless 1 <= k <= min(m, n).
void check_cone(const ConeId& cone, std::size_t m, std::size_t n);

enum class Verdict { InCone, Refuted, Unknown };
const char* to_string(Verdict verdict);

struct DecompositionTerm {
  double weight = 0.0;
  std::vector<Complex> zeta;  // contributes weight·|ζ><ζ|
};

// weight·(s⊗t)* (level·I - |Ω><Ω|) (s⊗t), which is level-block-positive.
struct WitnessTerm {
  double weight = 0.0;
  std::size_t level = 1;
  ComplexMatrix s;
  ComplexMatrix t;
};

struct Witness {
  std::string kind;             // "eigenvector", "ppt", "fidelity", "seesaw"
  ComplexMatrix op;             // value = Re trace_pair(op, object)
  std::vector<Complex> vector;  // the vector the operator was built from
  double value = 0.0;
};

struct Certificate {
  Verdict verdict = Verdict::Unknown;
  ConeId cone;
  std::size_t m = 0;
  std::size_t n = 0;
  std::string method;
  // S_k: every ζ has Schmidt rank <= k. BP_k: arbitrary ζ (a PSD remainder).
  std::vector<DecompositionTerm> decomposition;
  std::vector<WitnessTerm> witness_terms;
  std::optional<Witness> witness;
  // Lowest normalized value seen (see-saw) or the witness value.
  std::optional<double> value;
  std::size_t samples_used = 0;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
};

// Number of singular values of the m×n matricization above tol·s_max.
// Throws ZeroVector.
std::size_t schmidt_rank(std::span<const Complex> zeta, std::size_t m, std::size_t n, double tol = 1e-8);
std::vector<double> schmidt_coefficients(std::span<const Complex> zeta, std::size_t m, std::size_t n);

// Witness W = (k-th Ky Fan fidelity)·I - ψ̄ψ^t. Pairs nonnegatively with S_k.
ComplexMatrix fidelity_witness(std::span<const Complex> psi, std::size_t m, std::size_t n, std::size_t k);

struct SchmidtOptions {
  std::size_t budget = 200;  // candidate vectors per search round
  std::uint64_t seed = 0;
  bool search_decomposition = true;
};

// Throws NotHermitian.
Certificate schmidt_number_certify(const TensorMatrix& rho, std::size_t k, const SchmidtOptions& options = {});
Certificate block_positivity_certify(const TensorMatrix& z, std::size_t k, std::size_t restarts = 50,
                                     std::uint64_t seed = 0);
Certificate k_positive_certify(const LinearMap& phi, std::size_t k, std::size_t restarts = 50,
                               std::uint64_t seed = 0);
Certificate k_superpositive_certify(const LinearMap& phi, std::size_t k, const SchmidtOptions& options = {});

// Dispatch on the family. `effort` is the see-saw restart count or the
// decomposition budget.
Certificate certify(const TensorMatrix& z, const ConeId& cone, std::size_t effort, std::uint64_t seed);

struct SeeSawResult {
  double value = 0.0;           // min <ζ|z|ζ> found, ζ unit with SR <= k
  std::vector<Complex> zeta;
  std::size_t restarts = 0;
};
SeeSawResult see_saw_minimum(const TensorMatrix& z, std::size_t k, std::size_t restarts, std::uint64_t seed);

// Independent checks of a certificate against the object it speaks about.
// Max-norm of Σ w|ζ><ζ| (+ witness terms) minus z.
double reassembly_residual(const Certificate& cert, const TensorMatrix& z);
// Re trace_pair(witness.op, z), recomputed.
double witness_value(const Certificate& cert, const TensorMatrix& z);
// InCone: residual within 1e-8·max(1, ||z||_max) and Schmidt ranks within k
// (for S_k). Refuted: recomputed witness value <= -1e-10. Unknown: true.
bool certificate_holds(const Certificate& cert, const TensorMatrix& z);

// Generators.
// Σ_i w_i |ζ_i><ζ_i| with random ζ_i of Schmidt rank k, certified by construction.
std::pair<TensorMatrix, Certificate> gen_sk_state(std::size_t m, std::size_t n, std::size_t k, std::size_t terms,
                                                  std::uint64_t seed);
// C_φ = k·I - |Ω><Ω| with Ω = Σ_{i<m∧n} e_i⊗e_i; for m = n, φ(x) = k·tr(x)·I - x.
LinearMap gen_kpos_witness(std::size_t m, std::size_t n, std::size_t k);
// Random Kraus operators, Choi rank `rank`.
LinearMap gen_cp_map(std::size_t m, std::size_t n, std::size_t rank, std::uint64_t seed);
// Random element of BP_k that is typically not PSD, certified by witness terms.
std::pair<TensorMatrix, Certificate> gen_bpk_member(std::size_t m, std::size_t n, std::size_t k, std::size_t terms,
                                                    std::uint64_t seed);
std::pair<LinearMap, Certificate> gen_kpos_map(std::size_t m, std::size_t n, std::size_t k, std::size_t terms,
                                               std::uint64_t seed);

}  // namespace choicone
