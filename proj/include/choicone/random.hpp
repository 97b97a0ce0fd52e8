#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "choicone/matrix.hpp"

namespace choicone {

// Deterministic random source. Gaussian and uniform draws are computed here
// (not through <random> distributions) so streams are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n);  // [0, n)
  double gaussian();
  Complex complex_gaussian();  // E|z|^2 = 1

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Independent stream seed from (seed, stream) via splitmix64.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols);
std::vector<Complex> gaussian_vector(Rng& rng, std::size_t n);
std::vector<Complex> random_unit_vector(Rng& rng, std::size_t n);
ComplexMatrix haar_unitary(Rng& rng, std::size_t n);
ComplexMatrix random_hermitian(Rng& rng, std::size_t n);
// Gaussian matrix, redrawn until its reciprocal condition exceeds min_rcond.
ComplexMatrix random_nonsingular(Rng& rng, std::size_t n, double min_rcond = 1e-3);

}  // namespace choicone
