#include "choicone/random.hpp"

#include <cmath>
#include <numbers>

#include "choicone/linalg.hpp"

namespace choicone {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix out(rows, cols);
  for (auto& x : out.entries()) x = rng.complex_gaussian();
  return out;
}

std::vector<Complex> gaussian_vector(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& x : v) x = rng.complex_gaussian();
  return v;
}

std::vector<Complex> random_unit_vector(Rng& rng, std::size_t n) {
  auto v = gaussian_vector(rng, n);
  const double nrm = vector_norm(v);
  for (auto& x : v) x /= nrm;
  return v;
}

ComplexMatrix haar_unitary(Rng& rng, std::size_t n) {
  // Modified Gram-Schmidt on a Gaussian matrix; the positive-diagonal R
  // convention makes the result Haar distributed.
  ComplexMatrix q = gaussian_matrix(rng, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < j; ++c) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, c)) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, c);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
  }
  return q;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  const ComplexMatrix g = gaussian_matrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_nonsingular(Rng& rng, std::size_t n, double min_rcond) {
  for (;;) {
    ComplexMatrix g = gaussian_matrix(rng, n, n);
    if (reciprocal_condition(g) >= min_rcond) return g;
  }
}

}  // namespace choicone
