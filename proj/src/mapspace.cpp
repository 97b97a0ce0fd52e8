#include "choicone/mapspace.hpp"

#include <cmath>
#include <string>

#include "choicone/error.hpp"
#include "choicone/linalg.hpp"

namespace choicone {

LinearMap LinearMap::from_function(std::size_t m, std::size_t n,
                                   const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
  ComplexMatrix c(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const ComplexMatrix y = f(ComplexMatrix::unit(m, m, i, j));
      if (y.rows() != n || y.cols() != n) throw Error(ErrorCode::DimMismatch, "map output is not n×n");
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) c(i * n + k, j * n + l) = y(k, l);
    }
  }
  return LinearMap(TensorMatrix(m, n, std::move(c)));
}

LinearMap LinearMap::identity(std::size_t n) {
  return from_function(n, n, [](const ComplexMatrix& x) { return x; });
}

LinearMap LinearMap::transpose(std::size_t n) {
  return from_function(n, n, [](const ComplexMatrix& x) { return x.transpose(); });
}

LinearMap LinearMap::congruence(const ComplexMatrix& s) {
  const ComplexMatrix sa = s.adjoint();
  return from_function(s.rows(), s.cols(), [&](const ComplexMatrix& x) { return sa * x * s; });
}

LinearMap LinearMap::trace_identity(std::size_t m, std::size_t n) {
  return from_function(m, n, [n](const ComplexMatrix& x) { return x.trace() * ComplexMatrix::identity(n); });
}

ComplexMatrix apply_map(const LinearMap& phi, const ComplexMatrix& x) {
  const std::size_t m = phi.m(), n = phi.n();
  if (x.rows() != m || x.cols() != m) {
    throw Error(ErrorCode::DimMismatch, "map input must be " + std::to_string(m) + "x" + std::to_string(m));
  }
  const auto& c = phi.choi().mat();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Complex xij = x(i, j);
      if (xij == Complex{}) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(k, l) += xij * c(i * n + k, j * n + l);
    }
  return out;
}

LinearMap involution(const LinearMap& phi) {
  return LinearMap(TensorMatrix(phi.m(), phi.n(), phi.choi().mat().adjoint()));
}

bool is_hermiticity_preserving(const LinearMap& phi, double tol) {
  return hermiticity_defect(phi.choi().mat()) <= tol;
}

LinearMap kraus_to_choi(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw Error(ErrorCode::BadDims, "empty Kraus list");
  const std::size_t n = kraus.front().rows(), m = kraus.front().cols();
  ComplexMatrix c(m * n, m * n);
  for (const auto& k : kraus) {
    if (k.rows() != n || k.cols() != m) throw Error(ErrorCode::DimMismatch, "Kraus operators differ in shape");
    // (I ⊗ K)|Ω> has entries v[(i,a)] = K[a,i].
    std::vector<Complex> v(m * n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t a = 0; a < n; ++a) v[i * n + a] = k(a, i);
    c += outer(v, v);
  }
  return LinearMap(TensorMatrix(m, n, std::move(c)));
}

std::vector<ComplexMatrix> choi_to_kraus(const LinearMap& phi, double tol) {
  const std::size_t m = phi.m(), n = phi.n();
  const Eigensystem es = hermitian_eig(phi.choi().mat(), tol);
  if (es.values.back() < -tol) {
    throw Error(ErrorCode::NotCompletelyPositive,
                "Choi matrix has eigenvalue " + std::to_string(es.values.back()));
  }
  const double cutoff = tol * std::max(1.0, es.values.front());
  std::vector<ComplexMatrix> out;
  for (std::size_t j = 0; j < es.values.size(); ++j) {
    if (es.values[j] <= cutoff) break;
    const double scale = std::sqrt(es.values[j]);
    ComplexMatrix k(n, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t a = 0; a < n; ++a) k(a, i) = scale * es.vectors(i * n + a, j);
    out.push_back(std::move(k));
  }
  return out;
}

LinearMap compose(const LinearMap& outer, const LinearMap& inner) {
  if (inner.n() != outer.m()) {
    throw Error(ErrorCode::DimMismatch, "composition: inner range " + std::to_string(inner.n()) +
                                            " vs outer domain " + std::to_string(outer.m()));
  }
  return LinearMap::from_function(inner.m(), outer.n(), [&](const ComplexMatrix& x) {
    return apply_map(outer, apply_map(inner, x));
  });
}

LinearMap compose(const LinearMap& tau, const LinearMap& phi, const LinearMap& sigma) {
  return compose(tau, compose(phi, sigma));
}

}  // namespace choicone
