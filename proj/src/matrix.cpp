#include "choicone/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "choicone/error.hpp"

namespace choicone {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::NotDualPair: return "NotDualPair";
    case ErrorCode::SingularTheta: return "SingularTheta";
    case ErrorCode::SingularAd: return "SingularAd";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::BadDims: return "BadDims";
    case ErrorCode::NotHermiticityPreserving: return "NotHermiticityPreserving";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::Format: return "FormatError";
  }
  return "Unknown";
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::DimMismatch, "entries length " + std::to_string(data_.size()) +
                                            " != " + std::to_string(rows_ * cols_));
  }
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  ComplexMatrix out(rows, cols);
  out(i, j) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  return out;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> v) {
  return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& x : out.data_) x = std::conj(x);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& x : data_) x *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }
ComplexMatrix operator*(ComplexMatrix a, Complex scalar) { return a *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimMismatch, "matrix product inner dimensions " + std::to_string(a.cols()) +
                                            " vs " + std::to_string(b.rows()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (!h.square()) throw Error(ErrorCode::DimMismatch, "Hermiticity needs a square matrix");
  double m = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j) m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
  return m;
}

bool is_hermitian(const ComplexMatrix& h, double tol) {
  return h.square() && hermiticity_defect(h) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t p = b.rows(), q = b.cols();
  ComplexMatrix out(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) out(i * p + k, j * q + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w) {
  ComplexMatrix out(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) out(i, j) = v[i] * std::conj(w[j]);
  return out;
}

double vector_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimMismatch, "matvec");
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix matvec_column(const ComplexMatrix& a, std::span<const Complex> v) {
  return ComplexMatrix::column(matvec(a, v));
}

Complex expectation(const ComplexMatrix& a, std::span<const Complex> v) {
  const auto av = matvec(a, v);
  Complex s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(v[i]) * av[i];
  return s;
}

TensorMatrix::TensorMatrix(std::size_t m, std::size_t n, ComplexMatrix mat)
    : m_(m), n_(n), mat_(std::move(mat)) {
  if (m_ == 0 || n_ == 0) throw Error(ErrorCode::BadDims, "tensor factors must be nonzero");
  if (mat_.rows() != m_ * n_ || mat_.cols() != m_ * n_) {
    throw Error(ErrorCode::DimMismatch, "tensor matrix must be " + std::to_string(m_ * n_) + "x" +
                                            std::to_string(m_ * n_));
  }
}

TensorMatrix TensorMatrix::product(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (!x.square() || !y.square()) throw Error(ErrorCode::DimMismatch, "tensor factors must be square");
  return {x.rows(), y.rows(), kron(x, y)};
}

ComplexMatrix partial_trace(const TensorMatrix& z, Side side) {
  const std::size_t m = z.m(), n = z.n();
  const auto& a = z.mat();
  if (side == Side::Second) {
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < n; ++k) out(i, j) += a(i * n + k, j * n + k);
    return out;
  }
  if (side == Side::First) {
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < m; ++i) out(k, l) += a(i * n + k, i * n + l);
    return out;
  }
  throw Error(ErrorCode::BadDims, "partial trace over both factors is the full trace");
}

TensorMatrix partial_transpose(const TensorMatrix& z, Side side) {
  const std::size_t m = z.m(), n = z.n();
  const auto& a = z.mat();
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          std::size_t ri = i, rj = j, rk = k, rl = l;
          if (side != Side::Second) std::swap(ri, rj);
          if (side != Side::First) std::swap(rk, rl);
          out(ri * n + rk, rj * n + rl) = a(i * n + k, j * n + l);
        }
  return {m, n, std::move(out)};
}

ComplexMatrix swap_operator(std::size_t n) {
  ComplexMatrix out(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j * n + i, i * n + j) = 1.0;
  return out;
}

std::vector<Complex> max_entangled_vector(std::size_t m, std::size_t n, std::size_t r) {
  if (r == 0) r = std::min(m, n);
  if (r > std::min(m, n)) throw Error(ErrorCode::BadDims, "entangled rank exceeds min(m, n)");
  std::vector<Complex> v(m * n);
  for (std::size_t i = 0; i < r; ++i) v[i * n + i] = 1.0;
  return v;
}

}  // namespace choicone
