#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace choicone {

using Complex = std::complex<double>;

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Throws NonFinite on NaN/Inf entries, DimMismatch on a size mismatch.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  // Matrix unit e_ij of the given shape (zero-based indices).
  static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  // Column vector |v>.
  static ComplexMatrix column(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex scalar);

// Max-norm of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// ||H - H*||_max
double hermiticity_defect(const ComplexMatrix& h);
bool is_hermitian(const ComplexMatrix& h, double tol);

// (A⊗B)[i*p+k, j*q+l] = A[i,j] B[k,l] for B of size p×q.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// |v><w| for column vectors given as spans.
ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);
double vector_norm(std::span<const Complex> v);
ComplexMatrix matvec_column(const ComplexMatrix& a, std::span<const Complex> v);
std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> v);
// v* A v
Complex expectation(const ComplexMatrix& a, std::span<const Complex> v);

enum class Side { First, Second, Both };

// Element of M_m ⊗ M_n. Composite index (i,k) ↦ i*n + k.
class TensorMatrix {
 public:
  TensorMatrix() = default;
  TensorMatrix(std::size_t m, std::size_t n, ComplexMatrix mat);

  static TensorMatrix product(const ComplexMatrix& x, const ComplexMatrix& y);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return m_ * n_; }
  const ComplexMatrix& mat() const noexcept { return mat_; }

  friend bool operator==(const TensorMatrix&, const TensorMatrix&) = default;

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  ComplexMatrix mat_;
};

// Second: out[i,j] = Σ_k z[(i,k),(j,k)] (an m×m matrix).
// First:  out[k,l] = Σ_i z[(i,k),(i,l)] (an n×n matrix).
ComplexMatrix partial_trace(const TensorMatrix& z, Side side);
TensorMatrix partial_transpose(const TensorMatrix& z, Side side);

// Swap operator on C^n ⊗ C^n: e_i⊗e_j ↦ e_j⊗e_i.
ComplexMatrix swap_operator(std::size_t n);
// Σ_{i<r} e_i⊗e_i in C^m⊗C^n, with r = min(m, n) unless given.
std::vector<Complex> max_entangled_vector(std::size_t m, std::size_t n, std::size_t r = 0);

}  // namespace choicone
