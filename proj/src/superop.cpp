#include "choicone/superop.hpp"

#include <cmath>
#include <string>

#include "choicone/error.hpp"
#include "choicone/linalg.hpp"

namespace choicone {

std::vector<Complex> vec_columns(const ComplexMatrix& z) {
  const std::size_t d = z.rows();
  std::vector<Complex> v(d * z.cols());
  for (std::size_t c = 0; c < z.cols(); ++c)
    for (std::size_t r = 0; r < d; ++r) v[c * d + r] = z(r, c);
  return v;
}

ComplexMatrix unvec_columns(std::span<const Complex> v, std::size_t dim) {
  ComplexMatrix z(dim, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) z(r, c) = v[c * dim + r];
  return z;
}

SuperOp::SuperOp(std::size_t m, std::size_t n, ComplexMatrix matrix)
    : m_(m), n_(n), matrix_(std::move(matrix)) {
  const std::size_t d2 = m * n * m * n;
  if (m == 0 || n == 0) throw Error(ErrorCode::BadDims, "superoperator factors must be nonzero");
  if (matrix_.rows() != d2 || matrix_.cols() != d2) {
    throw Error(ErrorCode::DimMismatch, "superoperator matrix must be " + std::to_string(d2) + "x" +
                                            std::to_string(d2));
  }
}

namespace {

// Column (c·d + r) holds vec of the image of the matrix unit e_rc.
SuperOp from_unit_images(std::size_t m, std::size_t n,
                         const std::function<ComplexMatrix(std::size_t, std::size_t)>& image) {
  const std::size_t d = m * n;
  ComplexMatrix mat(d * d, d * d);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t r = 0; r < d; ++r) {
      const ComplexMatrix img = image(r, c);
      if (img.rows() != d || img.cols() != d) throw Error(ErrorCode::DimMismatch, "superoperator image shape");
      const std::size_t col = c * d + r;
      for (std::size_t cc = 0; cc < d; ++cc)
        for (std::size_t rr = 0; rr < d; ++rr) mat(cc * d + rr, col) = img(rr, cc);
    }
  }
  return {m, n, std::move(mat)};
}

}  // namespace

SuperOp SuperOp::from_function(std::size_t m, std::size_t n,
                               const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
  const std::size_t d = m * n;
  return from_unit_images(m, n, [&](std::size_t r, std::size_t c) { return f(ComplexMatrix::unit(d, d, r, c)); });
}

SuperOp SuperOp::identity(std::size_t m, std::size_t n) {
  return {m, n, ComplexMatrix::identity(m * n * m * n)};
}

SuperOp SuperOp::local(const LinearMap& sigma, const LinearMap& tau) {
  if (sigma.m() != sigma.n() || tau.m() != tau.n()) {
    throw Error(ErrorCode::DimMismatch, "local superoperator factors must be endomorphisms");
  }
  const std::size_t m = sigma.m(), n = tau.m();
  // (σ⊗τ)(e_ij ⊗ e_kl) = σ(e_ij) ⊗ τ(e_kl)
  return from_unit_images(m, n, [&](std::size_t r, std::size_t c) {
    return kron(apply_map(sigma, ComplexMatrix::unit(m, m, r / n, c / n)),
                apply_map(tau, ComplexMatrix::unit(n, n, r % n, c % n)));
  });
}

ComplexMatrix SuperOp::apply(const ComplexMatrix& z) const {
  const std::size_t d = dim();
  if (z.rows() != d || z.cols() != d) throw Error(ErrorCode::DimMismatch, "superoperator input shape");
  return unvec_columns(matvec(matrix_, vec_columns(z)), d);
}

TensorMatrix SuperOp::apply(const TensorMatrix& z) const {
  if (z.m() != m_ || z.n() != n_) {
    throw Error(ErrorCode::DimMismatch, "superoperator acts on " + std::to_string(m_) + "⊗" +
                                            std::to_string(n_) + ", got " + std::to_string(z.m()) +
                                            "⊗" + std::to_string(z.n()));
  }
  return {m_, n_, apply(z.mat())};
}

SuperOp compose(const SuperOp& after, const SuperOp& before) {
  if (after.m() != before.m() || after.n() != before.n()) {
    throw Error(ErrorCode::DimMismatch, "superoperator composition dimensions");
  }
  return {after.m(), after.n(), after.matrix() * before.matrix()};
}

SuperOp scaled(const SuperOp& theta, Complex factor) {
  return {theta.m(), theta.n(), factor * theta.matrix()};
}

SuperOp invert(const SuperOp& theta, double min_rcond) {
  Inverse inv = lu_inverse(theta.matrix());
  if (inv.matrix.empty() || inv.rcond < min_rcond) {
    throw Error(ErrorCode::SingularTheta, "reciprocal condition " + std::to_string(inv.rcond));
  }
  return {theta.m(), theta.n(), std::move(inv.matrix)};
}

double max_abs_diff(const SuperOp& a, const SuperOp& b) {
  return max_abs_diff(a.matrix(), b.matrix());
}

bool is_hermiticity_preserving_superop(const SuperOp& theta, double tol) {
  const std::size_t d = theta.dim();
  auto check = [&](const ComplexMatrix& h) { return hermiticity_defect(theta.apply(h)) <= tol; };
  for (std::size_t r = 0; r < d; ++r) {
    if (!check(ComplexMatrix::unit(d, d, r, r))) return false;
    for (std::size_t c = r + 1; c < d; ++c) {
      ComplexMatrix re(d, d), im(d, d);
      re(r, c) = 1.0;
      re(c, r) = 1.0;
      im(r, c) = Complex(0.0, 1.0);
      im(c, r) = Complex(0.0, -1.0);
      if (!check(re) || !check(im)) return false;
    }
  }
  return true;
}

}  // namespace choicone
