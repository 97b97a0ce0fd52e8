#include "choicone/choivar.hpp"

#include <cmath>
#include <array>
#include <numbers>
#include <string>

#include "choicone/error.hpp"
#include "choicone/linalg.hpp"
#include "choicone/transforms.hpp"

namespace choicone {

Complex evaluate_form(BilinearForm form, const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || !x.square()) {
    throw Error(ErrorCode::DimMismatch, "bilinear form needs equal square shapes");
  }
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      s += x(i, j) * (form == BilinearForm::Trace ? y(i, j) : y(j, i));
  return s;
}

BasisPair::BasisPair(BilinearForm form, std::vector<ComplexMatrix> e, std::vector<ComplexMatrix> f, double tol)
    : form_(form), e_(std::move(e)), f_(std::move(f)) {
  if (e_.empty() || e_.size() != f_.size()) throw Error(ErrorCode::NotDualPair, "bases differ in length");
  m_ = e_.front().rows();
  if (e_.size() != m_ * m_) throw Error(ErrorCode::NotDualPair, "a basis of M_m needs m² elements");
  for (std::size_t a = 0; a < e_.size(); ++a) {
    for (std::size_t b = 0; b < f_.size(); ++b) {
      const Complex v = evaluate_form(form_, e_[a], f_[b]);
      const double want = a == b ? 1.0 : 0.0;
      if (std::abs(v - want) > tol) {
        throw Error(ErrorCode::NotDualPair, "<e_" + std::to_string(a) + ", f_" + std::to_string(b) +
                                                "> = " + std::to_string(v.real()) + "+" +
                                                std::to_string(v.imag()) + "i");
      }
    }
  }
}

BasisPair BasisPair::standard(std::size_t m) {
  std::vector<ComplexMatrix> e;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) e.push_back(ComplexMatrix::unit(m, m, i, j));
  return {BilinearForm::Trace, e, e};
}

BasisPair BasisPair::transposed_units(std::size_t m) {
  std::vector<ComplexMatrix> e, f;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      e.push_back(ComplexMatrix::unit(m, m, i, j));
      f.push_back(ComplexMatrix::unit(m, m, j, i));
    }
  return {BilinearForm::TraceNoFlip, std::move(e), std::move(f)};
}

namespace {

std::vector<ComplexMatrix> two_by_two(std::initializer_list<std::array<Complex, 4>> mats) {
  const double r = 1.0 / std::numbers::sqrt2;
  std::vector<ComplexMatrix> out;
  for (const auto& a : mats) out.emplace_back(2, 2, std::vector<Complex>{r * a[0], r * a[1], r * a[2], r * a[3]});
  return out;
}

}  // namespace

BasisPair BasisPair::weyl2() {
  auto e = two_by_two({{1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0}, {0, -1, 1, 0}});
  return {BilinearForm::Trace, e, e};
}

BasisPair BasisPair::pauli2() {
  const Complex i(0.0, 1.0);
  auto e = two_by_two({{1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0}, {0, -i, i, 0}});
  return {BilinearForm::TraceNoFlip, e, e};
}

BasisPair BasisPair::dual_of(BilinearForm form, std::vector<ComplexMatrix> e, double tol) {
  if (e.empty()) throw Error(ErrorCode::NotDualPair, "empty basis");
  const std::size_t m = e.front().rows(), d = m * m;
  if (e.size() != d) throw Error(ErrorCode::NotDualPair, "a basis of M_m needs m² elements");
  // G[a, b] = <e_a, u_b> with u_b the matrix units; f_b = Σ_c (G^{-1})[c, b] u_c.
  ComplexMatrix gram(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      gram(a, b) = evaluate_form(form, e[a], ComplexMatrix::unit(m, m, b / m, b % m));
  const Inverse inv = lu_inverse(gram);
  if (inv.matrix.empty() || inv.rcond < 1e-12) throw Error(ErrorCode::NotDualPair, "elements are not a basis");
  std::vector<ComplexMatrix> f;
  for (std::size_t b = 0; b < d; ++b) {
    ComplexMatrix fb(m, m);
    for (std::size_t c = 0; c < d; ++c) fb(c / m, c % m) = inv.matrix(c, b);
    f.push_back(std::move(fb));
  }
  return {form, std::move(e), std::move(f), tol};
}

bool BasisPair::hermitian(double tol) const {
  for (const auto& x : e_)
    if (!is_hermitian(x, tol)) return false;
  for (const auto& x : f_)
    if (!is_hermitian(x, tol)) return false;
  return true;
}

const TensorMatrix& choi(const LinearMap& phi) { return phi.choi(); }

TensorMatrix choi_from_basis(const BasisPair& bp, const LinearMap& phi) {
  if (bp.m() != phi.m()) throw Error(ErrorCode::DimMismatch, "basis pair lives on a different M_m");
  const std::size_t m = phi.m(), n = phi.n();
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < bp.e().size(); ++i) out += kron(bp.e()[i], apply_map(phi, bp.f()[i]));
  return {m, n, std::move(out)};
}

TensorMatrix choi_theta(const SuperOp& theta, const LinearMap& phi) {
  if (theta.m() != phi.m() || theta.n() != phi.n()) {
    throw Error(ErrorCode::DimMismatch, "Θ and φ have different dimensions");
  }
  return theta.apply(phi.choi());
}

std::optional<LinearMap> detect_left_simple(const SuperOp& theta, double tol) {
  const std::size_t m = theta.m(), n = theta.n(), d = m * n;
  const auto& t = theta.matrix();
  // Coefficient of e_ab⊗e_cd in Θ(e_ij⊗e_kl), regrouped as R[(a,b,i,j), (c,d,k,l)].
  const auto vec_index = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t dd) {
    return (b * n + dd) * d + (a * n + c);
  };
  const std::size_t m4 = m * m * m * m, n4 = n * n * n * n;
  ComplexMatrix r(m4, n4);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const std::size_t row = ((a * m + b) * m + i) * m + j;
          for (std::size_t c = 0; c < n; ++c)
            for (std::size_t dd = 0; dd < n; ++dd)
              for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                  const std::size_t col = ((c * n + dd) * n + k) * n + l;
                  r(row, col) = t(vec_index(a, b, c, dd), vec_index(i, j, k, l));
                }
        }
  const SingularSystem sv = svd(r);
  if (sv.values.empty() || sv.values[0] == 0.0) return std::nullopt;
  if (sv.values.size() > 1 && sv.values[1] > tol * sv.values[0]) return std::nullopt;

  // τ̂[(c,d),(k,l)] = conj(v[(c,d,k,l)]) must be a multiple of the identity superoperator.
  const std::size_t n2 = n * n;
  Complex g = 0.0;
  for (std::size_t p = 0; p < n2; ++p) g += std::conj(sv.v(p * n2 + p, 0));
  g /= static_cast<double>(n2);
  if (std::abs(g) == 0.0) return std::nullopt;
  double dev = 0.0;
  for (std::size_t p = 0; p < n2; ++p)
    for (std::size_t q = 0; q < n2; ++q) {
      const Complex want = p == q ? g : Complex{};
      dev += std::norm(std::conj(sv.v(p * n2 + q, 0)) - want);
    }
  // ||v|| = 1, so the deviation is already normalized.
  if (std::sqrt(dev) > tol * 10.0 && std::sqrt(dev) / (std::abs(g) * std::sqrt(static_cast<double>(n2))) > tol) {
    return std::nullopt;
  }

  ComplexMatrix c(m * m, m * m);
  const Complex factor = sv.values[0] * g;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          c(i * m + a, j * m + b) = factor * sv.u(((a * m + b) * m + i) * m + j, 0);
  return LinearMap(TensorMatrix(m, m, std::move(c)));
}

SuperOp variant_superop(ChoiVariant variant, std::size_t m, std::size_t n,
                        const std::optional<ComplexMatrix>& unitary) {
  switch (variant) {
    case ChoiVariant::Standard: return SuperOp::identity(m, n);
    case ChoiVariant::DePillis: return compile({m, n, {TransposeLeft{}}});
    case ChoiVariant::IdT: return compile({m, n, {TransposeRight{}}});
    case ChoiVariant::TT: return compile({m, n, {TransposeLeft{}, TransposeRight{}}});
    case ChoiVariant::Flip: return compile({m, n, {Flip{}}});
    case ChoiVariant::AdU:
      if (!unitary) throw Error(ErrorCode::BadDims, "ad-u variant needs a unitary");
      return compile({m, n, {AdGlobal{*unitary}}});
  }
  throw Error(ErrorCode::BadDims, "unknown Choi variant");
}

}  // namespace choicone
