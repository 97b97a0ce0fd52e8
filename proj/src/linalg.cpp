#include "choicone/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "choicone/error.hpp"

namespace choicone {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kEps = 1e-15;

}  // namespace

std::vector<Complex> Eigensystem::vector(std::size_t j) const {
  std::vector<Complex> v(vectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, j);
  return v;
}

Eigensystem hermitian_eig(const ComplexMatrix& h, double tol) {
  if (!h.square()) throw Error(ErrorCode::DimMismatch, "eigendecomposition needs a square matrix");
  const double defect = hermiticity_defect(h);
  if (defect > tol) {
    throw Error(ErrorCode::NotHermitian, "||H - H*||_max = " + std::to_string(defect));
  }
  const std::size_t n = h.rows();
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double norm = a.frobenius_norm();
  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= kEps * norm || off == 0.0) break;
    if (sweep >= kMaxSweeps) throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        if (b <= 1e-300 || b <= 1e-18 * norm) continue;
        const Complex phase = apq / b;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * b);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, conj(phase)) · [[c, s], [-s, c]]
        const Complex gpp = c, gpq = s, gqp = -s * std::conj(phase), gqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  Eigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

namespace {

// Fills columns [from, k) of q with unit vectors orthogonal to the columns before.
void complete_orthonormal(ComplexMatrix& q, std::size_t from) {
  const std::size_t r = q.rows(), k = q.cols();
  std::size_t candidate = 0;
  for (std::size_t j = from; j < k; ++j) {
    for (; candidate < r; ++candidate) {
      std::vector<Complex> w(r);
      w[candidate] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = 0; c < j; ++c) {
          Complex proj = 0.0;
          for (std::size_t i = 0; i < r; ++i) proj += std::conj(q(i, c)) * w[i];
          for (std::size_t i = 0; i < r; ++i) w[i] -= proj * q(i, c);
        }
      }
      const double nrm = vector_norm(w);
      if (nrm > 1e-6) {
        for (std::size_t i = 0; i < r; ++i) q(i, j) = w[i] / nrm;
        ++candidate;
        break;
      }
    }
  }
}

SingularSystem svd_tall(const ComplexMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(c);
  // Columns below this squared norm are numerically zero; rotating them only
  // chases rounding noise.
  const double floor = std::pow(kEps * a.frobenius_norm(), 2);
  int sweep = 0;
  for (;; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < c; ++p) {
      for (std::size_t q = p + 1; q < c; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < r; ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        const double g = std::abs(gamma);
        if (alpha <= floor || beta <= floor || g <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase_c = std::conj(gamma / g);
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t i = 0; i < r; ++i) {
          const Complex wp = w(i, p), wq = w(i, q) * phase_c;
          w(i, p) = cs * wp - sn * wq;
          w(i, q) = sn * wp + cs * wq;
        }
        for (std::size_t i = 0; i < c; ++i) {
          const Complex vp = v(i, p), vq = v(i, q) * phase_c;
          v(i, p) = cs * vp - sn * vq;
          v(i, q) = sn * vp + cs * vq;
        }
      }
    }
    if (!rotated) break;
    if (sweep >= kMaxSweeps) throw Error(ErrorCode::NoConvergence, "one-sided Jacobi sweep cap reached");
  }

  std::vector<double> norms(c);
  for (std::size_t j = 0; j < c; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < r; ++i) s += std::norm(w(i, j));
    norms[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(c);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SingularSystem out{ComplexMatrix(r, c), std::vector<double>(c), ComplexMatrix(c, c)};
  const double smax = c > 0 ? norms[order[0]] : 0.0;
  const double cutoff = smax * kEps * static_cast<double>(std::max(r, c));
  std::size_t nonzero = 0;
  for (std::size_t j = 0; j < c; ++j) {
    const std::size_t src = order[j];
    out.values[j] = norms[src];
    for (std::size_t i = 0; i < c; ++i) out.v(i, j) = v(i, src);
    if (norms[src] > cutoff && norms[src] > 0.0) {
      for (std::size_t i = 0; i < r; ++i) out.u(i, j) = w(i, src) / norms[src];
      ++nonzero;
    }
  }
  complete_orthonormal(out.u, nonzero);
  return out;
}

}  // namespace

SingularSystem svd(const ComplexMatrix& a) {
  if (a.rows() >= a.cols()) return svd_tall(a);
  SingularSystem t = svd_tall(a.adjoint());
  return {std::move(t.v), std::move(t.values), std::move(t.u)};
}

double reciprocal_condition(const ComplexMatrix& a) {
  const auto s = svd(a).values;
  if (s.empty() || s.front() == 0.0) return 0.0;
  return s.back() / s.front();
}

namespace {

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

Inverse lu_inverse(const ComplexMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::DimMismatch, "inverse needs a square matrix");
  const std::size_t n = a.rows();
  ComplexMatrix lu = a;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > best) best = std::abs(lu(i, k)), piv = i;
    if (best == 0.0) return {};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(perm[k], perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      if (f == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  ComplexMatrix inv(n, n);
  std::vector<Complex> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = perm[i] == c ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) col[i] -= lu(i, j) * col[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) col[i] -= lu(i, j) * col[j];
      col[i] /= lu(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  const double denom = one_norm(a) * one_norm(inv);
  return {std::move(inv), denom > 0.0 ? 1.0 / denom : 0.0};
}

ComplexMatrix reshape(std::span<const Complex> v, std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols, std::vector<Complex>(v.begin(), v.end()));
}

std::vector<Complex> flatten(const ComplexMatrix& a) {
  return {a.entries().begin(), a.entries().end()};
}

}  // namespace choicone
