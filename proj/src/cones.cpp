#include "choicone/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "choicone/error.hpp"
#include "choicone/linalg.hpp"
#include "choicone/pairing.hpp"
#include "choicone/random.hpp"

namespace choicone {

namespace {

constexpr double kRefuteTol = 1e-10;
constexpr double kReassemblyTol = 1e-8;
constexpr double kHermitianTol = 1e-8;

bool is_schmidt_family(ConeFamily f) {
  return f == ConeFamily::SchmidtNumber || f == ConeFamily::KSuperpositive;
}

void require_hermitian(const TensorMatrix& z) {
  const double defect = hermiticity_defect(z.mat());
  if (defect > kHermitianTol) {
    throw Error(ErrorCode::NotHermitian, "||z - z*||_max = " + std::to_string(defect));
  }
}

std::vector<Complex> conj_of(std::span<const Complex> v) {
  std::vector<Complex> out(v.begin(), v.end());
  for (auto& x : out) x = std::conj(x);
  return out;
}

// W = v̄ v^t, so that trace_pair(W, z) = v* z v.
ComplexMatrix expectation_operator(std::span<const Complex> v) {
  const auto c = conj_of(v);
  return outer(c, c);
}

std::vector<Complex> normalized(std::vector<Complex> v) {
  const double nv = vector_norm(v);
  if (nv == 0.0) throw Error(ErrorCode::ZeroVector, "cannot normalize a zero vector");
  for (auto& x : v) x /= nv;
  return v;
}

Certificate make_certificate(Verdict verdict, ConeFamily family, std::size_t k, const TensorMatrix& z,
                             std::string method) {
  Certificate cert;
  cert.verdict = verdict;
  cert.cone = {family, k};
  cert.m = z.m();
  cert.n = z.n();
  cert.method = std::move(method);
  return cert;
}

std::vector<DecompositionTerm> eigen_terms(const Eigensystem& es) {
  std::vector<DecompositionTerm> terms;
  const double top = es.values.empty() ? 0.0 : std::max(es.values.front(), 0.0);
  for (std::size_t j = 0; j < es.values.size(); ++j) {
    if (es.values[j] > 1e-12 * top && es.values[j] > 0.0) terms.push_back({es.values[j], es.vector(j)});
  }
  return terms;
}

Witness vector_witness(std::string kind, std::vector<Complex> v, const TensorMatrix& z) {
  Witness w;
  w.kind = std::move(kind);
  w.op = expectation_operator(v);
  w.value = trace_pair(w.op, z.mat()).real();
  w.vector = std::move(v);
  return w;
}

Witness ppt_witness(std::vector<Complex> v, const TensorMatrix& z) {
  Witness w;
  w.kind = "ppt";
  w.op = partial_transpose(TensorMatrix(z.m(), z.n(), expectation_operator(v)), Side::First).mat();
  w.value = trace_pair(w.op, z.mat()).real();
  w.vector = std::move(v);
  return w;
}

Witness fidelity_witness_for(std::vector<Complex> psi, std::size_t k, const TensorMatrix& z) {
  Witness w;
  w.kind = "fidelity";
  w.op = fidelity_witness(psi, z.m(), z.n(), k);
  w.value = trace_pair(w.op, z.mat()).real();
  w.vector = std::move(psi);
  return w;
}

// Hermitian d×d matrix as d² real coordinates.
std::vector<double> real_coordinates(const ComplexMatrix& h) {
  const std::size_t d = h.rows();
  std::vector<double> out;
  out.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    out.push_back(h(i, i).real());
    for (std::size_t j = i + 1; j < d; ++j) {
      out.push_back(h(i, j).real());
      out.push_back(h(i, j).imag());
    }
  }
  return out;
}

// Least squares min ||A x - b|| by Householder QR; columns of A given separately.
std::vector<double> least_squares(const std::vector<const std::vector<double>*>& cols, const std::vector<double>& b) {
  const std::size_t rows = b.size(), p = cols.size();
  std::vector<std::vector<double>> a(p);
  for (std::size_t j = 0; j < p; ++j) a[j] = *cols[j];
  std::vector<double> rhs = b;
  for (std::size_t j = 0; j < p && j < rows; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < rows; ++i) norm += a[j][i] * a[j][i];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = a[j][j] > 0 ? -norm : norm;
    std::vector<double> v(rows, 0.0);
    for (std::size_t i = j; i < rows; ++i) v[i] = a[j][i];
    v[j] -= alpha;
    double vv = 0.0;
    for (std::size_t i = j; i < rows; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;
    const auto reflect = [&](std::vector<double>& x) {
      double dot = 0.0;
      for (std::size_t i = j; i < rows; ++i) dot += v[i] * x[i];
      const double f = 2.0 * dot / vv;
      for (std::size_t i = j; i < rows; ++i) x[i] -= f * v[i];
    };
    for (std::size_t c = j; c < p; ++c) reflect(a[c]);
    reflect(rhs);
  }
  std::vector<double> x(p, 0.0);
  for (std::size_t jj = std::min(p, rows); jj-- > 0;) {
    double s = rhs[jj];
    for (std::size_t c = jj + 1; c < p; ++c) s -= a[c][jj] * x[c];
    x[jj] = std::abs(a[jj][jj]) > 1e-300 ? s / a[jj][jj] : 0.0;
  }
  return x;
}

// Lawson–Hanson nonnegative least squares.
std::vector<double> nnls(const std::vector<std::vector<double>>& cols, const std::vector<double>& b) {
  const std::size_t p = cols.size(), rows = b.size();
  std::vector<double> x(p, 0.0);
  std::vector<bool> passive(p, false);
  const auto residual = [&] {
    std::vector<double> r = b;
    for (std::size_t j = 0; j < p; ++j)
      if (x[j] != 0.0)
        for (std::size_t i = 0; i < rows; ++i) r[i] -= cols[j][i] * x[j];
    return r;
  };
  double scale = 0.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  const double eps = 1e-14 * std::max(1.0, scale);
  for (std::size_t outer = 0; outer < 3 * p + 10; ++outer) {
    const auto r = residual();
    std::size_t best = p;
    double best_w = eps;
    for (std::size_t j = 0; j < p; ++j) {
      if (passive[j]) continue;
      double w = 0.0;
      for (std::size_t i = 0; i < rows; ++i) w += cols[j][i] * r[i];
      if (w > best_w) {
        best_w = w;
        best = j;
      }
    }
    if (best == p) break;
    passive[best] = true;
    for (std::size_t inner = 0; inner < 3 * p + 10; ++inner) {
      std::vector<std::size_t> idx;
      std::vector<const std::vector<double>*> sub;
      for (std::size_t j = 0; j < p; ++j)
        if (passive[j]) {
          idx.push_back(j);
          sub.push_back(&cols[j]);
        }
      const auto zsub = least_squares(sub, b);
      bool feasible = true;
      for (double v : zsub) feasible = feasible && v > 0.0;
      if (feasible) {
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t q = 0; q < idx.size(); ++q) x[idx[q]] = zsub[q];
        break;
      }
      double alpha = 1.0;
      for (std::size_t q = 0; q < idx.size(); ++q) {
        if (zsub[q] <= 0.0) {
          const double xv = x[idx[q]];
          const double a = xv / (xv - zsub[q]);
          alpha = std::min(alpha, a);
        }
      }
      for (std::size_t q = 0; q < idx.size(); ++q) {
        const std::size_t j = idx[q];
        x[j] += alpha * (zsub[q] - x[j]);
        if (x[j] <= 1e-15 * std::max(1.0, scale)) {
          x[j] = 0.0;
          passive[j] = false;
        }
      }
    }
  }
  return x;
}

// Best approximation of ζ with Schmidt rank <= k.
std::vector<Complex> truncate_schmidt(std::span<const Complex> zeta, std::size_t m, std::size_t n, std::size_t k) {
  const SingularSystem sv = svd(reshape(zeta, m, n));
  ComplexMatrix z(m, n);
  for (std::size_t j = 0; j < k && j < sv.values.size(); ++j)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < n; ++b) z(a, b) += sv.values[j] * sv.u(a, j) * std::conj(sv.v(b, j));
  return flatten(z);
}

std::vector<Complex> product_vector(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  return out;
}

// Smallest-eigenvalue eigenvector of a small Hermitian matrix.
std::vector<Complex> min_eigvec(const ComplexMatrix& h) {
  const Eigensystem es = hermitian_eig(h, 1e-6);
  return es.vector(es.values.size() - 1);
}

// Product vectors a⊗b close to range(ρ): alternating minimization of
// ||P⊥ (a⊗b)||² over a and b.
std::vector<Complex> range_product(const ComplexMatrix& pperp, std::size_t m, std::size_t n, Rng& rng,
                                   double* defect) {
  auto a = random_unit_vector(rng, m);
  auto b = random_unit_vector(rng, n);
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    // Fix b: (I⊗b)* P⊥ (I⊗b) is m×m.
    ComplexMatrix qa(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) s += std::conj(b[k]) * pperp(i * n + k, j * n + l) * b[l];
        qa(i, j) = s;
      }
    a = min_eigvec(qa);
    ComplexMatrix qb(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) s += std::conj(a[i]) * pperp(i * n + k, j * n + l) * a[j];
        qb(k, l) = s;
      }
    b = min_eigvec(qb);
    const auto v = product_vector(a, b);
    const double value = expectation(pperp, v).real();
    if (last - value < 1e-14) {
      last = value;
      break;
    }
    last = value;
  }
  *defect = last;
  return product_vector(a, b);
}

std::optional<std::vector<DecompositionTerm>> fit_decomposition(const TensorMatrix& rho,
                                                                std::vector<std::vector<Complex>> candidates) {
  // Drop near-duplicates.
  std::vector<std::vector<Complex>> unique;
  for (auto& c : candidates) {
    bool dup = false;
    for (const auto& u : unique) {
      Complex ip = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) ip += std::conj(u[i]) * c[i];
      if (std::norm(ip) > 1.0 - 1e-10) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(c));
  }
  std::vector<std::vector<double>> cols;
  cols.reserve(unique.size());
  for (const auto& u : unique) cols.push_back(real_coordinates(outer(u, u)));
  const auto x = nnls(cols, real_coordinates(rho.mat()));
  std::vector<DecompositionTerm> terms;
  ComplexMatrix sum(rho.dim(), rho.dim());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] <= 0.0) continue;
    sum += Complex(x[j]) * outer(unique[j], unique[j]);
    terms.push_back({x[j], unique[j]});
  }
  if (max_abs_diff(sum, rho.mat()) > 1e-9 * std::max(1.0, rho.mat().max_abs())) return std::nullopt;
  return terms;
}

std::optional<std::vector<DecompositionTerm>> search_decomposition(const TensorMatrix& rho, const Eigensystem& es,
                                                                   std::size_t k, const SchmidtOptions& opt,
                                                                   std::size_t* samples) {
  const std::size_t m = rho.m(), n = rho.n(), d = rho.dim();
  // Eigen-ensemble: every eigenvector in the support already has SR <= k.
  auto terms = eigen_terms(es);
  bool ensemble = !terms.empty();
  for (const auto& t : terms) ensemble = ensemble && schmidt_rank(t.zeta, m, n) <= k;
  if (ensemble) return terms;

  const double top = std::max(es.values.front(), 0.0);
  ComplexMatrix pperp(d, d);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < d; ++j) {
    if (es.values[j] > 1e-9 * top) {
      ++rank;
      continue;
    }
    const auto v = es.vector(j);
    pperp += outer(v, v);
  }

  Rng rng(opt.seed);
  std::vector<std::vector<Complex>> candidates;
  for (const auto& t : terms) candidates.push_back(normalized(truncate_schmidt(t.zeta, m, n, k)));
  for (std::size_t round = 0; round < 3; ++round) {
    for (std::size_t s = 0; s < opt.budget; ++s) {
      ++*samples;
      if (k == 1) {
        double defect = 0.0;
        auto v = rank == d ? product_vector(random_unit_vector(rng, m), random_unit_vector(rng, n))
                           : range_product(pperp, m, n, rng, &defect);
        if (defect <= 1e-12) candidates.push_back(std::move(v));
      } else {
        // Alternate between range(ρ) and the SR <= k vectors.
        auto v = normalized(truncate_schmidt(gaussian_vector(rng, d), m, n, k));
        for (int it = 0; it < 50 && rank < d; ++it) {
          auto proj = v;
          const auto off = matvec(pperp, v);
          for (std::size_t i = 0; i < d; ++i) proj[i] -= off[i];
          v = normalized(truncate_schmidt(proj, m, n, k));
          if (expectation(pperp, v).real() <= 1e-14) break;
        }
        if (expectation(pperp, v).real() <= 1e-12) candidates.push_back(std::move(v));
      }
    }
    if (auto fit = fit_decomposition(rho, candidates)) return fit;
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(ConeFamily family) {
  switch (family) {
    case ConeFamily::SchmidtNumber: return "schmidt";
    case ConeFamily::BlockPositive: return "blockpos";
    case ConeFamily::KPositive: return "kpos";
    case ConeFamily::KSuperpositive: return "ksuperpos";
  }
  return "?";
}

std::optional<ConeFamily> parse_cone_family(std::string_view name) {
  for (auto f : {ConeFamily::SchmidtNumber, ConeFamily::BlockPositive, ConeFamily::KPositive,
                 ConeFamily::KSuperpositive})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

void check_cone(const ConeId& cone, std::size_t m, std::size_t n) {
  if (cone.k < 1 || cone.k > std::min(m, n)) {
    throw Error(ErrorCode::BadDims, "k = " + std::to_string(cone.k) + " outside [1, " +
                                        std::to_string(std::min(m, n)) + "]");
  }
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::InCone: return "InCone";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

std::vector<double> schmidt_coefficients(std::span<const Complex> zeta, std::size_t m, std::size_t n) {
  if (zeta.size() != m * n) throw Error(ErrorCode::DimMismatch, "vector length is not m·n");
  if (vector_norm(zeta) == 0.0) throw Error(ErrorCode::ZeroVector, "Schmidt rank of the zero vector");
  return svd(reshape(zeta, m, n)).values;
}

std::size_t schmidt_rank(std::span<const Complex> zeta, std::size_t m, std::size_t n, double tol) {
  const auto s = schmidt_coefficients(zeta, m, n);
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double x) { return x > tol * s[0]; }));
}

ComplexMatrix fidelity_witness(std::span<const Complex> psi, std::size_t m, std::size_t n, std::size_t k) {
  const auto unit = normalized(std::vector<Complex>(psi.begin(), psi.end()));
  const auto s = schmidt_coefficients(unit, m, n);
  double lambda = 0.0;
  for (std::size_t j = 0; j < k && j < s.size(); ++j) lambda += s[j] * s[j];
  ComplexMatrix w = Complex(lambda) * ComplexMatrix::identity(m * n);
  w -= expectation_operator(unit);
  return w;
}

SeeSawResult see_saw_minimum(const TensorMatrix& z, std::size_t k, std::size_t restarts, std::uint64_t seed) {
  const std::size_t m = z.m(), n = z.n();
  const auto& h = z.mat();
  SeeSawResult best;
  best.value = std::numeric_limits<double>::infinity();
  best.restarts = restarts;

  // ζ[(i,l)] = Σ_j A[i,j] B[l,j]. With B's columns orthonormal, A ↦ ζ is an
  // isometry and the best A is the bottom eigenvector of M_B* z M_B.
  const auto half_step = [&](const ComplexMatrix& fixed, bool fixed_is_b, double* value) {
    const std::size_t free_dim = fixed_is_b ? m : n;
    const std::size_t p = free_dim * k;
    // Columns of M: for free index (f, j), ζ = e_f ⊗ fixed_j (or fixed_j ⊗ e_f).
    ComplexMatrix mm(m * n, p);
    for (std::size_t f = 0; f < free_dim; ++f)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t o = 0; o < fixed.rows(); ++o) {
          const std::size_t row = fixed_is_b ? f * n + o : o * n + f;
          mm(row, f * k + j) = fixed(o, j);
        }
    const ComplexMatrix q = mm.adjoint() * h * mm;
    const Eigensystem es = hermitian_eig(q, 1e-6);
    *value = es.values.back();
    const auto x = es.vector(p - 1);
    ComplexMatrix free(free_dim, k);
    for (std::size_t f = 0; f < free_dim; ++f)
      for (std::size_t j = 0; j < k; ++j) free(f, j) = x[f * k + j];
    return free;
  };

  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, r));
    ComplexMatrix b = svd(gaussian_matrix(rng, n, k)).u;
    double value = std::numeric_limits<double>::infinity();
    ComplexMatrix zeta_mat(m, n);
    for (int it = 0; it < 500; ++it) {
      double va = 0.0, vb = 0.0;
      const ComplexMatrix a = half_step(b, true, &va);
      ComplexMatrix za = a * b.transpose();
      // Re-factor with orthonormal columns on the A side.
      const SingularSystem sa = svd(za);
      ComplexMatrix ua(m, k);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < k; ++j) ua(i, j) = sa.u(i, j);
      const ComplexMatrix bn = half_step(ua, false, &vb);
      zeta_mat = ua * bn.transpose();
      const SingularSystem sb = svd(zeta_mat);
      b = ComplexMatrix(n, k);
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t j = 0; j < k; ++j) b(l, j) = std::conj(sb.v(l, j));
      const bool done = value - vb < 1e-12;
      value = std::min(value, vb);
      if (done) break;
    }
    if (value < best.value) {
      best.value = value;
      best.zeta = normalized(flatten(zeta_mat));
    }
  }
  if (!best.zeta.empty()) best.value = expectation(h, best.zeta).real();
  return best;
}

Certificate schmidt_number_certify(const TensorMatrix& rho, std::size_t k, const SchmidtOptions& options) {
  const std::size_t m = rho.m(), n = rho.n();
  check_cone({ConeFamily::SchmidtNumber, k}, m, n);
  require_hermitian(rho);
  const Eigensystem es = hermitian_eig(rho.mat(), kHermitianTol);
  const auto finish = [&](Certificate c) {
    c.seed = options.seed;
    return c;
  };

  if (es.values.back() < -kRefuteTol) {
    auto c = make_certificate(Verdict::Refuted, ConeFamily::SchmidtNumber, k, rho, "eigenvalue");
    c.witness = vector_witness("eigenvector", es.vector(es.values.size() - 1), rho);
    c.value = c.witness->value;
    return finish(c);
  }
  if (k == std::min(m, n)) {
    auto c = make_certificate(Verdict::InCone, ConeFamily::SchmidtNumber, k, rho, "eigen");
    c.decomposition = eigen_terms(es);
    c.value = es.values.back();
    return finish(c);
  }

  bool ppt_exact = false;
  double ppt_min = 0.0;
  if (k == 1) {
    const TensorMatrix pt = partial_transpose(rho, Side::First);
    const Eigensystem ps = hermitian_eig(pt.mat(), kHermitianTol);
    if (ps.values.back() < -kRefuteTol) {
      auto c = make_certificate(Verdict::Refuted, ConeFamily::SchmidtNumber, k, rho, "ppt");
      c.witness = ppt_witness(ps.vector(ps.values.size() - 1), rho);
      c.value = c.witness->value;
      return finish(c);
    }
    ppt_exact = m * n <= 6;
    ppt_min = ps.values.back();
  }

  std::size_t samples = 0;
  if (options.search_decomposition) {
    if (auto terms = search_decomposition(rho, es, k, options, &samples)) {
      auto c = make_certificate(Verdict::InCone, ConeFamily::SchmidtNumber, k, rho, "decomposition");
      c.decomposition = std::move(*terms);
      c.samples_used = samples;
      return finish(c);
    }
  }
  if (ppt_exact) {
    auto c = make_certificate(Verdict::InCone, ConeFamily::SchmidtNumber, k, rho, "ppt");
    c.value = ppt_min;
    c.samples_used = samples;
    return finish(c);
  }

  // Fidelity witnesses built from the eigenvectors.
  std::optional<Witness> best;
  for (std::size_t j = 0; j < es.values.size(); ++j) {
    auto w = fidelity_witness_for(es.vector(j), k, rho);
    if (!best || w.value < best->value) best = std::move(w);
  }
  if (best && best->value <= -kRefuteTol) {
    auto c = make_certificate(Verdict::Refuted, ConeFamily::SchmidtNumber, k, rho, "fidelity");
    c.value = best->value;
    c.witness = std::move(best);
    c.samples_used = samples;
    return finish(c);
  }
  auto c = make_certificate(Verdict::Unknown, ConeFamily::SchmidtNumber, k, rho, "inconclusive");
  if (best) c.value = best->value;
  c.samples_used = samples;
  return finish(c);
}

Certificate block_positivity_certify(const TensorMatrix& z, std::size_t k, std::size_t restarts,
                                     std::uint64_t seed) {
  const std::size_t m = z.m(), n = z.n();
  check_cone({ConeFamily::BlockPositive, k}, m, n);
  require_hermitian(z);
  const Eigensystem es = hermitian_eig(z.mat(), kHermitianTol);
  Certificate c;
  if (es.values.back() >= -kRefuteTol) {
    c = make_certificate(Verdict::InCone, ConeFamily::BlockPositive, k, z, "psd");
    c.decomposition = eigen_terms(es);
    c.value = es.values.back();
  } else if (k == std::min(m, n)) {
    c = make_certificate(Verdict::Refuted, ConeFamily::BlockPositive, k, z, "eigenvalue");
    c.witness = vector_witness("eigenvector", es.vector(es.values.size() - 1), z);
    c.value = c.witness->value;
  } else {
    const SeeSawResult r = see_saw_minimum(z, k, restarts, seed);
    if (r.value <= -kRefuteTol) {
      c = make_certificate(Verdict::Refuted, ConeFamily::BlockPositive, k, z, "seesaw");
      c.witness = vector_witness("seesaw", r.zeta, z);
      c.value = c.witness->value;
    } else {
      c = make_certificate(Verdict::Unknown, ConeFamily::BlockPositive, k, z, "seesaw");
      c.value = r.value;
    }
    c.restarts = r.restarts;
    c.samples_used = r.restarts;
  }
  c.seed = seed;
  return c;
}

Certificate k_positive_certify(const LinearMap& phi, std::size_t k, std::size_t restarts, std::uint64_t seed) {
  auto c = block_positivity_certify(phi.choi(), k, restarts, seed);
  c.cone.family = ConeFamily::KPositive;
  return c;
}

Certificate k_superpositive_certify(const LinearMap& phi, std::size_t k, const SchmidtOptions& options) {
  auto c = schmidt_number_certify(phi.choi(), k, options);
  c.cone.family = ConeFamily::KSuperpositive;
  return c;
}

Certificate certify(const TensorMatrix& z, const ConeId& cone, std::size_t effort, std::uint64_t seed) {
  Certificate c;
  if (is_schmidt_family(cone.family)) {
    c = schmidt_number_certify(z, cone.k, {effort, seed, true});
  } else {
    c = block_positivity_certify(z, cone.k, effort, seed);
  }
  c.cone.family = cone.family;
  return c;
}

double reassembly_residual(const Certificate& cert, const TensorMatrix& z) {
  const std::size_t d = z.dim();
  ComplexMatrix sum(d, d);
  for (const auto& t : cert.decomposition) {
    if (t.zeta.size() != d) throw Error(ErrorCode::DimMismatch, "decomposition vector has the wrong length");
    sum += Complex(t.weight) * outer(t.zeta, t.zeta);
  }
  const auto omega = max_entangled_vector(z.m(), z.n());
  for (const auto& t : cert.witness_terms) {
    ComplexMatrix w = Complex(static_cast<double>(t.level)) * ComplexMatrix::identity(d);
    w -= outer(omega, omega);
    const ComplexMatrix st = kron(t.s, t.t);
    sum += Complex(t.weight) * (st.adjoint() * w * st);
  }
  return max_abs_diff(sum, z.mat());
}

double witness_value(const Certificate& cert, const TensorMatrix& z) {
  if (!cert.witness) throw Error(ErrorCode::Format, "certificate carries no witness");
  return trace_pair(cert.witness->op, z.mat()).real();
}

bool certificate_holds(const Certificate& cert, const TensorMatrix& z) {
  const std::size_t m = z.m(), n = z.n(), k = cert.cone.k;
  switch (cert.verdict) {
    case Verdict::Unknown:
      return true;
    case Verdict::InCone: {
      if (is_schmidt_family(cert.cone.family) && cert.method == "ppt" && cert.decomposition.empty()) {
        // Exact PPT regime: recheck positivity of both z and its partial transpose.
        if (k != 1 || m * n > 6) return false;
        return hermitian_eig(z.mat()).values.back() >= -kRefuteTol &&
               hermitian_eig(partial_transpose(z, Side::First).mat()).values.back() >= -kRefuteTol;
      }
      for (const auto& t : cert.decomposition) {
        if (t.weight < 0.0) return false;
        if (is_schmidt_family(cert.cone.family) && schmidt_rank(t.zeta, m, n) > k) return false;
      }
      for (const auto& t : cert.witness_terms)
        if (t.weight < 0.0 || t.level < k || is_schmidt_family(cert.cone.family)) return false;
      return reassembly_residual(cert, z) <= kReassemblyTol * std::max(1.0, z.mat().max_abs());
    }
    case Verdict::Refuted: {
      if (!cert.witness) return false;
      const auto& w = *cert.witness;
      // The stored operator must be the one the stated construction gives.
      ComplexMatrix expected;
      if (w.kind == "eigenvector") {
        expected = expectation_operator(w.vector);
      } else if (w.kind == "ppt") {
        if (!is_schmidt_family(cert.cone.family) || k != 1) return false;
        expected = partial_transpose(TensorMatrix(m, n, expectation_operator(w.vector)), Side::First).mat();
      } else if (w.kind == "fidelity") {
        if (!is_schmidt_family(cert.cone.family)) return false;
        expected = fidelity_witness(w.vector, m, n, k);
      } else if (w.kind == "seesaw") {
        if (is_schmidt_family(cert.cone.family) || schmidt_rank(w.vector, m, n) > k) return false;
        expected = expectation_operator(w.vector);
      } else {
        return false;
      }
      if (max_abs_diff(expected, w.op) > 1e-12 * std::max(1.0, expected.max_abs())) return false;
      return witness_value(cert, z) <= -kRefuteTol;
    }
  }
  return false;
}

std::pair<TensorMatrix, Certificate> gen_sk_state(std::size_t m, std::size_t n, std::size_t k, std::size_t terms,
                                                  std::uint64_t seed) {
  if (terms < 1) throw Error(ErrorCode::BadDims, "terms must be positive");
  check_cone({ConeFamily::SchmidtNumber, k}, m, n);
  Rng rng(seed);
  Certificate c;
  c.verdict = Verdict::InCone;
  c.cone = {ConeFamily::SchmidtNumber, k};
  c.m = m;
  c.n = n;
  c.method = "construction";
  c.seed = seed;
  ComplexMatrix rho(m * n, m * n);
  for (std::size_t t = 0; t < terms; ++t) {
    const ComplexMatrix a = gaussian_matrix(rng, m, k);
    const ComplexMatrix b = gaussian_matrix(rng, n, k);
    auto zeta = normalized(flatten(a * b.transpose()));
    const double w = rng.uniform(0.1, 1.0);
    rho += Complex(w) * outer(zeta, zeta);
    c.decomposition.push_back({w, std::move(zeta)});
  }
  c.samples_used = terms;
  return {TensorMatrix(m, n, std::move(rho)), std::move(c)};
}

LinearMap gen_kpos_witness(std::size_t m, std::size_t n, std::size_t k) {
  check_cone({ConeFamily::KPositive, k}, m, n);
  const auto omega = max_entangled_vector(m, n);
  ComplexMatrix c = Complex(static_cast<double>(k)) * ComplexMatrix::identity(m * n);
  c -= outer(omega, omega);
  return LinearMap(TensorMatrix(m, n, std::move(c)));
}

LinearMap gen_cp_map(std::size_t m, std::size_t n, std::size_t rank, std::uint64_t seed) {
  if (rank < 1) throw Error(ErrorCode::BadDims, "Kraus rank must be positive");
  Rng rng(seed);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t r = 0; r < rank; ++r) kraus.push_back(gaussian_matrix(rng, n, m));
  return kraus_to_choi(kraus);
}

std::pair<TensorMatrix, Certificate> gen_bpk_member(std::size_t m, std::size_t n, std::size_t k, std::size_t terms,
                                                    std::uint64_t seed) {
  if (terms < 1) throw Error(ErrorCode::BadDims, "terms must be positive");
  check_cone({ConeFamily::BlockPositive, k}, m, n);
  Rng rng(seed);
  Certificate c;
  c.verdict = Verdict::InCone;
  c.cone = {ConeFamily::BlockPositive, k};
  c.m = m;
  c.n = n;
  c.method = "construction";
  c.seed = seed;
  const auto omega = max_entangled_vector(m, n);
  ComplexMatrix base = Complex(static_cast<double>(k)) * ComplexMatrix::identity(m * n);
  base -= outer(omega, omega);
  ComplexMatrix z(m * n, m * n);
  for (std::size_t t = 0; t < terms; ++t) {
    ComplexMatrix s = gaussian_matrix(rng, m, m);
    ComplexMatrix u = gaussian_matrix(rng, n, n);
    s *= Complex(std::sqrt(static_cast<double>(m)) / s.frobenius_norm());
    u *= Complex(std::sqrt(static_cast<double>(n)) / u.frobenius_norm());
    const double w = rng.uniform(0.1, 1.0);
    const ComplexMatrix st = kron(s, u);
    z += Complex(w) * (st.adjoint() * base * st);
    c.witness_terms.push_back({w, k, std::move(s), std::move(u)});
  }
  // A small PSD remainder keeps the members off the witness family itself.
  auto zeta = random_unit_vector(rng, m * n);
  const double w = rng.uniform(0.01, 0.1);
  z += Complex(w) * outer(zeta, zeta);
  c.decomposition.push_back({w, std::move(zeta)});
  c.samples_used = terms;
  return {TensorMatrix(m, n, std::move(z)), std::move(c)};
}

std::pair<LinearMap, Certificate> gen_kpos_map(std::size_t m, std::size_t n, std::size_t k, std::size_t terms,
                                               std::uint64_t seed) {
  auto [z, c] = gen_bpk_member(m, n, k, terms, seed);
  c.cone.family = ConeFamily::KPositive;
  return {LinearMap(std::move(z)), std::move(c)};
}

}  // namespace choicone
