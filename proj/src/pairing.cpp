#include "choicone/pairing.hpp"

#include <string>

#include "choicone/error.hpp"
#include "choicone/transforms.hpp"

namespace choicone {

Complex trace_pair(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorCode::DimMismatch, "trace pairing needs equal shapes");
  }
  Complex s = 0.0;
  const auto xe = x.entries(), ye = y.entries();
  for (std::size_t i = 0; i < xe.size(); ++i) s += xe[i] * ye[i];
  return s;
}

namespace {

void require_dims(const LinearMap& phi, std::size_t m, std::size_t n) {
  if (phi.m() != m || phi.n() != n) {
    throw Error(ErrorCode::DimMismatch, "map is " + std::to_string(phi.m()) + "→" + std::to_string(phi.n()) +
                                            ", tensor is " + std::to_string(m) + "⊗" + std::to_string(n));
  }
}

}  // namespace

Complex map_state_pair(const LinearMap& phi, const TensorMatrix& z) {
  require_dims(phi, z.m(), z.n());
  return trace_pair(phi.choi().mat(), z.mat());
}

Complex map_state_pair_theta(const SuperOp& theta, const LinearMap& phi, const TensorMatrix& z) {
  return map_state_pair(phi, invert(theta).apply(z));
}

SuperOp superop_dual(const SuperOp& theta) {
  return {theta.m(), theta.n(), theta.matrix().transpose()};
}

LinearMap map_dual(const LinearMap& sigma) {
  // C_{σ*}[(k,i),(l,j)] = C_σ[(i,k),(j,l)]
  const std::size_t m = sigma.m(), n = sigma.n();
  const auto& c = sigma.choi().mat();
  ComplexMatrix out(m * n, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) out(k * m + i, l * m + j) = c(i * n + k, j * n + l);
  return LinearMap(TensorMatrix(n, m, std::move(out)));
}

bool check_pairing_transform(const SuperOp& theta1, const SuperOp& theta2, const SuperOp& theta3,
                             double tol) {
  const SuperOp lhs = compose(theta1, invert(superop_dual(theta2)));
  return max_abs_diff(lhs, theta3) <= tol;
}

Complex twisted_choi_pair(const SuperOp& theta1, const SuperOp& theta2, const LinearMap& phi,
                          const TensorMatrix& z) {
  require_dims(phi, theta2.m(), theta2.n());
  const TensorMatrix twisted = theta2.apply(phi.choi());
  return trace_pair(twisted.mat(), invert(theta1).apply(z).mat());
}

Complex map_map_pair(const LinearMap& phi, const LinearMap& psi, const SuperOp& theta) {
  require_dims(psi, phi.m(), phi.n());
  require_dims(phi, theta.m(), theta.n());
  return trace_pair(phi.choi().mat(), invert(theta).apply(psi.choi()).mat());
}

Complex preset_state_pair(StatePairing preset, const LinearMap& phi, const TensorMatrix& z) {
  const std::size_t m = z.m(), n = z.n();
  switch (preset) {
    case StatePairing::Standard:
      return map_state_pair(phi, z);
    case StatePairing::Woronowicz:
      return map_state_pair_theta(compile({m, n, {TransposeLeft{}, TransposeRight{}}}), phi, z);
    case StatePairing::Horodecki:
      return map_state_pair_theta(compile({m, n, {TransposeRight{}}}), phi, z);
  }
  throw Error(ErrorCode::BadDims, "unknown pairing preset");
}

Complex preset_map_pair(MapPairing preset, const LinearMap& phi, const LinearMap& psi) {
  const std::size_t m = phi.m(), n = phi.n();
  switch (preset) {
    case MapPairing::Standard:
      return map_map_pair(phi, psi, SuperOp::identity(m, n));
    case MapPairing::Ssz:
      return map_map_pair(phi, psi, compile({m, n, {TransposeLeft{}, TransposeRight{}}}));
  }
  throw Error(ErrorCode::BadDims, "unknown pairing preset");
}

}  // namespace choicone
