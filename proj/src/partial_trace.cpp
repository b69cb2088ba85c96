#include <algorithm>
#include <cmath>
#include <string>

#include "gaussent/errors.hpp"
#include "gaussent/oracle.hpp"

#include <Eigen/LU>

namespace gaussent {

Grid third_mode_grid(const PureState3& s, const Grid& g) {
  // |ψ|² ∝ exp(-2 xᵀ R x); maximizing over (x1, x2) leaves exp(-2 x3² / (R⁻¹)₃₃).
  const Eigen::Matrix3d r = s.quad.real();
  const double spread = r.inverse()(2, 2);
  if (!(spread > 0.0) || !std::isfinite(spread)) {
    throw InvalidParams("purification: Re Q is not positive definite");
  }
  const double half = std::sqrt(-std::log(kAutoTailTarget) * spread / 2.0);
  const int points = std::max(g.points, static_cast<int>(std::ceil(2.0 * half / g.spacing())) + 1);
  return Grid::make(half, points, true);
}

DiscreteOperator numeric_partial_trace(const PureState3& s, const Grid& g, std::optional<Grid> third) {
  const Grid g3 = third ? *third : third_mode_grid(s, g);
  const long n = g.points;
  const long n3 = g3.points;
  const long dim = n * n;
  if (dim > kMaxOperatorDim) {
    throw ResourceLimit("partial trace dimension " + std::to_string(dim) + " exceeds " +
                        std::to_string(kMaxOperatorDim));
  }
  if (dim * n3 > kMaxOperatorDim * kMaxOperatorDim) {
    throw ResourceLimit("partial trace: third-mode grid of " + std::to_string(n3) + " points is too large");
  }
  // Ψ(I, k) = √(w_i1 w_i2 w_k) ψ(x_i1, x_i2, x_k); then B = Ψ Ψ^H.
  Eigen::MatrixXcd psi(dim, n3);
  for (long k = 0; k < n3; ++k) {
    for (long i1 = 0; i1 < n; ++i1) {
      for (long i2 = 0; i2 < n; ++i2) {
        const double w = std::sqrt(g.weight(i1) * g.weight(i2) * g3.weight(k));
        psi(i1 * n + i2, k) = w * psi_eval(s, g.node(i1), g.node(i2), g3.node(k));
      }
    }
  }
  DiscreteOperator out{g, 2, Eigen::MatrixXd()};
  if (s.is_real()) {
    const Eigen::MatrixXd pr = psi.real();
    out.matrix = Eigen::MatrixXd(pr * pr.transpose());
  } else {
    out.matrix = Eigen::MatrixXcd(psi * psi.adjoint());
  }
  return out;
}

}  // namespace gaussent
