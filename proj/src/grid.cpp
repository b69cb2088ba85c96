#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gaussent/errors.hpp"
#include "gaussent/oracle.hpp"

namespace gaussent {

Grid Grid::make(double half_width, int points, bool allow_coarse) {
  if (!std::isfinite(half_width) || !(half_width > 0.0)) {
    throw InvalidParams("grid: half width must be positive");
  }
  if (points < 2 || (!allow_coarse && points < kMinGridPoints)) {
    throw InvalidParams("grid: needs at least " + std::to_string(kMinGridPoints) +
                        " points per axis (got " + std::to_string(points) + ")");
  }
  return Grid{half_width, points};
}

double auto_half_width(const GaussianKernelParams& p) {
  const KernelForm form = kernel_form(p);
  const Eigen::MatrixXd decay = form.diagonal_decay();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(decay, Eigen::EigenvaluesOnly);
  const double w_min = es.eigenvalues().minCoeff();
  if (!(w_min > 0.0)) throw InvalidParams("kernel diagonal does not decay; trace is not finite");
  return std::min(kMaxAutoHalfWidth, std::sqrt(-std::log(kAutoTailTarget) / w_min));
}

Grid default_grid(const GaussianKernelParams& p, std::optional<int> points,
                  std::optional<double> half_width, bool allow_coarse) {
  const int n = points.value_or(mode_count(p) == 1 ? kDefaultSinglePoints : kDefaultBipartitePoints);
  const double l = half_width.has_value() ? *half_width : auto_half_width(p);
  return Grid::make(l, n, allow_coarse);
}

}  // namespace gaussent
