#pragma once

#include <optional>
#include <string>

#include <Eigen/Core>

#include "gaussent/kernel_params.hpp"

namespace gaussent {

/// Moduli and phases of the type III purification family, Q_ii = r_i e^{-iφ_i}.
struct TypeIIIPurificationInfo {
  double theta = 0.0;
  double xbar = 0.0;
  double theta_f = 0.0;
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
};

/// ψ(x) = √N exp(-xᵀ Q x), x = (x1, x2, x3).
struct PureState3 {
  double normalization = 0.0;
  Eigen::Matrix3cd quad = Eigen::Matrix3cd::Zero();
  std::string family;
  std::optional<TypeIIIPurificationInfo> type_iii;

  bool is_real() const noexcept;
};

/// Tolerances of the special-surface conditions c = ±f and c1 c2 = |f|².
inline constexpr double kSurfaceTolerance = 1e-12;
inline constexpr double kTypeIIISurfaceTolerance = 1e-10;

/// Requires c = f or c = -f. Throws ConditionNotMet, NegativeZ or InvalidParams.
PureState3 purify_type_i(const TypeIParams& p);

/// Only the a1 = a2, b1 = b2 case with c = ±f.
PureState3 purify_type_ii(const TypeIIParams& p);

/// Requires c1 c2 = |f|². xbar defaults to 1/(4(a1-c1)(a2-c2) - (2b + f + f*)²).
PureState3 purify_type_iii(const TypeIIIParams& p, double theta = 0.0,
                           std::optional<double> xbar = std::nullopt);

cplx psi_eval(const PureState3& s, double x1, double x2, double x3);

}  // namespace gaussent
