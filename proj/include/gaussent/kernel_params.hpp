#pragma once

#include <complex>
#include <string_view>
#include <variant>

#include <Eigen/Core>

#include "gaussent/single_party.hpp"

namespace gaussent {

using cplx = std::complex<double>;

// Coordinates are ordered (x1', x2', x1, x2): primed arguments index rows of
// the operator, unprimed ones columns.

/// Type I: -a1(x1'²+x1²) - a2(x2'²+x2²) + 2b(x1'x2'+x1x2) + 2c(x1x1'+x2x2') + 2f(x1x2'+x2x1').
struct TypeIParams {
  double a1 = 0.0, a2 = 0.0, b = 0.0, c = 0.0, f = 0.0;
};

/// Type II: -a1(x1'²+x2'²) - a2(x1²+x2²) + 2b1 x1'x2' + 2b2 x1x2 + 2c(..) + 2f(..).
struct TypeIIParams {
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0, c = 0.0, f = 0.0;
};

/// Type III: like type I with c1 x1x1', c2 x2x2' and complex f x1'x2 + f* x1x2'.
struct TypeIIIParams {
  double a1 = 0.0, a2 = 0.0, b = 0.0, c1 = 0.0, c2 = 0.0;
  cplx f{0.0, 0.0};
};

/// Type IV: partial transpose (x1 <-> x1') of a type-II-like kernel.
struct TypeIVParams {
  double a1 = 0.0, a2 = 0.0, b = 0.0, c = 0.0, f1 = 0.0, f2 = 0.0;
};

using GaussianKernelParams =
    std::variant<SingleParams, TypeIParams, TypeIIParams, TypeIIIParams, TypeIVParams>;

std::string_view type_name(const GaussianKernelParams& p) noexcept;
int mode_count(const GaussianKernelParams& p) noexcept;

void validate(const TypeIParams& p);
void validate(const TypeIIParams& p);
void validate(const TypeIIIParams& p);
void validate(const TypeIVParams& p);
void validate(const GaussianKernelParams& p);

/// Normalization constant A of each family.
double kernel_norm(const TypeIParams& p);
double kernel_norm(const TypeIIParams& p);
double kernel_norm(const TypeIIIParams& p);
double kernel_norm(const TypeIVParams& p);

/// Pointwise kernel value ρ[x1', x2' : x1, x2] from the family's closed form.
cplx kernel_eval(const GaussianKernelParams& p, double x1p, double x2p, double x1, double x2);

/// ρ = norm · exp(qᵀ K q), q = (primed..., unprimed...). K is symmetric,
/// 2×2 for the single-party kernel and 4×4 for bipartite ones.
struct KernelForm {
  int modes = 2;
  cplx norm{1.0, 0.0};
  Eigen::MatrixXcd exponent;

  cplx eval(const Eigen::VectorXd& q) const;
  /// -Re of the diagonal (x' = x) quadratic form, modes × modes.
  Eigen::MatrixXd diagonal_decay() const;
  /// True when -Re K is positive definite (kernel decays in every direction).
  bool square_integrable() const;
};

KernelForm kernel_form(const GaussianKernelParams& p);

}  // namespace gaussent
