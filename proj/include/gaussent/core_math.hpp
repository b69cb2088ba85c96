#pragma once

#include <span>

namespace gaussent {

/// Ratio parameter of a geometric spectrum λ_n = (1-ξ)ξ^n.
struct GeometricParam {
  double xi = 0.0;

  constexpr GeometricParam() = default;
  constexpr explicit GeometricParam(double value) : xi(value) {}

  constexpr bool convergent() const noexcept { return xi > -1.0 && xi < 1.0; }
  constexpr bool physical() const noexcept { return xi >= 0.0 && xi < 1.0; }
};

/// Physicists' Hermite polynomial H_n(z) by forward recurrence.
double hermite(int n, double z) noexcept;

/// ln of the normalization integral  C_n^2 = ∫ H_n(√ε x)^2 e^{-α x^2} dx
/// written as the finite k-sum over Gamma functions (valid for α != ε as well).
/// Terms are summed in log space with their signs carried separately.
double log_hermite_gauss_norm_sq(int n, double epsilon, double alpha);

/// (1/(1-α)) ln[(1-ξ)^α / (1-ξ^α)]. Negative ξ is accepted only for integer α >= 2.
double geometric_renyi(GeometricParam xi, double alpha);

/// -ln(1-ξ) - ξ/(1-ξ) ln ξ, with the ξ = 0 limit 0. Requires 0 <= ξ < 1.
double geometric_von_neumann(GeometricParam xi);

/// Estimates lim_{α→1} S_α from symmetric samples α = 1 ± ε for each ε in
/// `offsets`, extrapolated to ε = 0 (Neville in ε²). Needs at least one offset.
double alpha_limit_check(GeometricParam xi, std::span<const double> offsets);

/// True when α is (numerically) an integer.
bool is_integer_order(double alpha) noexcept;

}  // namespace gaussent
