#pragma once

#include <span>
#include <vector>

#include "gaussent/entropy.hpp"
#include "gaussent/kernel_params.hpp"

namespace gaussent {

/// Intermediate quantities of the type I reduction: rotate by θ, rescale by
/// √μ±, rotate by φ; the kernel then factorizes with couplings ν±.
struct TypeIDerived {
  double theta = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double F = 0.0;
  double phi = 0.0;
  double nu_plus = 0.0;
  double nu_minus = 0.0;
  double eps_plus = 1.0;
  double eps_minus = 1.0;
  /// ξ of the Y1 (ν+) and Y2 (ν-) modes. xi_plus >= xi_minus.
  double xi_plus = 0.0;
  double xi_minus = 0.0;
  XiPair xi;
};

struct TypeIIDerived {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  /// ξ of the y1 = (x1+x2)/√2 mode (coupling c+f) and the y2 mode (c-f).
  double xi_y1 = 0.0;
  double xi_y2 = 0.0;
  XiPair xi;
};

/// β1 = tr ρ², β2 = tr ρ³.
struct MomentPair {
  double beta1 = 1.0;
  double beta2 = 1.0;
};

struct TypeIIIMoments {
  MomentPair moments;
  double X1 = 0.0, X2 = 0.0, x = 0.0;
  double A_plus = 0.0, A_minus = 0.0, A_tilde = 0.0;
};

struct TypeIVMoments {
  MomentPair moments;
  double Y1 = 0.0, Y2 = 0.0, y = 0.0;
  double B_plus = 0.0, B_minus = 0.0, B_tilde = 0.0;
};

/// Elementary symmetric functions u = ξ1 + ξ2, v = ξ1 ξ2.
struct SymmetricPair {
  double u = 0.0;
  double v = 0.0;
};

/// |x| (or |y|) below this fraction of A+ + √Ã switches to the x -> 0 limit.
inline constexpr double kDegenerateMomentThreshold = 1e-12;
inline constexpr int kMaxBipartiteDegree = 30;

TypeIDerived xi_pair_type_i(const TypeIParams& p);
TypeIIDerived xi_pair_type_ii(const TypeIIParams& p);

/// ξ pair of the a1 = a2 = a, b1 = b2 = b specialization in its reduced closed
/// form, as (ξ of y1, ξ of y2).
std::pair<double, double> type_ii_symmetric_xi(double a, double b, double c, double f);

TypeIIIMoments moments_type_iii(const TypeIIIParams& p);
SymmetricPair symmetric_pair_type_iii(const TypeIIIParams& p);
XiPair xi_pair_type_iii(const TypeIIIParams& p);

TypeIVMoments moments_type_iv(const TypeIVParams& p);
SymmetricPair symmetric_pair_type_iv(const TypeIVParams& p);
/// Carries ansatz_assumed = true: the product-geometric spectrum is assumed for type IV.
XiPair xi_pair_type_iv(const TypeIVParams& p);

/// Dispatches to the closed form of each family (single party: (ξ0, 0)).
XiPair xi_pair(const GaussianKernelParams& p);

/// Closed-form tr ρ².
double purity(const GaussianKernelParams& p);

/// tr ρ² and tr ρ³ of a product-geometric spectrum.
MomentPair moments_from_xi(const XiPair& xi);
double trace_power_from_xi(const XiPair& xi, int power);

/// Closed-form moments of each family (types I/II take β2 from their ξ pair).
MomentPair moments(const GaussianKernelParams& p);

/// Inverts (β1, β2) -> (ξ1, ξ2) along the branch printed for the moment
/// method. Throws DegenerateDenominator or ComplexRoots.
XiPair moments_to_xi(const MomentPair& m);

/// Both real roots of the moment equations that give |ξ| < 1; the branch used by
/// moments_to_xi comes first when it is admissible.
std::vector<XiPair> moment_inversion_candidates(const MomentPair& m);

/// (u, v) -> ordered ξ pair. Throws ComplexRoots if u² < 4v.
XiPair xi_from_symmetric(const SymmetricPair& s, bool ansatz_assumed = false);

/// Normalized eigenfunction f_mn(x1, x2) of a type I kernel; m counts the ν+ mode.
double eigenfunction_type_i(const TypeIParams& p, int m, int n, double x1, double x2);
double eigenvalue_type_i(const TypeIParams& p, int m, int n);

/// Normalized (right) eigenfunction of a type II kernel; m counts the y1 mode.
double eigenfunction_type_ii(const TypeIIParams& p, int m, int n, double x1, double x2);
double eigenvalue_type_ii(const TypeIIParams& p, int m, int n);

/// Entropy report for any family, through its closed-form ξ pair and purity.
EntropyReport entropies(const GaussianKernelParams& p, std::span<const double> alphas,
                        bool want_von_neumann = true);

}  // namespace gaussent
