#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "gaussent/bipartite.hpp"
#include "gaussent/kernel_params.hpp"
#include "gaussent/purification.hpp"

namespace gaussent {

inline constexpr int kMinGridPoints = 16;
inline constexpr int kDefaultBipartitePoints = 40;
inline constexpr int kDefaultSinglePoints = 200;
inline constexpr double kMaxAutoHalfWidth = 12.0;
inline constexpr double kAutoTailTarget = 1e-14;
/// Largest dense operator dimension (N² for bipartite grids).
inline constexpr long kMaxOperatorDim = 6400;

/// Uniform trapezoid grid on [-L, L] with N points.
struct Grid {
  double half_width = 8.0;
  int points = kDefaultBipartitePoints;

  double spacing() const noexcept { return 2.0 * half_width / (points - 1); }
  double node(int i) const noexcept { return -half_width + i * spacing(); }
  double weight(int i) const noexcept {
    return (i == 0 || i == points - 1) ? 0.5 * spacing() : spacing();
  }

  /// Throws InvalidParams for L <= 0 or N < kMinGridPoints (unless allow_coarse).
  static Grid make(double half_width, int points, bool allow_coarse = false);
};

/// L with exp(-w_min L²) = kAutoTailTarget, w_min the smallest eigenvalue of the
/// diagonal (x' = x) decay form; capped at kMaxAutoHalfWidth.
double auto_half_width(const GaussianKernelParams& p);

/// Default grid for a family: N = 200 single-party, 40 bipartite; auto L unless given.
Grid default_grid(const GaussianKernelParams& p, std::optional<int> points = std::nullopt,
                  std::optional<double> half_width = std::nullopt, bool allow_coarse = false);

using OperatorMatrix = std::variant<Eigen::MatrixXd, Eigen::MatrixXcd>;

/// Nyström matrix W^{1/2} K W^{1/2}: similar to K W, so it has the same spectrum
/// and trace powers. Bipartite index I = i1 * N + i2.
struct DiscreteOperator {
  Grid grid;
  int modes = 2;
  OperatorMatrix matrix;

  long dim() const noexcept;
  bool is_complex() const noexcept { return std::holds_alternative<Eigen::MatrixXcd>(matrix); }
};

/// Throws InvalidParams (including kernels that do not decay jointly) or ResourceLimit.
DiscreteOperator discretize(const GaussianKernelParams& p, const Grid& g);

/// Reference assembly: one exp per entry, no factor tables and no SIMD.
DiscreteOperator discretize_reference(const GaussianKernelParams& p, const Grid& g);

struct SpectrumOptions {
  bool eigenvalues = true;
  /// Relative Hermiticity residual at or below which the Hermitian solver is used.
  double hermitian_threshold = 1e-13;
};

struct SpectralOracleResult {
  Grid grid;
  long dim = 0;
  /// Descending by real part; empty when eigenvalues were not requested.
  std::vector<double> eigenvalues;
  double max_imag = 0.0;
  /// max |M_ij - conj(M_ji)| / max |M_ij|.
  double hermiticity_residual = 0.0;
  std::string solver;
  double trace = 0.0, trace2 = 0.0, trace3 = 0.0, trace4 = 0.0;
  std::optional<XiPair> fitted_xi;
  std::optional<double> goodness;
};

/// Traces by direct products; eigenvalues through LAPACK (symmetric/Hermitian
/// solver when the residual allows it, general solver otherwise).
SpectralOracleResult spectrum(const DiscreteOperator& op, const SpectrumOptions& opt = {});

struct GeometricFit {
  XiPair xi;
  /// Max gap between sorted numeric and model spectra over the top K (absent without eigenvalues).
  std::optional<double> goodness;
  int candidates = 0;
};

inline constexpr int kDefaultTopK = 20;

/// Inverts (tr M², tr M³); when both roots are admissible the one reproducing
/// tr M⁴ is kept. Also stores the result into r.
GeometricFit fit_geometric_pair(SpectralOracleResult& r, int top_k = kDefaultTopK);

/// Max |sorted numeric - sorted model| over the top K entries.
double spectrum_gap(const std::vector<double>& numeric, const XiPair& model, int top_k);

struct NumericEntropy {
  std::vector<std::pair<double, double>> renyi;  // (α, S_α)
  std::optional<double> von_neumann;
};

/// Throws ImaginarySpectrum when max |Im λ| > 1e-8.
NumericEntropy numeric_entropy(const SpectralOracleResult& r, std::span<const double> alphas,
                               bool want_von_neumann = true);

/// x3 grid wide enough that max_{x1,x2} |ψ|² has fallen by kAutoTailTarget at its
/// ends, with spacing no coarser than g.
Grid third_mode_grid(const PureState3& s, const Grid& g);

/// B_IJ = √(w_I w_J) Σ_k w_k ψ(x_I, x_k) ψ*(x_J, x_k), weighted like discretize().
/// The x3 sum runs over `third` (default third_mode_grid(s, g)).
DiscreteOperator numeric_partial_trace(const PureState3& s, const Grid& g,
                                       std::optional<Grid> third = std::nullopt);

/// max |A - B| entrywise (either may be real or complex).
double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace gaussent
