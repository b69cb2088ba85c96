#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gaussent {

enum class Physicality { Pure, PhysicalMixed, Unphysical };

std::string_view to_string(Physicality p) noexcept;

/// |ξ| below this is treated as an exact zero (round-off from closed forms).
inline constexpr double kXiZeroSnap = 1e-15;

/// Parameters of a product-geometric spectrum λ_mn = (1-ξ1)ξ1^m (1-ξ2)ξ2^n.
/// Always stored with xi1 >= xi2.
struct XiPair {
  double xi1 = 0.0;
  double xi2 = 0.0;
  Physicality classification = Physicality::Pure;
  /// Set when the product-geometric form is assumed rather than derived (type IV).
  bool ansatz_assumed = false;

  /// Orders, snaps round-off zeros and classifies. Throws DomainError unless |ξ| < 1.
  static XiPair make(double a, double b, bool ansatz_assumed = false);

  double eigenvalue(int m, int n) const;
  /// Largest `count` eigenvalues of the model, descending.
  std::vector<double> top_eigenvalues(std::size_t count) const;
};

struct RenyiValue {
  double alpha = 0.0;
  double total = 0.0;
  double factor1 = 0.0;
  double factor2 = 0.0;
};

struct VonNeumannValue {
  double total = 0.0;
  double factor1 = 0.0;
  double factor2 = 0.0;
};

struct EntropyReport {
  XiPair xi;
  double purity = 1.0;
  std::vector<RenyiValue> renyi;
  std::optional<VonNeumannValue> von_neumann;
  /// Why von_neumann is absent (empty when it was computed or not requested).
  std::string von_neumann_note;

  const RenyiValue* find_renyi(double alpha) const;
};

/// Per-factor and total entropies; S_α = S_{1,α} + S_{2,α}.
EntropyReport entropy_report(const XiPair& xi, double purity, std::span<const double> alphas,
                             bool want_von_neumann = true);

}  // namespace gaussent
