#include <algorithm>
#include <cmath>
#include <string>

#include "gaussent/core_math.hpp"
#include "gaussent/entropy.hpp"
#include "gaussent/errors.hpp"

namespace gaussent {

std::string_view to_string(Physicality p) noexcept {
  switch (p) {
    case Physicality::Pure: return "pure";
    case Physicality::PhysicalMixed: return "physical-mixed";
    case Physicality::Unphysical: return "unphysical";
  }
  return "unknown";
}

XiPair XiPair::make(double a, double b, bool ansatz_assumed) {
  if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a) >= 1.0 || std::abs(b) >= 1.0) {
    throw DomainError("xi pair outside the unit interval: (" + std::to_string(a) + ", " +
                      std::to_string(b) + ")");
  }
  if (std::abs(a) < kXiZeroSnap) a = 0.0;
  if (std::abs(b) < kXiZeroSnap) b = 0.0;
  XiPair out;
  out.xi1 = std::max(a, b);
  out.xi2 = std::min(a, b);
  out.ansatz_assumed = ansatz_assumed;
  if (out.xi1 == 0.0 && out.xi2 == 0.0) {
    out.classification = Physicality::Pure;
  } else if (out.xi2 < 0.0) {
    out.classification = Physicality::Unphysical;
  } else {
    out.classification = Physicality::PhysicalMixed;
  }
  return out;
}

double XiPair::eigenvalue(int m, int n) const {
  return (1.0 - xi1) * std::pow(xi1, m) * (1.0 - xi2) * std::pow(xi2, n);
}

std::vector<double> XiPair::top_eigenvalues(std::size_t count) const {
  // Enumerate a generous (m, n) box; |ξ| < 1 so magnitudes decay geometrically.
  std::vector<double> all;
  const int limit = 400;
  for (int m = 0; m < limit; ++m) {
    const double row = (1.0 - xi1) * std::pow(xi1, m);
    if (m > 0 && std::abs(row) < 1e-300) break;
    for (int n = 0; n < limit; ++n) {
      const double v = row * (1.0 - xi2) * std::pow(xi2, n);
      if (n > 0 && std::abs(v) < 1e-300) break;
      all.push_back(v);
      if (xi2 == 0.0) break;
    }
    if (xi1 == 0.0) break;
  }
  std::sort(all.begin(), all.end(), std::greater<>());
  // Pad with zeros: a finite spectrum still compares against numeric near-zeros.
  all.resize(std::max(all.size(), count), 0.0);
  std::sort(all.begin(), all.end(), std::greater<>());
  all.resize(count);
  return all;
}

const RenyiValue* EntropyReport::find_renyi(double alpha) const {
  for (const auto& r : renyi) {
    if (std::abs(r.alpha - alpha) < 1e-12) return &r;
  }
  return nullptr;
}

EntropyReport entropy_report(const XiPair& xi, double purity, std::span<const double> alphas,
                             bool want_von_neumann) {
  EntropyReport out;
  out.xi = xi;
  out.purity = purity;
  const GeometricParam g1{xi.xi1};
  const GeometricParam g2{xi.xi2};
  for (double alpha : alphas) {
    RenyiValue r;
    r.alpha = alpha;
    r.factor1 = geometric_renyi(g1, alpha);
    r.factor2 = geometric_renyi(g2, alpha);
    r.total = r.factor1 + r.factor2;
    out.renyi.push_back(r);
  }
  if (want_von_neumann) {
    if (xi.xi2 < 0.0) {
      out.von_neumann_note = "von Neumann entropy omitted: negative xi (unphysical spectrum)";
    } else {
      VonNeumannValue v;
      v.factor1 = geometric_von_neumann(g1);
      v.factor2 = geometric_von_neumann(g2);
      v.total = v.factor1 + v.factor2;
      out.von_neumann = v;
    }
  }
  return out;
}

}  // namespace gaussent
