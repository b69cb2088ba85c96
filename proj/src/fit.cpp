#include <algorithm>
#include <cmath>

#include "gaussent/errors.hpp"
#include "gaussent/oracle.hpp"

namespace gaussent {

double spectrum_gap(const std::vector<double>& numeric, const XiPair& model, int top_k) {
  std::vector<double> sorted = numeric;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(top_k), sorted.size());
  const std::vector<double> expected = model.top_eigenvalues(k);
  double gap = 0.0;
  for (std::size_t i = 0; i < k; ++i) gap = std::max(gap, std::abs(sorted[i] - expected[i]));
  return gap;
}

GeometricFit fit_geometric_pair(SpectralOracleResult& r, int top_k) {
  const MomentPair m{r.trace2, r.trace3};
  const std::vector<XiPair> candidates = moment_inversion_candidates(m);
  GeometricFit fit;
  fit.candidates = static_cast<int>(candidates.size());
  if (candidates.empty()) {
    fit.xi = moments_to_xi(m);  // raises the specific failure
  } else {
    // tr M⁴ separates the two roots of the (β1, β2) system.
    auto miss = [&r](const XiPair& c) { return std::abs(trace_power_from_xi(c, 4) - r.trace4); };
    fit.xi = *std::min_element(candidates.begin(), candidates.end(),
                               [&](const XiPair& a, const XiPair& b) { return miss(a) < miss(b); });
  }
  if (!r.eigenvalues.empty()) fit.goodness = spectrum_gap(r.eigenvalues, fit.xi, top_k);
  r.fitted_xi = fit.xi;
  r.goodness = fit.goodness;
  return fit;
}

NumericEntropy numeric_entropy(const SpectralOracleResult& r, std::span<const double> alphas,
                               bool want_von_neumann) {
  constexpr double kImagLimit = 1e-8;
  constexpr double kNegativeCut = 1e-10;
  constexpr double kLogCut = 1e-14;
  if (r.eigenvalues.empty()) throw DomainError("numeric entropy needs eigenvalues");
  if (r.max_imag > kImagLimit) {
    throw ImaginarySpectrum("numeric spectrum has imaginary parts up to " +
                            std::to_string(r.max_imag));
  }
  const double most_negative = *std::min_element(r.eigenvalues.begin(), r.eigenvalues.end());
  NumericEntropy out;
  for (double alpha : alphas) {
    if (!(alpha > 0.0) || alpha == 1.0) throw DomainError("Renyi order must be positive and not 1");
    double sum = 0.0;
    if (alpha == std::round(alpha)) {
      for (double l : r.eigenvalues) sum += std::pow(l, alpha);
    } else {
      if (most_negative < -kNegativeCut) {
        throw DomainError("non-integer Renyi order on a spectrum with negative eigenvalues");
      }
      for (double l : r.eigenvalues) {
        if (l > 0.0) sum += std::pow(l, alpha);
      }
    }
    out.renyi.emplace_back(alpha, std::log(sum) / (1.0 - alpha));
  }
  if (want_von_neumann) {
    if (most_negative < -kNegativeCut) {
      throw DomainError("von Neumann entropy of a spectrum with negative eigenvalues");
    }
    double s = 0.0;
    for (double l : r.eigenvalues) {
      if (l > kLogCut) s -= l * std::log(l);
    }
    out.von_neumann = s;
  }
  return out;
}

}  // namespace gaussent
