#include "gaussent/core_math.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "gaussent/errors.hpp"

namespace gaussent {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::ComplexRoots: return "ComplexRoots";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::ConditionNotMet: return "ConditionNotMet";
    case ErrorKind::NegativeZ: return "NegativeZ";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::EigFailure: return "EigFailure";
    case ErrorKind::ImaginarySpectrum: return "ImaginarySpectrum";
  }
  return "Error";
}

double hermite(int n, double z) noexcept {
  if (n <= 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * z * curr - 2.0 * k * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

namespace {

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

double log_hermite_gauss_norm_sq(int n, double epsilon, double alpha) {
  if (n < 0) throw DomainError("Hermite degree must be non-negative");
  if (!(epsilon > 0.0) || !(alpha > 0.0)) {
    throw DomainError("normalization needs epsilon > 0 and alpha > 0");
  }
  const double ratio = epsilon / alpha - 1.0;
  const double log_abs_ratio = std::log(std::abs(ratio));
  const double ln2 = std::numbers::ln2;

  std::vector<double> log_terms;
  std::vector<int> signs;
  log_terms.reserve(n + 1);
  signs.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const int power = n - k;
    if (power > 0 && ratio == 0.0) continue;
    double t = (2.0 * n - k) * ln2 + 2.0 * std::lgamma(n + 1.0) +
               std::lgamma(power + 0.5) - std::lgamma(k + 1.0) -
               2.0 * std::lgamma(power + 1.0);
    if (power > 0) t += power * log_abs_ratio;
    log_terms.push_back(t);
    signs.push_back((ratio < 0.0 && power % 2 == 1) ? -1 : 1);
  }

  double shift = -std::numeric_limits<double>::infinity();
  for (double t : log_terms) shift = std::max(shift, t);
  std::vector<double> scaled(log_terms.size());
  for (std::size_t i = 0; i < log_terms.size(); ++i) {
    scaled[i] = signs[i] * std::exp(log_terms[i] - shift);
  }
  const double sum = pairwise_sum(scaled.data(), scaled.size());
  if (!(sum > 0.0)) {
    throw DomainError("normalization sum lost positivity at n = " + std::to_string(n));
  }
  return shift + std::log(sum) - 0.5 * std::log(alpha);
}

bool is_integer_order(double alpha) noexcept {
  return std::abs(alpha - std::round(alpha)) < 1e-12;
}

double geometric_renyi(GeometricParam xi, double alpha) {
  if (!xi.convergent()) {
    throw DomainError("geometric spectrum requires |xi| < 1, got xi = " + std::to_string(xi.xi));
  }
  if (!(alpha > 0.0)) throw DomainError("Renyi order must be positive");
  if (alpha == 1.0) throw DomainError("Renyi order 1 is the von Neumann limit; use geometric_von_neumann");
  double xi_pow;
  if (xi.xi < 0.0) {
    if (!is_integer_order(alpha) || alpha < 2.0) {
      throw DomainError("negative xi admits only integer Renyi orders >= 2");
    }
    xi_pow = std::pow(xi.xi, std::round(alpha));
  } else {
    xi_pow = std::pow(xi.xi, alpha);
  }
  // ln[(1-ξ)^α/(1-ξ^α)] with log1p for small ξ
  const double log_ratio = alpha * std::log1p(-xi.xi) - std::log1p(-xi_pow);
  return log_ratio / (1.0 - alpha);
}

double geometric_von_neumann(GeometricParam xi) {
  if (xi.xi < 0.0) {
    throw DomainError("von Neumann entropy is undefined for negative xi (unphysical spectrum)");
  }
  if (!(xi.xi < 1.0)) throw DomainError("geometric spectrum requires xi < 1");
  if (xi.xi == 0.0) return 0.0;
  return -std::log1p(-xi.xi) - xi.xi / (1.0 - xi.xi) * std::log(xi.xi);
}

double alpha_limit_check(GeometricParam xi, std::span<const double> offsets) {
  if (offsets.empty()) throw DomainError("alpha_limit_check needs at least one offset");
  if (xi.xi < 0.0) throw DomainError("alpha limit is only checked for physical xi");
  const std::size_t m = offsets.size();
  std::vector<double> h2(m);
  std::vector<double> table(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double eps = std::abs(offsets[i]);
    if (!(eps > 0.0 && eps < 0.5)) throw DomainError("alpha offsets must lie in (0, 0.5)");
    h2[i] = eps * eps;
    table[i] = 0.5 * (geometric_renyi(xi, 1.0 + eps) + geometric_renyi(xi, 1.0 - eps));
  }
  // Neville extrapolation of the symmetric average to h² = 0.
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double hi = h2[i];
      const double hj = h2[i + level];
      table[i] = (hi * table[i + 1] - hj * table[i]) / (hi - hj);
    }
  }
  return table[0];
}

}  // namespace gaussent
