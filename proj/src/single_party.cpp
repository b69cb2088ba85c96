#include "gaussent/single_party.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gaussent/core_math.hpp"
#include "gaussent/errors.hpp"

namespace gaussent {

void validate(const SingleParams& p) {
  if (!std::isfinite(p.a1) || !std::isfinite(p.a2) || !std::isfinite(p.b)) {
    throw InvalidParams("single: parameters must be finite");
  }
  if (!(p.a1 > 0.0)) throw InvalidParams("single: requires a1 > 0");
  if (!(p.a2 > 0.0)) throw InvalidParams("single: requires a2 > 0");
  if (!(p.a1 + p.a2 - 2.0 * p.b > 0.0)) throw InvalidParams("single: requires a1 + a2 - 2b > 0");
  if (!(p.a1 + p.a2 + 2.0 * p.b > 0.0)) throw InvalidParams("single: requires a1 + a2 + 2b > 0");
}

SingleDerived single_derive(const SingleParams& p) {
  validate(p);
  const double s = p.a1 + p.a2;
  SingleDerived d;
  // (s-2b)(s+2b) avoids cancellation in s² - 4b² near the boundary.
  d.epsilon0 = std::sqrt((s - 2.0 * p.b) * (s + 2.0 * p.b));
  d.alpha0 = d.epsilon0 - (p.a1 - p.a2);
  d.norm = std::sqrt((s - 2.0 * p.b) / std::numbers::pi);
  d.xi0 = p.b == 0.0 ? 0.0 : 2.0 * p.b / (s + d.epsilon0);
  if (!(d.alpha0 > 0.0)) throw InvalidParams("single: derived alpha0 must be positive");
  return d;
}

double single_eigenvalue(const SingleParams& p, int n) {
  if (n < 0) throw DomainError("eigenvalue index must be non-negative");
  const SingleDerived d = single_derive(p);
  if (d.xi0 == 0.0) return n == 0 ? 1.0 : 0.0;
  return (1.0 - d.xi0) * std::pow(d.xi0, n);
}

double single_eigenfunction(const SingleParams& p, int n, double x) {
  if (n < 0) throw DomainError("eigenfunction index must be non-negative");
  if (n > kMaxSingleDegree) {
    throw DegreeTooLarge("single: eigenfunction degree " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxSingleDegree));
  }
  const SingleDerived d = single_derive(p);
  const double log_norm_sq = log_hermite_gauss_norm_sq(n, d.epsilon0, d.alpha0);
  const double h = hermite(n, std::sqrt(d.epsilon0) * x);
  return h * std::exp(-0.5 * d.alpha0 * x * x - 0.5 * log_norm_sq);
}

double single_kernel(const SingleParams& p, double xp, double x) {
  validate(p);
  const double norm = std::sqrt((p.a1 + p.a2 - 2.0 * p.b) / std::numbers::pi);
  return norm * std::exp(-p.a1 * x * x - p.a2 * xp * xp + 2.0 * p.b * x * xp);
}

double single_purity(const SingleParams& p) {
  validate(p);
  const double s = p.a1 + p.a2;
  return std::sqrt((s - 2.0 * p.b) / (s + 2.0 * p.b));
}

EntropyReport single_entropies(const SingleParams& p, std::span<const double> alphas,
                               bool want_von_neumann) {
  const SingleDerived d = single_derive(p);
  return entropy_report(XiPair::make(d.xi0, 0.0), single_purity(p), alphas, want_von_neumann);
}

}  // namespace gaussent
