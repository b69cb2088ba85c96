#include "gaussent/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gaussent/core_math.hpp"
#include "gaussent/errors.hpp"

namespace gaussent {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// ν -> ξ without the cancellation of (1 - ε)/ν at small ν.
double xi_from_nu(double nu) {
  const double eps = std::sqrt((1.0 - nu) * (1.0 + nu));
  return nu / (1.0 + eps);
}

void check_degree(int m, int n, const char* type) {
  if (m < 0 || n < 0) throw DomainError("eigenfunction indices must be non-negative");
  if (m > kMaxBipartiteDegree || n > kMaxBipartiteDegree) {
    throw DegreeTooLarge(std::string(type) + ": eigenfunction degree exceeds " +
                         std::to_string(kMaxBipartiteDegree));
  }
}

// Oscillator eigenfunction (2^m m!)^{-1/2} (2ε/π)^{1/4} H_m(√(2ε) y) e^{-ε y²}.
double oscillator(int m, double eps, double y) {
  const double log_pref = -0.5 * (m * std::numbers::ln2 + std::lgamma(m + 1.0)) +
                          0.25 * std::log(2.0 * eps / std::numbers::pi);
  return hermite(m, std::sqrt(2.0 * eps) * y) * std::exp(log_pref - eps * y * y);
}

// C^{-1} H_n(√ε y) e^{-α y²/2} with the Gamma-sum normalization.
double hermite_gauss(int n, double eps, double alpha, double y) {
  const double log_norm_sq = log_hermite_gauss_norm_sq(n, eps, alpha);
  return hermite(n, std::sqrt(eps) * y) * std::exp(-0.5 * alpha * y * y - 0.5 * log_norm_sq);
}

double geometric(double xi, int n) {
  if (xi == 0.0) return n == 0 ? 1.0 : 0.0;
  return (1.0 - xi) * std::pow(xi, n);
}

}  // namespace

TypeIDerived xi_pair_type_i(const TypeIParams& p) {
  validate(p);
  TypeIDerived d;
  const double diff = p.a1 - p.a2;
  const double r = std::hypot(diff, 2.0 * p.b);
  d.theta = 0.5 * std::atan2(2.0 * p.b, diff);
  const double sin2t = r > 0.0 ? 2.0 * p.b / r : 0.0;
  const double cos2t = r > 0.0 ? diff / r : 1.0;
  d.mu_plus = 0.5 * (p.a1 + p.a2 + r);
  d.mu_minus = (p.a1 * p.a2 - p.b * p.b) / d.mu_plus;
  d.C1 = p.c - p.f * sin2t;
  d.C2 = p.c + p.f * sin2t;
  d.F = p.f * cos2t;

  const double k11 = d.C1 / d.mu_plus;
  const double k22 = d.C2 / d.mu_minus;
  const double g = d.F / std::sqrt(d.mu_plus * d.mu_minus);
  const double kd = k11 - k22;
  const double s = std::hypot(kd, 2.0 * g);
  d.phi = 0.5 * std::atan2(-2.0 * g, kd);
  d.nu_plus = 0.5 * (k11 + k22 + s);
  d.nu_minus = 0.5 * (k11 + k22 - s);
  if (!(std::abs(d.nu_plus) < 1.0) || !(std::abs(d.nu_minus) < 1.0)) {
    throw NonConvergent("type I: |nu_+-| must be below 1 (got " + std::to_string(d.nu_plus) +
                        ", " + std::to_string(d.nu_minus) + ")");
  }
  d.eps_plus = std::sqrt((1.0 - d.nu_plus) * (1.0 + d.nu_plus));
  d.eps_minus = std::sqrt((1.0 - d.nu_minus) * (1.0 + d.nu_minus));
  d.xi_plus = xi_from_nu(d.nu_plus);
  d.xi_minus = xi_from_nu(d.nu_minus);
  d.xi = XiPair::make(d.xi_plus, d.xi_minus);
  return d;
}

TypeIIDerived xi_pair_type_ii(const TypeIIParams& p) {
  validate(p);
  TypeIIDerived d;
  const double s1 = p.a1 + p.a2 - p.b1 - p.b2;
  const double s2 = p.a1 + p.a2 + p.b1 + p.b2;
  const double g1 = 2.0 * (p.c + p.f);
  const double g2 = 2.0 * (p.c - p.f);
  d.eps1 = std::sqrt((s1 - g1) * (s1 + g1));
  d.eps2 = std::sqrt((s2 - g2) * (s2 + g2));
  d.alpha1 = d.eps1 + (p.a1 - p.a2) - (p.b1 - p.b2);
  d.alpha2 = d.eps2 + (p.a1 - p.a2) + (p.b1 - p.b2);
  if (!(d.alpha1 > 0.0) || !(d.alpha2 > 0.0)) {
    throw InvalidParams("type II: requires alpha1, alpha2 > 0 (eigenfunctions must decay)");
  }
  d.xi_y1 = g1 / (s1 + d.eps1);
  d.xi_y2 = g2 / (s2 + d.eps2);
  d.xi = XiPair::make(d.xi_y1, d.xi_y2);
  return d;
}

std::pair<double, double> type_ii_symmetric_xi(double a, double b, double c, double f) {
  const double s1 = a - b;
  const double s2 = a + b;
  const double xi1 = (c + f) / (s1 + std::sqrt(s1 * s1 - (c + f) * (c + f)));
  const double xi2 = (c - f) / (s2 + std::sqrt(s2 * s2 - (c - f) * (c - f)));
  return {xi1, xi2};
}

TypeIIIMoments moments_type_iii(const TypeIIIParams& p) {
  validate(p);
  TypeIIIMoments m;
  const double fr = p.f.real();
  const double f2 = std::norm(p.f);
  m.X1 = 4.0 * ((p.a1 - p.c1) * (p.a2 - p.c2) - (p.b + fr) * (p.b + fr));
  m.X2 = 4.0 * ((p.a1 + p.c1) * (p.a2 + p.c2) - (p.b - fr) * (p.b - fr));
  m.x = p.c1 * p.c2 - f2;
  m.A_plus = p.a1 * p.a2 + p.c1 * p.c2 - p.b * p.b - fr * fr;
  m.A_minus = p.a1 * p.c2 + p.a2 * p.c1 + 2.0 * p.b * fr;
  m.A_tilde = m.X1 * m.X2 / 16.0;
  const double den = m.X1 + 3.0 * m.X2 - 12.0 * m.x;
  if (den == 0.0) throw DegenerateDenominator("type III: X1 + 3 X2 - 12 x vanishes");
  m.moments.beta1 = std::sqrt(m.X1 / m.X2);
  m.moments.beta2 = 4.0 * m.X1 / den;
  return m;
}

namespace {

// Rationalized quadratic-root form: finite at x -> 0 where the direct form is 0/0.
SymmetricPair symmetric_from(double minus, double sum, double t) {
  const double q = std::sqrt(1.0 - t);
  SymmetricPair s;
  s.u = 2.0 * minus / (sum * (1.0 + q));
  s.v = t / ((1.0 + q) * (1.0 + q));
  return s;
}

}  // namespace

SymmetricPair symmetric_pair_type_iii(const TypeIIIParams& p) {
  const TypeIIIMoments m = moments_type_iii(p);
  const double sum = m.A_plus + std::sqrt(std::max(m.A_tilde, 0.0));
  if (std::abs(m.x) < kDegenerateMomentThreshold * sum) return {m.A_minus / sum, 0.0};
  return symmetric_from(m.A_minus, sum, 2.0 * m.x / sum);
}

XiPair xi_pair_type_iii(const TypeIIIParams& p) {
  return xi_from_symmetric(symmetric_pair_type_iii(p));
}

TypeIVMoments moments_type_iv(const TypeIVParams& p) {
  validate(p);
  TypeIVMoments m;
  const double s = p.a1 + p.a2;
  const double fs = p.f1 + p.f2;
  m.Y1 = (s - 2.0 * p.c) * (s - 2.0 * p.c) - (fs + 2.0 * p.b) * (fs + 2.0 * p.b);
  m.Y2 = (s + 2.0 * p.c) * (s + 2.0 * p.c) - (fs - 2.0 * p.b) * (fs - 2.0 * p.b);
  m.y = p.c * p.c - p.f1 * p.f2;
  m.B_plus = s * s + 4.0 * p.c * p.c - fs * fs - 4.0 * p.b * p.b;
  m.B_minus = 4.0 * p.c * s + 4.0 * p.b * fs;
  m.B_tilde = m.Y1 * m.Y2;
  const double den = m.Y1 + 3.0 * m.Y2 - 12.0 * m.y;
  if (den == 0.0) throw DegenerateDenominator("type IV: Y1 + 3 Y2 - 12 y vanishes");
  m.moments.beta1 = std::sqrt(m.Y1 / m.Y2);
  m.moments.beta2 = 4.0 * m.Y1 / den;
  return m;
}

SymmetricPair symmetric_pair_type_iv(const TypeIVParams& p) {
  const TypeIVMoments m = moments_type_iv(p);
  const double sum = m.B_plus + std::sqrt(std::max(m.B_tilde, 0.0));
  if (std::abs(m.y) < kDegenerateMomentThreshold * sum) return {m.B_minus / sum, 0.0};
  return symmetric_from(m.B_minus, sum, 8.0 * m.y / sum);
}

XiPair xi_pair_type_iv(const TypeIVParams& p) {
  return xi_from_symmetric(symmetric_pair_type_iv(p), true);
}

XiPair xi_from_symmetric(const SymmetricPair& s, bool ansatz_assumed) {
  const double u = s.u;
  const double v = s.v;
  double disc = u * u - 4.0 * v;
  if (disc < 0.0) {
    if (disc > -1e-14 * std::max(1.0, u * u)) {
      disc = 0.0;
    } else {
      throw ComplexRoots("u^2 < 4v: no real xi pair (u = " + std::to_string(u) +
                         ", v = " + std::to_string(v) + ")");
    }
  }
  const double root = std::sqrt(disc);
  // Larger-magnitude root directly, the other through v = ξ1 ξ2.
  const double big = u >= 0.0 ? 0.5 * (u + root) : 0.5 * (u - root);
  const double small = big != 0.0 ? v / big : 0.0;
  return XiPair::make(big, small, ansatz_assumed);
}

XiPair xi_pair(const GaussianKernelParams& params) {
  return std::visit(overloaded{
                        [](const SingleParams& p) { return XiPair::make(single_derive(p).xi0, 0.0); },
                        [](const TypeIParams& p) { return xi_pair_type_i(p).xi; },
                        [](const TypeIIParams& p) { return xi_pair_type_ii(p).xi; },
                        [](const TypeIIIParams& p) { return xi_pair_type_iii(p); },
                        [](const TypeIVParams& p) { return xi_pair_type_iv(p); },
                    },
                    params);
}

double purity(const GaussianKernelParams& params) {
  return std::visit(
      overloaded{
          [](const SingleParams& p) { return single_purity(p); },
          [](const TypeIParams& p) {
            validate(p);
            const double num = (p.a1 - p.c) * (p.a2 - p.c) - (p.b + p.f) * (p.b + p.f);
            const double den = (p.a1 + p.c) * (p.a2 + p.c) - (p.b - p.f) * (p.b - p.f);
            return std::sqrt(num / den);
          },
          [](const TypeIIParams& p) {
            validate(p);
            const double s = p.a1 + p.a2;
            const double bs = p.b1 + p.b2;
            const double num = (s - 2.0 * p.c) * (s - 2.0 * p.c) - (bs + 2.0 * p.f) * (bs + 2.0 * p.f);
            const double den = (s + 2.0 * p.c) * (s + 2.0 * p.c) - (bs - 2.0 * p.f) * (bs - 2.0 * p.f);
            return std::sqrt(num / den);
          },
          [](const TypeIIIParams& p) { return moments_type_iii(p).moments.beta1; },
          [](const TypeIVParams& p) { return moments_type_iv(p).moments.beta1; },
      },
      params);
}

double trace_power_from_xi(const XiPair& xi, int power) {
  auto factor = [power](double x) {
    return std::pow(1.0 - x, power) / (1.0 - std::pow(x, power));
  };
  return factor(xi.xi1) * factor(xi.xi2);
}

MomentPair moments_from_xi(const XiPair& xi) {
  auto b1 = [](double x) { return (1.0 - x) / (1.0 + x); };
  auto b2 = [](double x) { return (1.0 - x) * (1.0 - x) / (1.0 + x + x * x); };
  return {b1(xi.xi1) * b1(xi.xi2), b2(xi.xi1) * b2(xi.xi2)};
}

MomentPair moments(const GaussianKernelParams& params) {
  return std::visit(overloaded{
                        [&](const TypeIIIParams& p) { return moments_type_iii(p).moments; },
                        [&](const TypeIVParams& p) { return moments_type_iv(p).moments; },
                        [&](const auto&) {
                          MomentPair m = moments_from_xi(xi_pair(params));
                          m.beta1 = purity(params);
                          return m;
                        },
                    },
                    params);
}

double eigenvalue_type_i(const TypeIParams& p, int m, int n) {
  const TypeIDerived d = xi_pair_type_i(p);
  return geometric(d.xi_plus, m) * geometric(d.xi_minus, n);
}

double eigenfunction_type_i(const TypeIParams& p, int m, int n, double x1, double x2) {
  check_degree(m, n, "type I");
  const TypeIDerived d = xi_pair_type_i(p);
  const double ct = std::cos(d.theta), st = std::sin(d.theta);
  const double X1 = ct * x1 - st * x2;
  const double X2 = st * x1 + ct * x2;
  const double y1 = std::sqrt(d.mu_plus) * X1;
  const double y2 = std::sqrt(d.mu_minus) * X2;
  const double cp = std::cos(d.phi), sp = std::sin(d.phi);
  const double Y1 = cp * y1 - sp * y2;
  const double Y2 = sp * y1 + cp * y2;
  const double jac = std::pow(d.mu_plus * d.mu_minus, 0.25);
  return jac * oscillator(m, d.eps_plus, Y1) * oscillator(n, d.eps_minus, Y2);
}

double eigenvalue_type_ii(const TypeIIParams& p, int m, int n) {
  const TypeIIDerived d = xi_pair_type_ii(p);
  return geometric(d.xi_y1, m) * geometric(d.xi_y2, n);
}

double eigenfunction_type_ii(const TypeIIParams& p, int m, int n, double x1, double x2) {
  check_degree(m, n, "type II");
  const TypeIIDerived d = xi_pair_type_ii(p);
  const double y1 = (x1 + x2) / std::numbers::sqrt2;
  const double y2 = (x1 - x2) / std::numbers::sqrt2;
  return hermite_gauss(m, d.eps1, d.alpha1, y1) * hermite_gauss(n, d.eps2, d.alpha2, y2);
}

EntropyReport entropies(const GaussianKernelParams& p, std::span<const double> alphas,
                        bool want_von_neumann) {
  return entropy_report(xi_pair(p), purity(p), alphas, want_von_neumann);
}

}  // namespace gaussent
