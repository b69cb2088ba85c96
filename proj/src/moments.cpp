#include <cmath>
#include <string>
#include <vector>

#include "gaussent/bipartite.hpp"
#include "gaussent/errors.hpp"

namespace gaussent {

namespace {

struct QuadraticRoots {
  // Root carrying +√D (the printed branch) and the one carrying -√D.
  double plus = std::nan("");
  double minus = std::nan("");
};

// Roots of a u² + b u + c = 0 with c = -3β2, without cancellation.
QuadraticRoots solve_u(double a, double b, double c) {
  QuadraticRoots r;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return r;
  const double sd = std::sqrt(disc);
  if (a == 0.0) {
    if (b != 0.0) r.plus = -c / b;
    return r;
  }
  if (b >= 0.0) {
    const double q = -0.5 * (b + sd);
    r.plus = q != 0.0 ? c / q : std::nan("");
    r.minus = q / a;
  } else {
    const double q = 0.5 * (sd - b);
    r.plus = q / a;
    r.minus = c / q;
  }
  return r;
}

struct Setup {
  bool pure_limit = false;  // β1 = 1 exactly: u = 0
  double k = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
};

Setup setup(const MomentPair& m) {
  if (!std::isfinite(m.beta1) || !std::isfinite(m.beta2) || !(m.beta1 > 0.0) || !(m.beta2 > 0.0)) {
    throw DomainError("moment inversion requires finite beta1, beta2 > 0");
  }
  Setup s;
  if (std::abs(1.0 - m.beta1) <= 1e-15) {
    s.pure_limit = true;
    return s;
  }
  // With k = (1+β1)/(1-β1), v = k u - 1 and the β2 equation reduces to a u² + b u + c = 0.
  s.k = (1.0 + m.beta1) / (1.0 - m.beta1);
  s.a = (s.k - 1.0) * (s.k - 1.0) - m.beta2 * (1.0 + s.k + s.k * s.k);
  s.b = 3.0 * m.beta2 * s.k;
  s.c = -3.0 * m.beta2;
  return s;
}

// β1 = 1: u = 0 and (β2-1)v² - (β2+2)v + (β2-1) = 0; the root with |v| <= 1.
double pure_limit_v(double beta2) {
  const double a = beta2 - 1.0;
  if (a == 0.0) return 0.0;
  const double b = -(beta2 + 2.0);
  const double disc = b * b - 4.0 * a * a;
  const double q = -0.5 * (b - std::sqrt(disc));
  return a / q;
}

bool admissible(double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v)) return false;
  const double disc = u * u - 4.0 * v;
  if (disc < -1e-14 * std::max(1.0, u * u)) return false;
  const double root = std::sqrt(std::max(disc, 0.0));
  return std::abs(u) + root < 2.0;
}

}  // namespace

XiPair moments_to_xi(const MomentPair& m) {
  const Setup s = setup(m);
  if (s.pure_limit) return xi_from_symmetric({0.0, pure_limit_v(m.beta2)});
  const double disc = s.b * s.b - 4.0 * s.a * s.c;
  if (disc < 0.0) {
    throw ComplexRoots("moment inversion: 16 beta1^2 - beta2 (3 - beta1)^2 < 0");
  }
  const double u = solve_u(s.a, s.b, s.c).plus;
  if (!std::isfinite(u)) {
    throw DegenerateDenominator("moment inversion: printed branch has no finite root");
  }
  return xi_from_symmetric({u, s.k * u - 1.0});
}

std::vector<XiPair> moment_inversion_candidates(const MomentPair& m) {
  const Setup s = setup(m);
  std::vector<XiPair> out;
  auto push = [&out](double u, double v) {
    if (!admissible(u, v)) return;
    try {
      out.push_back(xi_from_symmetric({u, v}));
    } catch (const Error&) {
    }
  };
  if (s.pure_limit) {
    push(0.0, pure_limit_v(m.beta2));
    return out;
  }
  const QuadraticRoots r = solve_u(s.a, s.b, s.c);
  push(r.plus, s.k * r.plus - 1.0);
  push(r.minus, s.k * r.minus - 1.0);
  return out;
}

}  // namespace gaussent
