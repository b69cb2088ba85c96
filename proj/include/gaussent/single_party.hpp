#pragma once

#include <span>

#include "gaussent/entropy.hpp"

namespace gaussent {

/// ρ0[x', x] = A exp(-a1 x² - a2 x'² + 2 b x x'). a1 weights the unprimed argument.
struct SingleParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;
};

struct SingleDerived {
  double epsilon0 = 0.0;  // √((a1+a2)² - 4b²)
  double alpha0 = 0.0;    // ε0 - (a1 - a2)
  double xi0 = 0.0;
  double norm = 0.0;      // A = √((a1+a2-2b)/π)

  bool physical() const noexcept { return xi0 >= 0.0 && xi0 < 1.0; }
};

/// Throws InvalidParams naming the first violated condition.
void validate(const SingleParams& p);

SingleDerived single_derive(const SingleParams& p);

double single_eigenvalue(const SingleParams& p, int n);

inline constexpr int kMaxSingleDegree = 60;

/// Normalized eigenfunction f_n(x) = C_n^{-1} H_n(√ε0 x) e^{-α0 x²/2}.
double single_eigenfunction(const SingleParams& p, int n, double x);

double single_kernel(const SingleParams& p, double xp, double x);

/// tr ρ0² = √((a1+a2-2b)/(a1+a2+2b)).
double single_purity(const SingleParams& p);

EntropyReport single_entropies(const SingleParams& p, std::span<const double> alphas,
                               bool want_von_neumann = true);

}  // namespace gaussent
