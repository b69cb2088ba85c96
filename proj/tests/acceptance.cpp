// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gaussent/bipartite.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/oracle.hpp"
#include "gaussent/purification.hpp"
#include "gaussent/simd/kernels.hpp"
#include "gaussent/single_party.hpp"
#include "support/oracles.hpp"

using namespace gaussent;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Fitted {
  XiPair xi;
  double trace2 = 0.0;
  double trace3 = 0.0;
};

Fitted fit_numeric(const GaussianKernelParams& p, std::optional<int> n = std::nullopt) {
  auto r = spectrum(discretize(p, default_grid(p, n)), SpectrumOptions{false});
  return {fit_geometric_pair(r).xi, r.trace2, r.trace3};
}

double xi_gap(const XiPair& a, const XiPair& b) {
  return std::max(std::abs(a.xi1 - b.xi1), std::abs(a.xi2 - b.xi2));
}

// ---------------------------------------------------------------- 1

Check criterion1() {
  Check c;
  const SingleParams p{1, 1, 0.5};
  const double xi0 = 2 - std::sqrt(3.0);
  const double closed = single_derive(p).xi0;
  c.require(std::abs(closed - xi0) <= 1e-15, "xi0 != 2 - sqrt(3): " + fmt("%.17g", closed));

  const auto r = spectrum(discretize(p, Grid::make(8, 200)));
  double worst = 0;
  for (int n = 0; n < 6; ++n) worst = std::max(worst, std::abs(r.eigenvalues[n] - (1 - xi0) * std::pow(xi0, n)));
  c.require(worst < 1e-6, "top-6 eigenvalue gap " + fmt("%.3g", worst));

  const std::vector<double> orders{2.0};
  const auto num = numeric_entropy(r, orders);
  const auto ent = single_entropies(p, orders);
  c.require(std::abs(ent.renyi[0].total - std::log(std::sqrt(3.0))) < 1e-12, "S_2 != ln sqrt 3");
  c.require(std::abs(num.renyi[0].second - ent.renyi[0].total) < 1e-6, "numeric S_2 gap");
  const double vn_gap = std::abs(*num.von_neumann - ent.von_neumann->total);
  c.require(vn_gap < 1e-6, "S_von numeric gap " + fmt("%.3g", vn_gap));
  if (c.ok) {
    c.detail = "top-6 gap " + fmt("%.2g", worst) + ", S_von " + fmt("%.10f", ent.von_neumann->total) +
               " (numeric gap " + fmt("%.2g", vn_gap) + ")";
  }
  return c;
}

// ---------------------------------------------------------------- 2, 3

template <class P>
Check pipeline(std::mt19937_64& rng, const std::function<P(std::mt19937_64&)>& draw,
               const std::function<XiPair(const P&)>& analytic, int count) {
  Check c;
  double worst_xi = 0, worst_purity = 0;
  for (int k = 0; k < count; ++k) {
    const P p = draw(rng);
    const auto fit = fit_numeric(p);
    const XiPair a = analytic(p);
    worst_xi = std::max(worst_xi, xi_gap(a, fit.xi));
    worst_purity = std::max(worst_purity, std::abs(fit.trace2 - purity(p)));
  }
  c.require(worst_xi < 1e-5, "worst xi gap " + fmt("%.3g", worst_xi));
  c.require(worst_purity < 1e-6, "worst purity gap " + fmt("%.3g", worst_purity));
  if (c.ok) {
    c.detail = std::to_string(count) + " draws, worst xi gap " + fmt("%.2g", worst_xi) + ", worst purity gap " +
               fmt("%.2g", worst_purity);
  }
  return c;
}

Check criterion2() {
  std::mt19937_64 rng(2002);
  return pipeline<TypeIParams>(rng, oracle_ref::draw_type_i, [](const TypeIParams& p) { return xi_pair_type_i(p).xi; },
                               50);
}

Check criterion3() {
  std::mt19937_64 rng(3003);
  Check c = pipeline<TypeIIParams>(rng, oracle_ref::draw_type_ii,
                                   [](const TypeIIParams& p) { return xi_pair_type_ii(p).xi; }, 50);
  double worst = 0;
  int used = 0;
  while (used < 200) {
    const double a = oracle_ref::uni(rng, 0.5, 2), b = oracle_ref::uni(rng, -0.3, 0.3);
    const double cc = oracle_ref::uni(rng, -0.2, 0.2), f = oracle_ref::uni(rng, -0.2, 0.2);
    const TypeIIParams p{a, a, b, b, cc, f};
    try {
      validate(p);
    } catch (const InvalidParams&) {
      continue;
    }
    const auto d = xi_pair_type_ii(p);
    const auto [s1, s2] = type_ii_symmetric_xi(a, b, cc, f);
    worst = std::max({worst, std::abs(d.xi_y1 - s1), std::abs(d.xi_y2 - s2)});
    ++used;
  }
  c.require(worst <= 1e-14, "special-case identity gap " + fmt("%.3g", worst));
  if (c.ok) c.detail += "; special-case identity gap " + fmt("%.2g", worst);
  return c;
}

// ---------------------------------------------------------------- 4

Check criterion4() {
  Check c;
  std::mt19937_64 rng(4004);
  double worst_rt = 0;
  for (int k = 0; k < 200; ++k) {
    const double a = oracle_ref::uni(rng, 0, 0.9), b = oracle_ref::uni(rng, 0, 0.9);
    const auto xi = moments_to_xi(moments_from_xi(XiPair::make(a, b)));
    worst_rt = std::max({worst_rt, std::abs(xi.xi1 - std::max(a, b)), std::abs(xi.xi2 - std::min(a, b))});
  }
  c.require(worst_rt < 1e-9, "(i) round-trip gap " + fmt("%.3g", worst_rt));

  double worst_red = 0;
  for (int k = 0; k < 100; ++k) {
    const auto t1 = oracle_ref::draw_type_i(rng);
    const TypeIIIParams t3{t1.a1, t1.a2, t1.b, t1.c, t1.c, {t1.f, 0.0}};
    worst_red = std::max(worst_red, xi_gap(xi_pair_type_i(t1).xi, xi_pair_type_iii(t3)));
  }
  c.require(worst_red < 1e-12, "(ii) reduction gap " + fmt("%.3g", worst_red));

  double worst_fit = 0;
  for (int k = 0; k < 25; ++k) {
    const auto p = oracle_ref::draw_type_iii(rng);
    worst_fit = std::max(worst_fit, xi_gap(xi_pair_type_iii(p), fit_numeric(p).xi));
  }
  c.require(worst_fit < 1e-5, "(iii) oracle gap " + fmt("%.3g", worst_fit));
  if (c.ok) {
    c.detail = "round trip " + fmt("%.2g", worst_rt) + ", reduction " + fmt("%.2g", worst_red) + ", oracle " +
               fmt("%.2g", worst_fit);
  }
  return c;
}

// ---------------------------------------------------------------- 5

Check criterion5() {
  Check c;
  std::mt19937_64 rng(5005);
  double worst = 0, least_imag = 1.0;
  int used = 0, rejected = 0;
  while (used < 25) {
    const auto p = oracle_ref::draw_type_iv(rng);
    XiPair xi;
    try {
      xi = xi_pair_type_iv(p);
    } catch (const ComplexRoots&) {
      // no real pair exists: the oracle must see complex-conjugate eigenvalues
      least_imag = std::min(least_imag, spectrum(discretize(p, default_grid(p))).max_imag);
      ++rejected;
      continue;
    }
    const auto r = spectrum(discretize(p, default_grid(p)));
    worst = std::max(worst, spectrum_gap(r.eigenvalues, xi, 20));
    ++used;
  }
  c.require(worst < 1e-5, "ansatz spectrum gap " + fmt("%.3g", worst));
  c.require(rejected == 0 || least_imag > 1e-6,
            "a draw without real roots has a real numeric spectrum (max |Im| " + fmt("%.3g", least_imag) + ")");

  const TypeIVParams ex{1, 1, 0.2, 0.1, 0.05, 0.05};
  const XiPair closed = xi_pair_type_iv(ex);
  const XiPair fitted = fit_numeric(ex).xi;
  const XiPair stated = XiPair::make(0.094445, 0.020989);
  const double g_closed = xi_gap(closed, stated), g_fit = xi_gap(fitted, stated);
  const std::string ex_detail = "worked example closed (" + fmt("%.7f", closed.xi1) + ", " + fmt("%.7f", closed.xi2) +
                                "), fitted (" + fmt("%.7f", fitted.xi1) + ", " + fmt("%.7f", fitted.xi2) +
                                "), expected (0.094445, 0.020989): gaps " + fmt("%.2g", g_closed) + " / " +
                                fmt("%.2g", g_fit);
  c.require(g_closed < 1e-5 && g_fit < 1e-5, ex_detail);
  const std::string sweep = std::to_string(used) + " draws (" + std::to_string(rejected) +
                            " without real roots redrawn, smallest max|Im lambda| there " +
                            fmt("%.2g", least_imag) + "), worst top-20 gap " + fmt("%.2g", worst);
  c.detail = c.ok ? sweep + "; " + ex_detail : c.detail + "; " + sweep;
  return c;
}

// ---------------------------------------------------------------- 6

Check criterion6() {
  Check c;
  double worst = 0;
  auto round_trip = [&](const GaussianKernelParams& p, const PureState3& s) {
    const Grid g = default_grid(p);
    const double gap = max_abs_difference(numeric_partial_trace(s, g).matrix, discretize(p, g).matrix);
    worst = std::max(worst, gap);
  };
  const TypeIParams i_plus{1, 1, 0.2, 0.1, 0.1}, i_minus{1.2, 0.8, -0.1, 0.15, -0.15};
  round_trip(i_plus, purify_type_i(i_plus));
  round_trip(i_minus, purify_type_i(i_minus));
  const TypeIIParams ii_plus{1, 1, 0.3, 0.3, 0.15, 0.15}, ii_minus{1.3, 1.3, -0.2, -0.2, 0.1, -0.1};
  round_trip(ii_plus, purify_type_ii(ii_plus));
  round_trip(ii_minus, purify_type_ii(ii_minus));
  const TypeIIIParams iii{1, 1.2, 0.1, 0.2, 0.05, std::polar(0.1, 0.6)};
  round_trip(iii, purify_type_iii(iii, 0.0));
  round_trip(iii, purify_type_iii(iii, 0.7));
  c.require(worst < 1e-7, "round-trip gap " + fmt("%.3g", worst));

  const auto a = purify_type_iii(TypeIIIParams{1, 1, 0.2, 0.1, 0.1, {0.1, 0}});
  const auto b = purify_type_i(i_plus);
  const double coef = std::max((a.quad - b.quad).cwiseAbs().maxCoeff(), std::abs(a.normalization - b.normalization));
  c.require(coef <= 1e-12, "type III / type I coefficient gap " + fmt("%.3g", coef));
  if (c.ok) c.detail = "worst round-trip gap " + fmt("%.2g", worst) + ", coefficient gap " + fmt("%.2g", coef);
  return c;
}

// ---------------------------------------------------------------- 7

Check criterion7() {
  Check c;
  std::mt19937_64 rng(7007);
  int cases = 0;
  auto one_zero = [&](const XiPair& xi, const char* what) {
    const bool ok = (std::abs(xi.xi2) < 1e-12) != (std::abs(xi.xi1) < 1e-12);
    c.require(ok, std::string(what) + ": (" + fmt("%.3g", xi.xi1) + ", " + fmt("%.3g", xi.xi2) + ")");
    ++cases;
  };
  auto try_xi = [](auto&& fn) -> std::optional<XiPair> {
    try {
      return fn();
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  int made = 0;
  while (made < 80) {
    const double a1 = oracle_ref::uni(rng, 0.5, 2), a2 = oracle_ref::uni(rng, 0.5, 2);
    const double b = oracle_ref::uni(rng, -0.3, 0.3), cc = oracle_ref::uni(rng, 0.02, 0.2);
    const double sign = (made % 2) ? -1.0 : 1.0;
    std::optional<XiPair> xi;
    const char* what = "";
    switch (made % 4) {
      case 0:
        what = "type I";
        xi = try_xi([&] { return xi_pair_type_i(TypeIParams{a1, a2, b, cc, sign * cc}).xi; });
        break;
      case 1:
        what = "type II";
        xi = try_xi([&] {
          return xi_pair_type_ii(TypeIIParams{a1, a2, b, oracle_ref::uni(rng, -0.3, 0.3), cc, sign * cc}).xi;
        });
        break;
      case 2: {
        what = "type III";
        const double c2 = oracle_ref::uni(rng, 0.02, 0.2);
        const double mod = std::sqrt(cc * c2);
        xi = try_xi([&] {
          const TypeIIIParams p{a1, a2, b, cc, c2, std::polar(mod, oracle_ref::uni(rng, -3, 3))};
          validate(p);
          return xi_pair_type_iii(p);
        });
        break;
      }
      default: {
        what = "type IV";
        const double f1 = oracle_ref::uni(rng, 0.05, 0.3);
        xi = try_xi([&] {
          const TypeIVParams p{a1, a2, b, cc, f1, cc * cc / f1};
          validate(p);
          return xi_pair_type_iv(p);
        });
        break;
      }
    }
    if (!xi) continue;
    one_zero(*xi, what);
    ++made;
  }
  if (c.ok) c.detail = std::to_string(cases) + " surface points across types I-IV";
  return c;
}

// ---------------------------------------------------------------- 8

Check criterion8() {
  Check c;
  const GaussianKernelParams ps[] = {GaussianKernelParams{TypeIParams{1, 1, 0.2, 0.1, 0.05}},
                                     GaussianKernelParams{TypeIIParams{1.1, 0.9, 0.2, 0.1, 0.12, 0.05}},
                                     GaussianKernelParams{TypeIIIParams{1, 1.2, 0.1, 0.15, 0.05, {0.06, 0.05}}},
                                     GaussianKernelParams{TypeIVParams{1, 1, 0.2, 0.1, 0.05, 0.05}}};
  double worst = 0;
  for (const auto& p : ps) {
    const double gap = xi_gap(fit_numeric(p, 40).xi, fit_numeric(p, 80).xi);
    c.require(gap < 1e-7, std::string(type_name(p)) + " refinement change " + fmt("%.3g", gap));
    worst = std::max(worst, gap);
  }
  if (c.ok) c.detail = "worst change N=40 -> 80: " + fmt("%.2g", worst);
  return c;
}

}  // namespace

int main() {
  std::printf("gaussent acceptance (simd backend: %s)\n", std::string(simd::to_string(simd::kernels().backend)).c_str());
  const std::pair<const char*, Check (*)()> criteria[] = {
      {"single-party golden case", criterion1},
      {"type I pipeline", criterion2},
      {"type II pipeline", criterion3},
      {"type III moments, reduction, oracle", criterion4},
      {"type IV ansatz validation", criterion5},
      {"purification round trips", criterion6},
      {"degenerate-surface structure", criterion7},
      {"grid convergence", criterion8},
  };
  int failed = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %d %s: %s [%.1fs]\n", c.ok ? "PASS" : "FAIL", index, name, c.detail.c_str(), secs);
    std::fflush(stdout);
    failed += c.ok ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
