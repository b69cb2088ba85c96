#include <doctest.h>

#include <cmath>
#include <random>

#include "gaussent/bipartite.hpp"
#include "gaussent/core_math.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/oracle.hpp"
#include "gaussent/purification.hpp"
#include "gaussent/single_party.hpp"
#include "support/oracles.hpp"

using namespace gaussent;
using doctest::Approx;

namespace {

const SingleParams golden{1, 1, 0.5};
const TypeIParams ex1{1, 1, 0.2, 0.1, 0.05};
const TypeIVParams ex4{1, 1, 0.2, 0.1, 0.05, 0.05};

Eigen::MatrixXcd as_complex(const OperatorMatrix& m) {
  if (const auto* d = std::get_if<Eigen::MatrixXd>(&m)) return d->cast<cplx>();
  return std::get<Eigen::MatrixXcd>(m);
}

}  // namespace

TEST_CASE("Grid") {
  const Grid g = Grid::make(8, 200);
  CHECK(g.spacing() == Approx(16.0 / 199));
  CHECK(g.node(0) == -8.0);
  CHECK(g.node(199) == Approx(8.0));
  CHECK(g.weight(0) == Approx(g.spacing() / 2));
  CHECK_THROWS_AS(Grid::make(8, 12), InvalidParams);
  CHECK_NOTHROW(Grid::make(8, 12, true));
  CHECK_THROWS_AS(Grid::make(-1, 40), InvalidParams);
  CHECK(auto_half_width(TypeIParams{0.05, 0.05, 0.0, 0.0, 0.0}) == kMaxAutoHalfWidth);
  const double L = auto_half_width(ex1);
  CHECK(L > 3.0);
  CHECK(L < kMaxAutoHalfWidth);
}

TEST_CASE("discretize: trace and symmetry") {
  const auto single = discretize(golden, Grid::make(8, 200));
  CHECK(std::get<Eigen::MatrixXd>(single.matrix).trace() == Approx(1.0).epsilon(1e-9));

  const auto m1 = discretize(ex1, Grid::make(7, 30));
  const auto& d1 = std::get<Eigen::MatrixXd>(m1.matrix);
  CHECK((d1 - d1.transpose()).cwiseAbs().maxCoeff() < 1e-12);

  const auto m4 = spectrum(discretize(TypeIVParams{1.3, 0.8, 0.2, 0.1, 0.05, 0.07}, Grid::make(7, 24)));
  CHECK(m4.hermiticity_residual > 1e-3);
  CHECK(m4.solver == "dgeev");
}

TEST_CASE("discretize is the symmetrized plain Nystrom matrix") {
  std::mt19937_64 rng(99);
  const oracle_ref::PlainGrid pg{6, 16};
  const Grid g = Grid::make(6, 16);
  const GaussianKernelParams ps[] = {GaussianKernelParams{oracle_ref::draw_type_i(rng)},
                                     GaussianKernelParams{oracle_ref::draw_type_ii(rng)},
                                     GaussianKernelParams{oracle_ref::draw_type_iii(rng)},
                                     GaussianKernelParams{oracle_ref::draw_type_iv(rng)}};
  for (const auto& p : ps) {
    const Eigen::MatrixXcd plain = oracle_ref::plain_nystrom(p, pg);
    const Eigen::MatrixXcd ours = as_complex(discretize(p, g).matrix);
    double worst = 0.0;
    for (int i = 0; i < plain.rows(); ++i) {
      for (int j = 0; j < plain.cols(); ++j) {
        const double wi = pg.w(i / 16) * pg.w(i % 16), wj = pg.w(j / 16) * pg.w(j % 16);
        worst = std::max(worst, std::abs(ours(i, j) - plain(i, j) * std::sqrt(wi / wj)));
      }
    }
    CHECK(worst < 1e-15);
  }
}

TEST_CASE("discretize matches the reference assembly") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 4; ++k) {
    const GaussianKernelParams ps[] = {GaussianKernelParams{oracle_ref::draw_type_i(rng)},
                                       GaussianKernelParams{oracle_ref::draw_type_ii(rng)},
                                       GaussianKernelParams{oracle_ref::draw_type_iii(rng)},
                                       GaussianKernelParams{oracle_ref::draw_type_iv(rng)}};
    for (const auto& p : ps) {
      const Grid g = default_grid(p, 24);
      CHECK(max_abs_difference(discretize(p, g).matrix, discretize_reference(p, g).matrix) < 1e-14);
    }
  }
  const Grid g = Grid::make(8, 200);
  CHECK(max_abs_difference(discretize(golden, g).matrix, discretize_reference(golden, g).matrix) < 1e-14);
}

TEST_CASE("discretize: strong cross terms take the reference path") {
  // 2·|cross|·L² well past the factor-table guard
  const TypeIParams wide{20, 20, 8, 5, 4};
  const Grid g = Grid::make(6, 20);
  CHECK(max_abs_difference(discretize(wide, g).matrix, discretize_reference(wide, g).matrix) < 1e-14);
}

TEST_CASE("discretize: resource limit and joint decay") {
  CHECK_THROWS_AS(discretize(ex1, Grid::make(7, 81)), ResourceLimit);
  CHECK_THROWS_AS(discretize(TypeIParams{1, 1, 0.9, 0.1, 0.1}, Grid::make(7, 20)), InvalidParams);
}

TEST_CASE("spectrum: single-party golden case") {
  const auto r = spectrum(discretize(golden, Grid::make(8, 200)));
  const double xi0 = 2 - std::sqrt(3.0);
  const double want[] = {0.73205, 0.19615, 0.05256, 0.01408};
  for (int n = 0; n < 4; ++n) {
    CHECK(std::abs(r.eigenvalues[n] - want[n]) < 1e-5);
    CHECK(std::abs(r.eigenvalues[n] - (1 - xi0) * std::pow(xi0, n)) < 1e-6);
  }
  CHECK(r.trace == Approx(1.0).epsilon(1e-9));
  CHECK(r.solver == "dsyevd");
}

TEST_CASE("spectrum: pure state is rank one") {
  const auto r = spectrum(discretize(TypeIParams{1, 1, 0.2, 0, 0}, Grid::make(7, 30)));
  CHECK(r.eigenvalues[0] == Approx(1.0).epsilon(1e-9));
  for (std::size_t k = 1; k < r.eigenvalues.size(); ++k) CHECK(std::abs(r.eigenvalues[k]) < 1e-8);
}

TEST_CASE("spectrum: traces agree with eigenvalues and closed forms") {
  std::mt19937_64 rng(13);
  const GaussianKernelParams ps[] = {GaussianKernelParams{oracle_ref::draw_type_i(rng)},
                                     GaussianKernelParams{oracle_ref::draw_type_ii(rng)},
                                     GaussianKernelParams{oracle_ref::draw_type_iii(rng)},
                                     GaussianKernelParams{oracle_ref::draw_type_iv(rng)}};
  for (const auto& p : ps) {
    const auto r = spectrum(discretize(p, default_grid(p)));
    double s2 = 0, s3 = 0;
    for (double v : r.eigenvalues) {
      s2 += v * v;
      s3 += v * v * v;
    }
    CHECK(r.trace == Approx(1.0).epsilon(1e-7));
    CHECK(r.trace2 == Approx(s2).epsilon(1e-12));
    CHECK(r.trace3 == Approx(s3).epsilon(1e-12));
    CHECK(std::abs(r.trace2 - purity(p)) < 1e-6);
    CHECK(std::abs(r.trace3 - moments(p).beta2) < 1e-6);
  }
}

TEST_CASE("spectrum: eigenvalues agree with an independent eigensolver") {
  const TypeIIIParams p{1.2, 0.9, 0.1, 0.15, 0.05, {0.04, 0.06}};
  const oracle_ref::PlainGrid pg{6, 18};
  const auto ours = spectrum(discretize(p, Grid::make(6, 18))).eigenvalues;
  const auto theirs = oracle_ref::eigen_spectrum(oracle_ref::plain_nystrom(p, pg));
  for (int k = 0; k < 20; ++k) CHECK(std::abs(ours[k] - theirs[k]) < 1e-12);
}

TEST_CASE("Hermitian instances have small residuals") {
  const GaussianKernelParams ps[] = {GaussianKernelParams{ex1}, GaussianKernelParams{TypeIIParams{1, 1, 0.3, 0.3, 0.2, 0.1}},
                                     GaussianKernelParams{TypeIIIParams{1, 1.2, 0.1, 0.2, 0.05, {0.05, 0.08}}}};
  for (const auto& p : ps) {
    const auto r = spectrum(discretize(p, default_grid(p, 30)));
    CHECK(r.hermiticity_residual < 1e-10);
    CHECK(r.max_imag < 1e-10);
  }
}

TEST_CASE("fit_geometric_pair") {
  auto r = spectrum(discretize(ex1, default_grid(ex1, 40, 7.0)));
  const auto fit = fit_geometric_pair(r);
  CHECK(std::abs(fit.xi.xi1 - 0.09459) < 1e-5);
  CHECK(std::abs(fit.xi.xi2 - 0.02084) < 1e-5);
  CHECK(std::abs(fit.xi.xi1 - xi_pair_type_i(ex1).xi.xi1) < 1e-9);
  CHECK(*fit.goodness < 1e-5);
  CHECK(r.fitted_xi.has_value());

  auto pure = spectrum(discretize(TypeIParams{1, 1, 0.2, 0, 0}, Grid::make(7, 30)));
  const auto pf = fit_geometric_pair(pure);
  CHECK(std::abs(pf.xi.xi1) < 1e-7);
  CHECK(std::abs(pf.xi.xi2) < 1e-7);
  CHECK(*pf.goodness < 1e-7);

  auto r4 = spectrum(discretize(ex4, default_grid(ex4, 40)));
  const auto f4 = fit_geometric_pair(r4);
  const auto closed = xi_pair_type_iv(ex4);
  CHECK(std::abs(f4.xi.xi1 - closed.xi1) < 1e-5);
  CHECK(std::abs(f4.xi.xi2 - closed.xi2) < 1e-5);
  CHECK(*f4.goodness < 1e-5);
}

TEST_CASE("fit picks the right root for negative xi sums") {
  const GaussianKernelParams ps[] = {GaussianKernelParams{TypeIVParams{1, 1, 0.2, -0.1, 0.05, 0.05}},
                                     GaussianKernelParams{TypeIParams{1, 1, 0.1, -0.15, 0.05}}};
  for (const auto& p : ps) {
    const auto closed = xi_pair(p);
    REQUIRE(closed.xi1 + closed.xi2 < 0);
    auto r = spectrum(discretize(p, default_grid(p)));
    const auto fit = fit_geometric_pair(r);
    CHECK(std::abs(fit.xi.xi1 - closed.xi1) < 1e-6);
    CHECK(std::abs(fit.xi.xi2 - closed.xi2) < 1e-6);
    CHECK(*fit.goodness < 1e-5);
  }
}

TEST_CASE("type IV draws without a real xi pair have complex spectra") {
  std::mt19937_64 rng(51);
  int seen = 0;
  while (seen < 3) {
    const auto p = oracle_ref::draw_type_iv(rng);
    try {
      xi_pair_type_iv(p);
      continue;
    } catch (const ComplexRoots&) {
    }
    const auto r = spectrum(discretize(p, default_grid(p, 30)));
    CHECK(r.max_imag > 1e-6);
    ++seen;
  }
}

TEST_CASE("fit without eigenvalues uses traces only") {
  auto r = spectrum(discretize(ex1, default_grid(ex1, 40)), SpectrumOptions{false});
  CHECK(r.eigenvalues.empty());
  const auto fit = fit_geometric_pair(r);
  CHECK_FALSE(fit.goodness.has_value());
  CHECK(std::abs(fit.xi.xi1 - xi_pair_type_i(ex1).xi.xi1) < 1e-9);
}

TEST_CASE("spectrum_gap") {
  const auto xi = XiPair::make(0.3, 0.1);
  CHECK(spectrum_gap(xi.top_eigenvalues(20), xi, 20) == 0.0);
  std::vector<double> v = xi.top_eigenvalues(20);
  v[3] += 1e-3;
  CHECK(spectrum_gap(v, xi, 20) == Approx(1e-3));
}

TEST_CASE("numeric_entropy") {
  SpectralOracleResult rank1;
  rank1.eigenvalues = {1.0, 0.0, -1e-12};
  const std::vector<double> orders{2.0, 3.0};
  const auto z = numeric_entropy(rank1, orders);
  CHECK(z.renyi[0].second == Approx(0.0));
  CHECK(*z.von_neumann == Approx(0.0));

  const auto g = spectrum(discretize(golden, Grid::make(8, 200)));
  const auto s = numeric_entropy(g, orders);
  CHECK(*s.von_neumann == Approx(geometric_von_neumann(GeometricParam{2 - std::sqrt(3.0)})).epsilon(1e-6));
  CHECK(s.renyi[0].second == Approx(std::log(std::sqrt(3.0))).epsilon(1e-8));

  const auto t = spectrum(discretize(ex1, default_grid(ex1, 40)));
  const auto closed = entropies(ex1, orders);
  CHECK(std::abs(*numeric_entropy(t, orders).von_neumann - closed.von_neumann->total) < 1e-4);

  SpectralOracleResult bad;
  bad.eigenvalues = {0.9, 0.1};
  bad.max_imag = 1e-6;
  CHECK_THROWS_AS(numeric_entropy(bad, orders), ImaginarySpectrum);
}

TEST_CASE("numeric_partial_trace") {
  const TypeIParams pure{1, 1, 0.2, 0, 0};
  const Grid g = default_grid(pure, 30);
  const auto b0 = numeric_partial_trace(purify_type_i(pure), g);
  CHECK(max_abs_difference(b0.matrix, discretize(pure, g).matrix) < 1e-9);

  const TypeIParams p{1, 1, 0.2, 0.1, 0.1};
  const Grid g1 = default_grid(p, 30);
  const auto b = numeric_partial_trace(purify_type_i(p), g1);
  CHECK(max_abs_difference(b.matrix, discretize(p, g1).matrix) < 1e-7);
  CHECK(std::get<Eigen::MatrixXd>(b.matrix).trace() == Approx(1.0).epsilon(1e-7));

  const TypeIIIParams p3{1, 1.2, 0.1, 0.2, 0.05, std::polar(0.1, 0.6)};
  const Grid g3 = default_grid(p3, 26);
  const auto b3 = numeric_partial_trace(purify_type_iii(p3, 0.7), g3);
  CHECK(b3.is_complex());
  CHECK(max_abs_difference(b3.matrix, discretize(p3, g3).matrix) < 1e-7);
}

TEST_CASE("assembly is deterministic") {
  const TypeIIIParams p{1, 1.2, 0.1, 0.2, 0.05, {0.05, 0.05}};
  const Grid g = default_grid(p, 30);
  CHECK(max_abs_difference(discretize(p, g).matrix, discretize(p, g).matrix) == 0.0);
}
