#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gaussent/core_math.hpp"
#include "gaussent/errors.hpp"
#include "support/oracles.hpp"

using namespace gaussent;
using doctest::Approx;

TEST_CASE("hermite: low orders") {
  CHECK(hermite(0, 3.7) == 1.0);
  CHECK(hermite(1, 2.0) == 4.0);
  CHECK(hermite(3, 2.0) == 40.0);
  CHECK(hermite(4, 0.5) == Approx(16 * 0.0625 - 48 * 0.25 + 12));
}

TEST_CASE("hermite: derivative identity H_n' = 2n H_{n-1}") {
  const double h = 1e-5;
  for (int n = 1; n <= 12; ++n) {
    for (double z : {-1.7, -0.3, 0.4, 1.1, 2.2}) {
      const double fd = (hermite(n, z + h) - hermite(n, z - h)) / (2 * h);
      const double scale = std::max(1.0, std::abs(hermite(n, z)));
      CHECK(std::abs(fd - 2.0 * n * hermite(n - 1, z)) <= 1e-8 * scale * 10);
    }
  }
}

TEST_CASE("log_hermite_gauss_norm_sq matches quadrature") {
  for (int n : {0, 1, 3, 6}) {
    for (auto [eps, alpha] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {1.7, 1.2}, {0.8, 1.5}}) {
      double s = 0.0;
      const double hstep = 1e-3;
      for (double x = -15; x <= 15; x += hstep) {
        const double hv = hermite(n, std::sqrt(eps) * x);
        s += hv * hv * std::exp(-alpha * x * x) * hstep;
      }
      CHECK(log_hermite_gauss_norm_sq(n, eps, alpha) == Approx(std::log(s)).epsilon(1e-9));
    }
  }
}

TEST_CASE("log_hermite_gauss_norm_sq: harmonic-oscillator case") {
  // ε = α: 2^n n! √(π/α)
  for (int n = 0; n <= 30; n += 5) {
    const double expected = n * std::log(2.0) + std::lgamma(n + 1.0) + 0.5 * std::log(std::numbers::pi / 1.3);
    CHECK(log_hermite_gauss_norm_sq(n, 1.3, 1.3) == Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("geometric_renyi: values") {
  CHECK(geometric_renyi(GeometricParam{0.0}, 2) == 0.0);
  CHECK(geometric_renyi(GeometricParam{0.5}, 2) == Approx(std::log(3.0)).epsilon(1e-14));
  const double xi0 = 2 - std::sqrt(3.0);
  CHECK(geometric_renyi(GeometricParam{xi0}, 2) ==
        Approx(oracle_ref::series_renyi(xi0, 2)).epsilon(1e-13));
  CHECK(geometric_renyi(GeometricParam{xi0}, 2) == Approx(std::log(std::sqrt(3.0))).epsilon(1e-13));
}

TEST_CASE("geometric_renyi agrees with series sums") {
  for (double xi = 0.05; xi < 0.96; xi += 0.05) {
    for (double alpha : {2.0, 3.0, 4.0, 0.5, 2.5}) {
      CHECK(std::abs(geometric_renyi(GeometricParam{xi}, alpha) - oracle_ref::series_renyi(xi, alpha)) <
            1e-12 * std::max(1.0, oracle_ref::series_renyi(xi, alpha)));
    }
  }
}

TEST_CASE("geometric_renyi is increasing in xi") {
  for (double alpha : {2.0, 3.0}) {
    double prev = -1.0;
    for (int i = 1; i <= 100; ++i) {
      const double s = geometric_renyi(GeometricParam{i / 101.0}, alpha);
      CHECK(s > prev);
      prev = s;
    }
  }
}

TEST_CASE("geometric_renyi: negative xi only for integer orders") {
  CHECK(geometric_renyi(GeometricParam{-0.3}, 2) ==
        Approx(oracle_ref::series_renyi(-0.3, 2)).epsilon(1e-13));
  CHECK(geometric_renyi(GeometricParam{-0.3}, 3) ==
        Approx(oracle_ref::series_renyi(-0.3, 3)).epsilon(1e-13));
  CHECK_THROWS_AS(geometric_renyi(GeometricParam{-0.3}, 2.5), DomainError);
  CHECK_THROWS_AS(geometric_renyi(GeometricParam{1.0}, 2), DomainError);
  CHECK_THROWS_AS(geometric_renyi(GeometricParam{-1.2}, 2), DomainError);
}

TEST_CASE("geometric_von_neumann") {
  CHECK(geometric_von_neumann(GeometricParam{0.0}) == 0.0);
  CHECK(geometric_von_neumann(GeometricParam{0.5}) == Approx(2 * std::log(2.0)).epsilon(1e-14));
  const double xi0 = 2 - std::sqrt(3.0);
  CHECK(geometric_von_neumann(GeometricParam{xi0}) ==
        Approx(oracle_ref::series_von_neumann(xi0)).epsilon(1e-12));
  for (double xi = 0.1; xi < 0.95; xi += 0.1) {
    CHECK(geometric_von_neumann(GeometricParam{xi}) ==
          Approx(oracle_ref::series_von_neumann(xi)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(geometric_von_neumann(GeometricParam{-0.1}), DomainError);
}

TEST_CASE("alpha_limit_check converges to von Neumann") {
  const std::vector<double> eps{1e-3, 5e-4};
  CHECK(alpha_limit_check(GeometricParam{0.0}, eps) == Approx(0.0));
  CHECK(alpha_limit_check(GeometricParam{0.5}, eps) == Approx(1.3862944).epsilon(1e-6));
  for (int i = 1; i <= 9; ++i) {
    const GeometricParam xi{i / 10.0};
    CHECK(std::abs(alpha_limit_check(xi, eps) - geometric_von_neumann(xi)) < 1e-6);
  }
}

TEST_CASE("is_integer_order") {
  CHECK(is_integer_order(2.0));
  CHECK(is_integer_order(3.0 + 1e-15));
  CHECK_FALSE(is_integer_order(2.5));
}
