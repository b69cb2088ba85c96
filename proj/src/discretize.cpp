#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gaussent/errors.hpp"
#include "gaussent/oracle.hpp"
#include "gaussent/simd/kernels.hpp"

namespace gaussent {

namespace {

// exp arguments of the per-column factors stay below this, so no partial product overflows.
constexpr double kFactorExpLimit = 600.0;

struct Prepared {
  KernelForm form;
  bool complex = false;
  long dim = 0;
};

Prepared prepare(const GaussianKernelParams& p, const Grid& g) {
  validate(p);
  if (g.points < 2 || !(g.half_width > 0.0)) throw InvalidParams("grid: invalid dimensions");
  Prepared out;
  out.form = kernel_form(p);
  if (!out.form.square_integrable()) {
    throw InvalidParams(
        "kernel does not decay jointly in all arguments; its integral operator is unbounded");
  }
  const long n = g.points;
  out.dim = out.form.modes == 1 ? n : n * n;
  if (out.dim > kMaxOperatorDim) {
    throw ResourceLimit("operator dimension " + std::to_string(out.dim) + " exceeds " +
                        std::to_string(kMaxOperatorDim) + " (reduce --grid-n)");
  }
  out.complex = out.form.exponent.imag().cwiseAbs().maxCoeff() != 0.0 ||
                out.form.norm.imag() != 0.0;
  return out;
}

double flush(double v) { return std::abs(v) < simd::kFlushBelow ? 0.0 : v; }
cplx flush(cplx v) { return {flush(v.real()), flush(v.imag())}; }

std::vector<double> nodes(const Grid& g) {
  std::vector<double> x(g.points);
  for (int i = 0; i < g.points; ++i) x[i] = g.node(i);
  return x;
}

std::vector<double> sqrt_weights(const Grid& g) {
  std::vector<double> w(g.points);
  for (int i = 0; i < g.points; ++i) w[i] = std::sqrt(g.weight(i));
  return w;
}

DiscreteOperator assemble_single(const Prepared& pr, const Grid& g) {
  const int n = g.points;
  const auto x = nodes(g);
  const auto sw = sqrt_weights(g);
  const auto& k = pr.form.exponent;
  const double norm = pr.form.norm.real();
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double e = k(0, 0).real() * x[i] * x[i] + k(1, 1).real() * x[j] * x[j] +
                       2.0 * k(0, 1).real() * x[i] * x[j];
      m(i, j) = flush(norm * std::exp(e) * sw[i] * sw[j]);
    }
  }
  return {g, 1, std::move(m)};
}

// Exponent of the 4-mode form at q = (x_i1, x_i2, x_j1, x_j2).
template <class T>
T exponent_at(const Eigen::MatrixXcd& k, const double q[4]) {
  T e{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if constexpr (std::is_same_v<T, double>) {
        e += k(a, b).real() * q[a] * q[b];
      } else {
        e += k(a, b) * (q[a] * q[b]);
      }
    }
  }
  return e;
}

template <class Scalar>
DiscreteOperator assemble_reference(const Prepared& pr, const Grid& g) {
  const int n = g.points;
  const auto x = nodes(g);
  const auto sw = sqrt_weights(g);
  const auto& k = pr.form.exponent;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat m(pr.dim, pr.dim);
  for (int j1 = 0; j1 < n; ++j1) {
    for (int j2 = 0; j2 < n; ++j2) {
      const long col = static_cast<long>(j1) * n + j2;
      for (int i1 = 0; i1 < n; ++i1) {
        for (int i2 = 0; i2 < n; ++i2) {
          const double q[4] = {x[i1], x[i2], x[j1], x[j2]};
          const double w = sw[i1] * sw[i2] * sw[j1] * sw[j2];
          Scalar v;
          if constexpr (std::is_same_v<Scalar, double>) {
            v = pr.form.norm.real() * std::exp(exponent_at<double>(k, q)) * w;
          } else {
            v = pr.form.norm * std::exp(exponent_at<cplx>(k, q)) * w;
          }
          m(static_cast<long>(i1) * n + i2, col) = flush(v);
        }
      }
    }
  }
  return {g, 2, std::move(m)};
}

DiscreteOperator reference(const Prepared& pr, const Grid& g) {
  if (pr.form.modes == 1) return assemble_single(pr, g);
  return pr.complex ? assemble_reference<cplx>(pr, g) : assemble_reference<double>(pr, g);
}

// Column J = (j1, j2) of the operator factorizes over the row index I = (i1, i2):
//   M[I, J] = norm · c_J · t[I] · exp(α_J x_i1) · exp(β_J x_i2)
// with t the weighted primed-block Gaussian, c_J its unprimed counterpart and α_J, β_J
// the cross couplings. Each block i1 is one scaled product over i2.
template <class Scalar>
DiscreteOperator assemble_factored(const Prepared& pr, const Grid& g) {
  const int n = g.points;
  const auto x = nodes(g);
  const auto sw = sqrt_weights(g);
  const auto& k = pr.form.exponent;
  const auto& kern = simd::kernels();

  std::vector<double> row_table(static_cast<std::size_t>(pr.dim));
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const double e = k(0, 0).real() * x[i1] * x[i1] + k(1, 1).real() * x[i2] * x[i2] +
                       2.0 * k(0, 1).real() * x[i1] * x[i2];
      row_table[static_cast<std::size_t>(i1) * n + i2] = std::exp(e) * sw[i1] * sw[i2];
    }
  }

  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat m(pr.dim, pr.dim);
  std::vector<Scalar> a(n), b(n);
  for (int j1 = 0; j1 < n; ++j1) {
    for (int j2 = 0; j2 < n; ++j2) {
      const long col = static_cast<long>(j1) * n + j2;
      const double ec = k(2, 2).real() * x[j1] * x[j1] + k(3, 3).real() * x[j2] * x[j2] +
                        2.0 * k(2, 3).real() * x[j1] * x[j2];
      const double c = std::exp(ec) * sw[j1] * sw[j2];
      const cplx alpha = 2.0 * (k(0, 2) * x[j1] + k(0, 3) * x[j2]);
      const cplx beta = 2.0 * (k(1, 2) * x[j1] + k(1, 3) * x[j2]);
      for (int i = 0; i < n; ++i) {
        if constexpr (std::is_same_v<Scalar, double>) {
          a[i] = std::exp(alpha.real() * x[i]);
          b[i] = std::exp(beta.real() * x[i]);
        } else {
          a[i] = std::exp(alpha * x[i]);
          b[i] = std::exp(beta * x[i]);
        }
      }
      Scalar* out = m.col(col).data();
      for (int i1 = 0; i1 < n; ++i1) {
        const double* t = row_table.data() + static_cast<std::size_t>(i1) * n;
        if constexpr (std::is_same_v<Scalar, double>) {
          kern.scaled_product(out + static_cast<std::size_t>(i1) * n,
                              pr.form.norm.real() * c * a[i1], t, b.data(), n);
        } else {
          kern.scaled_product_complex(out + static_cast<std::size_t>(i1) * n,
                                      pr.form.norm * c * a[i1], t, b.data(), n);
        }
      }
    }
  }
  return {g, 2, std::move(m)};
}

bool factors_bounded(const Prepared& pr, const Grid& g) {
  const auto& k = pr.form.exponent;
  const double l = g.half_width;
  const double ka = std::abs(k(0, 2).real()) + std::abs(k(0, 3).real());
  const double kb = std::abs(k(1, 2).real()) + std::abs(k(1, 3).real());
  return 2.0 * std::max(ka, kb) * l * l < kFactorExpLimit;
}

}  // namespace

long DiscreteOperator::dim() const noexcept {
  return std::visit([](const auto& m) { return static_cast<long>(m.rows()); }, matrix);
}

DiscreteOperator discretize(const GaussianKernelParams& p, const Grid& g) {
  const Prepared pr = prepare(p, g);
  if (pr.form.modes == 1 || !factors_bounded(pr, g)) return reference(pr, g);
  return pr.complex ? assemble_factored<cplx>(pr, g) : assemble_factored<double>(pr, g);
}

DiscreteOperator discretize_reference(const GaussianKernelParams& p, const Grid& g) {
  return reference(prepare(p, g), g);
}

}  // namespace gaussent
