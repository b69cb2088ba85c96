#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "gaussent/errors.hpp"
#include "gaussent/oracle.hpp"
#include "gaussent/simd/kernels.hpp"

namespace gaussent {

namespace {

constexpr Eigen::Index kTile = 64;

// Σ_ij A(i,j) B(j,i): column j of A against row j of B, one transposed tile at a time.
template <class Mat>
typename Mat::Scalar trace_of_product(const Mat& a, const Mat& b) {
  using Scalar = typename Mat::Scalar;
  const auto& kern = simd::kernels();
  const Eigen::Index n = a.rows();
  Mat tile(kTile, kTile);
  Scalar total{};
  for (Eigen::Index j0 = 0; j0 < n; j0 += kTile) {
    const Eigen::Index nj = std::min(kTile, n - j0);
    for (Eigen::Index i0 = 0; i0 < n; i0 += kTile) {
      const Eigen::Index ni = std::min(kTile, n - i0);
      tile.topLeftCorner(ni, nj) = b.block(j0, i0, nj, ni).transpose();
      for (Eigen::Index jj = 0; jj < nj; ++jj) {
        const Scalar* pa = a.col(j0 + jj).data() + i0;
        const Scalar* pb = tile.col(jj).data();
        if constexpr (std::is_same_v<Scalar, double>) {
          total += kern.dot(pa, pb, static_cast<std::size_t>(ni));
        } else {
          total += kern.dot_complex(pa, pb, static_cast<std::size_t>(ni));
        }
      }
    }
  }
  return total;
}

// max |M(i,j) - conj(M(j,i))|
template <class Mat>
double hermiticity_gap(const Mat& m) {
  using Scalar = typename Mat::Scalar;
  const auto& kern = simd::kernels();
  const Eigen::Index n = m.rows();
  Mat tile(kTile, kTile);
  double worst = 0.0;
  for (Eigen::Index j0 = 0; j0 < n; j0 += kTile) {
    const Eigen::Index nj = std::min(kTile, n - j0);
    for (Eigen::Index i0 = 0; i0 <= j0; i0 += kTile) {
      const Eigen::Index ni = std::min(kTile, n - i0);
      tile.topLeftCorner(ni, nj) = m.block(j0, i0, nj, ni).transpose();
      for (Eigen::Index jj = 0; jj < nj; ++jj) {
        const Scalar* pa = m.col(j0 + jj).data() + i0;
        const Scalar* pb = tile.col(jj).data();
        if constexpr (std::is_same_v<Scalar, double>) {
          worst = std::max(worst, kern.max_abs_diff(pa, pb, static_cast<std::size_t>(ni)));
        } else {
          worst = std::max(worst, kern.max_abs_diff_conj(pa, pb, static_cast<std::size_t>(ni)));
        }
      }
    }
  }
  return worst;
}

void check_info(lapack_int info, const char* routine) {
  if (info != 0) {
    throw EigFailure(std::string(routine) + " failed with info = " + std::to_string(info));
  }
}

struct Eig {
  std::vector<cplx> values;
  std::string solver;
};

Eig eig_real(const Eigen::MatrixXd& m, bool hermitian) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Eig out;
  if (hermitian) {
    Eigen::MatrixXd s = 0.5 * (m + m.transpose());
    std::vector<double> w(n);
    check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, s.data(), n, w.data()), "dsyevd");
    for (double v : w) out.values.emplace_back(v, 0.0);
    out.solver = "dsyevd";
  } else {
    Eigen::MatrixXd a = m;
    std::vector<double> wr(n), wi(n);
    check_info(LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(), wi.data(),
                             nullptr, 1, nullptr, 1),
               "dgeev");
    for (lapack_int i = 0; i < n; ++i) out.values.emplace_back(wr[i], wi[i]);
    out.solver = "dgeev";
  }
  return out;
}

Eig eig_complex(const Eigen::MatrixXcd& m, bool hermitian) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Eig out;
  if (hermitian) {
    Eigen::MatrixXcd s = 0.5 * (m + m.adjoint());
    std::vector<double> w(n);
    check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'U', n, s.data(), n, w.data()), "zheevd");
    for (double v : w) out.values.emplace_back(v, 0.0);
    out.solver = "zheevd";
  } else {
    Eigen::MatrixXcd a = m;
    std::vector<cplx> w(n);
    check_info(LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, w.data(), nullptr, 1,
                             nullptr, 1),
               "zgeev");
    out.values = std::move(w);
    out.solver = "zgeev";
  }
  return out;
}

template <class Mat>
void fill(SpectralOracleResult& r, const Mat& m, const SpectrumOptions& opt) {
  const double scale = m.cwiseAbs().maxCoeff();
  r.hermiticity_residual = scale > 0.0 ? hermiticity_gap(m) / scale : 0.0;
  r.trace = std::real(m.trace());
  const bool hermitian = r.hermiticity_residual <= opt.hermitian_threshold;
  Mat m2;
  if (hermitian) {
    // M² = M M^H: a rank-n update touches one triangle (syrk/herk), half the flops of M·M.
    m2 = Mat::Zero(m.rows(), m.cols());
    m2.template selfadjointView<Eigen::Lower>().rankUpdate(m);
    m2 = m2.template selfadjointView<Eigen::Lower>();
  } else {
    m2 = m * m;
  }
  r.trace2 = std::real(trace_of_product(m, m));
  r.trace3 = std::real(trace_of_product(m2, m));
  r.trace4 = std::real(trace_of_product(m2, m2));
  if (!opt.eigenvalues) return;
  Eig e;
  if constexpr (std::is_same_v<typename Mat::Scalar, double>) {
    e = eig_real(m, hermitian);
  } else {
    e = eig_complex(m, hermitian);
  }
  std::sort(e.values.begin(), e.values.end(),
            [](const cplx& a, const cplx& b) { return a.real() > b.real(); });
  r.solver = e.solver;
  r.max_imag = 0.0;
  r.eigenvalues.reserve(e.values.size());
  for (const cplx& v : e.values) {
    r.eigenvalues.push_back(v.real());
    r.max_imag = std::max(r.max_imag, std::abs(v.imag()));
  }
}

}  // namespace

SpectralOracleResult spectrum(const DiscreteOperator& op, const SpectrumOptions& opt) {
  SpectralOracleResult r;
  r.grid = op.grid;
  r.dim = op.dim();
  if (r.dim > kMaxOperatorDim) {
    throw ResourceLimit("operator dimension " + std::to_string(r.dim) + " exceeds " +
                        std::to_string(kMaxOperatorDim));
  }
  std::visit([&](const auto& m) { fill(r, m, opt); }, op.matrix);
  return r;
}

double max_abs_difference(const OperatorMatrix& a, const OperatorMatrix& b) {
  auto as_complex = [](const OperatorMatrix& m) -> Eigen::MatrixXcd {
    if (const auto* d = std::get_if<Eigen::MatrixXd>(&m)) return d->cast<cplx>();
    return std::get<Eigen::MatrixXcd>(m);
  };
  if (const auto* da = std::get_if<Eigen::MatrixXd>(&a)) {
    if (const auto* db = std::get_if<Eigen::MatrixXd>(&b)) {
      if (da->rows() != db->rows() || da->cols() != db->cols()) {
        throw InvalidParams("matrix shapes differ");
      }
      return (*da - *db).cwiseAbs().maxCoeff();
    }
  }
  const Eigen::MatrixXcd ca = as_complex(a);
  const Eigen::MatrixXcd cb = as_complex(b);
  if (ca.rows() != cb.rows() || ca.cols() != cb.cols()) throw InvalidParams("matrix shapes differ");
  return (ca - cb).cwiseAbs().maxCoeff();
}

}  // namespace gaussent
