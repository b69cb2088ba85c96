#include "gaussent/purification.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "gaussent/errors.hpp"

namespace gaussent {

namespace {

const double kPiPow32 = std::pow(std::numbers::pi, 1.5);

void set_sym(Eigen::Matrix3cd& q, int i, int j, cplx v) {
  q(i, j) = v;
  q(j, i) = v;
}

void require_normalizable(const PureState3& s) {
  const Eigen::Matrix3d re = s.quad.real();
  Eigen::LLT<Eigen::Matrix3d> llt(re);
  if (llt.info() != Eigen::Success) {
    throw InvalidParams(s.family + " purification: Re Q is not positive definite");
  }
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

bool PureState3::is_real() const noexcept { return quad.imag().cwiseAbs().maxCoeff() == 0.0; }

PureState3 purify_type_i(const TypeIParams& p) {
  validate(p);
  const bool plus = close(p.c, p.f, kSurfaceTolerance);
  const bool minus = close(p.c, -p.f, kSurfaceTolerance);
  if (!plus && !minus) {
    throw ConditionNotMet("type I purification needs c = f or c = -f (got c = " +
                          std::to_string(p.c) + ", f = " + std::to_string(p.f) + ")");
  }
  const double z = p.c;
  if (z < 0.0) throw NegativeZ("type I purification needs z = c >= 0 (sqrt(z) appears)");
  // c = f pairs x1 and x2 symmetrically with x3; c = -f antisymmetrically.
  const double sign = plus ? 1.0 : -1.0;
  const double bz = p.b + sign * z;
  const double d = (p.a1 - z) * (p.a2 - z) - bz * bz;
  if (!(d > 0.0)) {
    throw InvalidParams("type I purification needs (a1-z)(a2-z) - (b" +
                        std::string(plus ? "+" : "-") + "z)^2 > 0");
  }
  PureState3 s;
  s.family = "I";
  s.normalization = 1.0 / kPiPow32;
  set_sym(s.quad, 0, 0, p.a1 + z);
  set_sym(s.quad, 1, 1, p.a2 + z);
  set_sym(s.quad, 0, 1, -(p.b - sign * z));
  set_sym(s.quad, 2, 2, 1.0 / (8.0 * d));
  const double k = 0.5 * std::sqrt(z / d);
  set_sym(s.quad, 0, 2, k);
  set_sym(s.quad, 1, 2, sign * k);
  require_normalizable(s);
  return s;
}

PureState3 purify_type_ii(const TypeIIParams& p) {
  validate(p);
  if (!close(p.a1, p.a2, kSurfaceTolerance) || !close(p.b1, p.b2, kSurfaceTolerance)) {
    throw ConditionNotMet(
        "type II purification is only known for a1 = a2 and b1 = b2; no pure state is known "
        "whose substate is a general type II kernel");
  }
  // With a1 = a2 and b1 = b2 the type II kernel coincides with a type I kernel.
  PureState3 s = purify_type_i(TypeIParams{p.a1, p.a2, p.b1, p.c, p.f});
  s.family = "II";
  return s;
}

PureState3 purify_type_iii(const TypeIIIParams& p, double theta, std::optional<double> xbar) {
  validate(p);
  const double f2 = std::norm(p.f);
  const double prod = p.c1 * p.c2;
  if (std::abs(prod - f2) > kTypeIIISurfaceTolerance * std::max({1e-300, std::abs(prod), f2})) {
    throw ConditionNotMet("type III purification needs c1 c2 = |f|^2 (got c1 c2 = " +
                          std::to_string(prod) + ", |f|^2 = " + std::to_string(f2) + ")");
  }
  if (p.c1 < 0.0 || p.c2 < 0.0) {
    throw InvalidParams("type III purification needs c1, c2 >= 0");
  }
  if (!std::isfinite(theta)) throw InvalidParams("type III purification: theta must be finite");
  const double fr = p.f.real();
  const double x1 = 4.0 * (p.a1 - p.c1) * (p.a2 - p.c2) - (2.0 * p.b + 2.0 * fr) * (2.0 * p.b + 2.0 * fr);
  const double xb = xbar.value_or(1.0 / x1);
  if (!(xb > 0.0) || !std::isfinite(xb)) throw InvalidParams("type III purification: xbar must be positive");

  TypeIIIPurificationInfo info;
  info.theta = theta;
  info.xbar = xb;
  info.theta_f = std::arg(p.f);
  const double tf = info.theta_f;
  const double sc = std::sqrt(prod);
  info.r1 = std::sqrt((p.a1 - p.c1) * (p.a1 - p.c1) + 4.0 * p.a1 * p.c1 * std::cos(theta) * std::cos(theta));
  info.r2 = std::sqrt((p.a2 - p.c2) * (p.a2 - p.c2) +
                      4.0 * p.a2 * p.c2 * std::cos(theta + tf) * std::cos(theta + tf));
  info.r3 = std::sqrt(std::max(0.0, prod + p.b * p.b - 2.0 * p.b * sc * std::cos(2.0 * theta + tf)));
  // Quadrants from the signs of the printed numerators and denominators.
  info.phi1 = std::atan2(p.c1 * std::sin(2.0 * theta), p.c1 * std::cos(2.0 * theta) + p.a1);
  info.phi2 = std::atan2(p.c2 * std::sin(2.0 * theta + 2.0 * tf),
                         p.c2 * std::cos(2.0 * theta + 2.0 * tf) + p.a2);
  info.phi3 = std::atan2(sc * std::sin(2.0 * theta + tf), sc * std::cos(2.0 * theta + tf) - p.b);

  PureState3 s;
  s.family = "III";
  s.normalization = std::sqrt(xb) * std::sqrt(x1) / kPiPow32;
  const cplx i(0.0, 1.0);
  set_sym(s.quad, 0, 0, info.r1 * std::exp(-i * info.phi1));
  set_sym(s.quad, 1, 1, info.r2 * std::exp(-i * info.phi2));
  set_sym(s.quad, 2, 2, xb / 2.0);
  set_sym(s.quad, 0, 1, info.r3 * std::exp(-i * info.phi3));
  set_sym(s.quad, 0, 2, std::sqrt(p.c1 * xb) * std::exp(-i * theta));
  set_sym(s.quad, 1, 2, std::sqrt(p.c2 * xb) * std::exp(-i * (theta + tf)));
  s.type_iii = info;
  require_normalizable(s);
  return s;
}

cplx psi_eval(const PureState3& s, double x1, double x2, double x3) {
  const Eigen::Vector3cd x(x1, x2, x3);
  const cplx e = (x.transpose() * s.quad * x)(0, 0);
  return std::sqrt(s.normalization) * std::exp(-e);
}

}  // namespace gaussent
