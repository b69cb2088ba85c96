#include "gaussent/kernel_params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "gaussent/errors.hpp"

namespace gaussent {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_finite(std::initializer_list<double> values, const char* type) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidParams(std::string(type) + ": parameters must be finite");
  }
}

void require(bool ok, const char* message) {
  if (!ok) throw InvalidParams(message);
}

}  // namespace

std::string_view type_name(const GaussianKernelParams& p) noexcept {
  return std::visit(overloaded{
                        [](const SingleParams&) { return std::string_view("single"); },
                        [](const TypeIParams&) { return std::string_view("I"); },
                        [](const TypeIIParams&) { return std::string_view("II"); },
                        [](const TypeIIIParams&) { return std::string_view("III"); },
                        [](const TypeIVParams&) { return std::string_view("IV"); },
                    },
                    p);
}

int mode_count(const GaussianKernelParams& p) noexcept {
  return std::holds_alternative<SingleParams>(p) ? 1 : 2;
}

void validate(const TypeIParams& p) {
  require_finite({p.a1, p.a2, p.b, p.c, p.f}, "type I");
  require((p.a1 - p.c) * (p.a2 - p.c) - (p.b + p.f) * (p.b + p.f) > 0.0,
          "type I: requires (a1-c)(a2-c) - (b+f)^2 > 0");
  require((p.a1 + p.c) * (p.a2 + p.c) - (p.b - p.f) * (p.b - p.f) > 0.0,
          "type I: requires (a1+c)(a2+c) - (b-f)^2 > 0");
  const double r = std::hypot(p.a1 - p.a2, 2.0 * p.b);
  require(p.a1 + p.a2 - r > 0.0, "type I: requires mu_- = ((a1+a2) - sqrt((a1-a2)^2+4b^2))/2 > 0");
}

void validate(const TypeIIParams& p) {
  require_finite({p.a1, p.a2, p.b1, p.b2, p.c, p.f}, "type II");
  const double s = p.a1 + p.a2;
  const double bs = p.b1 + p.b2;
  require((s - 2.0 * p.c) * (s - 2.0 * p.c) - (bs + 2.0 * p.f) * (bs + 2.0 * p.f) > 0.0,
          "type II: requires (a1+a2-2c)^2 - (b1+b2+2f)^2 > 0");
  require((s + 2.0 * p.c) * (s + 2.0 * p.c) - (bs - 2.0 * p.f) * (bs - 2.0 * p.f) > 0.0,
          "type II: requires (a1+a2+2c)^2 - (b1+b2-2f)^2 > 0");
  require(s > std::abs(bs), "type II: requires a1+a2 > |b1+b2|");
  require((s - bs) * (s - bs) > 4.0 * (p.c + p.f) * (p.c + p.f),
          "type II: requires (a1+a2-b1-b2)^2 > 4(c+f)^2");
  require((s + bs) * (s + bs) > 4.0 * (p.c - p.f) * (p.c - p.f),
          "type II: requires (a1+a2+b1+b2)^2 > 4(c-f)^2");
}

void validate(const TypeIIIParams& p) {
  require_finite({p.a1, p.a2, p.b, p.c1, p.c2, p.f.real(), p.f.imag()}, "type III");
  const double fr = p.f.real();
  const double x1 = 4.0 * ((p.a1 - p.c1) * (p.a2 - p.c2) - (p.b + fr) * (p.b + fr));
  const double x2 = 4.0 * ((p.a1 + p.c1) * (p.a2 + p.c2) - (p.b - fr) * (p.b - fr));
  require(x1 > 0.0, "type III: requires X1 = 4[(a1-c1)(a2-c2) - (b+Re f)^2] > 0");
  require(x2 > 0.0, "type III: requires X2 = 4[(a1+c1)(a2+c2) - (b-Re f)^2] > 0");
  const double a_plus = (x2 + x1) / 8.0;
  const double s = a_plus + std::sqrt(x1 * x2 / 16.0);
  const double x = p.c1 * p.c2 - std::norm(p.f);
  require(s > 0.0, "type III: requires A+ + sqrt(A~) > 0");
  require(1.0 - 2.0 * x / s >= 0.0, "type III: requires 2(c1 c2 - |f|^2) <= A+ + sqrt(A~)");
}

void validate(const TypeIVParams& p) {
  require_finite({p.a1, p.a2, p.b, p.c, p.f1, p.f2}, "type IV");
  const double s = p.a1 + p.a2;
  const double fs = p.f1 + p.f2;
  const double y1 = (s - 2.0 * p.c) * (s - 2.0 * p.c) - (fs + 2.0 * p.b) * (fs + 2.0 * p.b);
  const double y2 = (s + 2.0 * p.c) * (s + 2.0 * p.c) - (fs - 2.0 * p.b) * (fs - 2.0 * p.b);
  require(y1 > 0.0, "type IV: requires Y1 = (a1+a2-2c)^2 - (f1+f2+2b)^2 > 0");
  require(y2 > 0.0, "type IV: requires Y2 = (a1+a2+2c)^2 - (f1+f2-2b)^2 > 0");
  const double sum = (y2 + y1) / 2.0 + std::sqrt(y1 * y2);
  const double y = p.c * p.c - p.f1 * p.f2;
  require(sum > 0.0, "type IV: requires B+ + sqrt(B~) > 0");
  require(y <= 0.0 || 8.0 * y / sum < 1.0, "type IV: requires 8y/(B+ + sqrt(B~)) < 1");
}

void validate(const GaussianKernelParams& p) {
  std::visit([](const auto& v) { validate(v); }, p);
}

double kernel_norm(const TypeIParams& p) {
  return 2.0 * std::sqrt((p.a1 - p.c) * (p.a2 - p.c) - (p.b + p.f) * (p.b + p.f)) / std::numbers::pi;
}

double kernel_norm(const TypeIIParams& p) {
  const double s = p.a1 + p.a2 - 2.0 * p.c;
  const double t = p.b1 + p.b2 + 2.0 * p.f;
  return std::sqrt(s * s - t * t) / std::numbers::pi;
}

double kernel_norm(const TypeIIIParams& p) {
  const double fr = p.f.real();
  return 2.0 * std::sqrt((p.a1 - p.c1) * (p.a2 - p.c2) - (p.b + fr) * (p.b + fr)) / std::numbers::pi;
}

double kernel_norm(const TypeIVParams& p) {
  const double s = p.a1 + p.a2 - 2.0 * p.c;
  const double t = 2.0 * p.b + p.f1 + p.f2;
  return std::sqrt(s * s - t * t) / std::numbers::pi;
}

cplx kernel_eval(const GaussianKernelParams& params, double x1p, double x2p, double x1, double x2) {
  validate(params);
  return std::visit(
      overloaded{
          [&](const SingleParams& p) { return cplx(single_kernel(p, x1p, x1)); },
          [&](const TypeIParams& p) {
            const double e = -p.a1 * (x1p * x1p + x1 * x1) - p.a2 * (x2p * x2p + x2 * x2) +
                             2.0 * p.b * (x1p * x2p + x1 * x2) + 2.0 * p.c * (x1 * x1p + x2 * x2p) +
                             2.0 * p.f * (x1 * x2p + x2 * x1p);
            return cplx(kernel_norm(p) * std::exp(e));
          },
          [&](const TypeIIParams& p) {
            const double e = -p.a1 * (x1p * x1p + x2p * x2p) - p.a2 * (x1 * x1 + x2 * x2) +
                             2.0 * p.b1 * x1p * x2p + 2.0 * p.b2 * x1 * x2 +
                             2.0 * p.c * (x1 * x1p + x2 * x2p) + 2.0 * p.f * (x1 * x2p + x2 * x1p);
            return cplx(kernel_norm(p) * std::exp(e));
          },
          [&](const TypeIIIParams& p) {
            const cplx e = -p.a1 * (x1p * x1p + x1 * x1) - p.a2 * (x2p * x2p + x2 * x2) +
                           2.0 * p.b * (x1 * x2 + x1p * x2p) + 2.0 * p.c1 * x1 * x1p +
                           2.0 * p.c2 * x2 * x2p + 2.0 * p.f * x1p * x2 +
                           2.0 * std::conj(p.f) * x1 * x2p;
            return kernel_norm(p) * std::exp(e);
          },
          [&](const TypeIVParams& p) {
            const double e = -p.a1 * (x1 * x1 + x2p * x2p) - p.a2 * (x1p * x1p + x2 * x2) +
                             2.0 * p.b * (x1p * x2p + x1 * x2) + 2.0 * p.c * (x1 * x1p + x2 * x2p) +
                             2.0 * p.f1 * x1 * x2p + 2.0 * p.f2 * x1p * x2;
            return cplx(kernel_norm(p) * std::exp(e));
          },
      },
      params);
}

cplx KernelForm::eval(const Eigen::VectorXd& q) const {
  const Eigen::VectorXcd qc = q.cast<cplx>();
  return norm * std::exp((qc.transpose() * exponent * qc)(0, 0));
}

Eigen::MatrixXd KernelForm::diagonal_decay() const {
  const Eigen::Index m = modes;
  const Eigen::MatrixXcd folded = exponent.topLeftCorner(m, m) + exponent.topRightCorner(m, m) +
                                  exponent.bottomLeftCorner(m, m) +
                                  exponent.bottomRightCorner(m, m);
  return -folded.real();
}

bool KernelForm::square_integrable() const {
  const Eigen::MatrixXd decay = -exponent.real();
  Eigen::LLT<Eigen::MatrixXd> llt(decay);
  return llt.info() == Eigen::Success;
}

KernelForm kernel_form(const GaussianKernelParams& params) {
  validate(params);
  KernelForm form;
  form.modes = mode_count(params);
  const Eigen::Index dim = 2 * form.modes;
  form.exponent = Eigen::MatrixXcd::Zero(dim, dim);
  auto& k = form.exponent;
  auto set = [&k](int i, int j, cplx v) {
    k(i, j) = v;
    k(j, i) = v;
  };
  // Indices: 0 = x1', 1 = x2', 2 = x1, 3 = x2 (single party: 0 = x', 1 = x).
  std::visit(overloaded{
                 [&](const SingleParams& p) {
                   form.norm = std::sqrt((p.a1 + p.a2 - 2.0 * p.b) / std::numbers::pi);
                   set(0, 0, -p.a2);
                   set(1, 1, -p.a1);
                   set(0, 1, p.b);
                 },
                 [&](const TypeIParams& p) {
                   form.norm = kernel_norm(p);
                   set(0, 0, -p.a1);
                   set(2, 2, -p.a1);
                   set(1, 1, -p.a2);
                   set(3, 3, -p.a2);
                   set(0, 1, p.b);
                   set(2, 3, p.b);
                   set(0, 2, p.c);
                   set(1, 3, p.c);
                   set(1, 2, p.f);
                   set(0, 3, p.f);
                 },
                 [&](const TypeIIParams& p) {
                   form.norm = kernel_norm(p);
                   set(0, 0, -p.a1);
                   set(1, 1, -p.a1);
                   set(2, 2, -p.a2);
                   set(3, 3, -p.a2);
                   set(0, 1, p.b1);
                   set(2, 3, p.b2);
                   set(0, 2, p.c);
                   set(1, 3, p.c);
                   set(1, 2, p.f);
                   set(0, 3, p.f);
                 },
                 [&](const TypeIIIParams& p) {
                   form.norm = kernel_norm(p);
                   set(0, 0, -p.a1);
                   set(2, 2, -p.a1);
                   set(1, 1, -p.a2);
                   set(3, 3, -p.a2);
                   set(0, 1, p.b);
                   set(2, 3, p.b);
                   set(0, 2, p.c1);
                   set(1, 3, p.c2);
                   set(0, 3, p.f);
                   set(1, 2, std::conj(p.f));
                 },
                 [&](const TypeIVParams& p) {
                   form.norm = kernel_norm(p);
                   set(2, 2, -p.a1);
                   set(1, 1, -p.a1);
                   set(0, 0, -p.a2);
                   set(3, 3, -p.a2);
                   set(0, 1, p.b);
                   set(2, 3, p.b);
                   set(0, 2, p.c);
                   set(1, 3, p.c);
                   set(1, 2, p.f1);
                   set(0, 3, p.f2);
                 },
             },
             params);
  return form;
}

}  // namespace gaussent
