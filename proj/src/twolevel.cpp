#include "ptgp/twolevel.hpp"

#include <cmath>

#include "ptgp/angles.hpp"
#include "ptgp/errors.hpp"

namespace ptgp::twolevel {

namespace {

struct Frame {
  double r[3];
  double t[3];
  double f[3];
};

Frame frame(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta), sp = std::sin(phi), cp = std::cos(phi);
  return {{st * cp, st * sp, ct}, {ct * cp, ct * sp, -st}, {-sp, cp, 0.0}};
}

ComplexMatrix dot_sigma(const Complex v[3]) {
  ComplexMatrix m(2, 2);
  m << v[2], v[0] - kI * v[1], v[0] + kI * v[1], -v[2];
  return m;
}

ComplexMatrix phi_sigma(double phi) {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI * std::exp(-kI * phi), kI * std::exp(kI * phi), 0.0;
  return m;
}

void require_gap(double a, double b) {
  if (!(a > std::abs(b))) throw Error(ErrorCode::UnsupportedParameters, "closed forms need a > |b|");
}

TwoLevelParams from_point(double a, double b, double eps, const ParameterPoint& p) {
  if (p.size() != 2) throw Error(ErrorCode::DimensionMismatch, "two-level model takes (theta, phi)");
  return {a, b, eps, p[0], p[1]};
}

// arg(w_+ e^{i t_+} + w_- e^{i t_-}) with w_pm ~ e^{-+ beta gap}.
double weighted_arg(Complex plus, Complex minus, double gap, double beta) {
  const double lp = -beta * gap - plus.imag();
  const double lm = beta * gap - minus.imag();
  const double top = std::max(lp, lm);
  const Complex amp = std::exp(lp - top) * std::exp(kI * plus.real()) + std::exp(lm - top) * std::exp(kI * minus.real());
  return wrap_2pi(std::arg(amp));
}

}  // namespace

ComplexMatrix hamiltonian(const TwoLevelParams& p) {
  const Frame fr = frame(p.theta, p.phi);
  Complex v[3];
  for (int i = 0; i < 3; ++i) v[i] = p.a * fr.r[i] + kI * p.b * fr.t[i];
  return ComplexMatrix(p.epsilon * ComplexMatrix::Identity(2, 2) + dot_sigma(v));
}

ComplexMatrix metric(const TwoLevelParams& p) {
  if (p.b == 0.0) return ComplexMatrix::Identity(2, 2);
  return ComplexMatrix(ComplexMatrix::Identity(2, 2) - (p.b / p.a) * phi_sigma(p.phi));
}

PTSystem make_system(double a, double b, double epsilon) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(epsilon) || a == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "two-level model needs finite a != 0, b, epsilon");
  }
  return PTSystem(
      "two-level-pt", 2, [=](const ParameterPoint& p) { return hamiltonian(from_point(a, b, epsilon, p)); },
      [=](const ParameterPoint& p) { return metric(from_point(a, b, epsilon, p)); });
}

std::pair<ComplexVector, ComplexVector> analytic_eigenvectors(const TwoLevelParams& p) {
  require_gap(p.a, p.b);
  const double root = std::sqrt(p.a * p.a - p.b * p.b);
  const double alpha = p.b / (p.a + root);
  const Complex norm = std::exp(-kI * 0.5 * p.theta) * std::sqrt((p.a * p.a + p.a * root) / (2.0 * root * root));
  const double c = std::cos(0.5 * p.theta), s = std::sin(0.5 * p.theta);
  const Complex phase = std::exp(-kI * p.phi);
  ComplexVector plus(2), minus(2);
  plus << norm * (c - kI * alpha * s) * phase, norm * (kI * alpha * c + s);
  minus << -norm * (kI * alpha * c + s) * phase, norm * (c - kI * alpha * s);
  return {plus, minus};
}

std::pair<double, double> analytic_theta2(const TwoLevelParams& p, bool pole_enclosed) {
  require_gap(p.a, p.b);
  const double r = p.a / std::sqrt(p.a * p.a - p.b * p.b);
  const double omega = kTwoPi * (1.0 - std::cos(p.theta));
  double plus = -0.5 * r * omega + 0.25 * kPi * (1.0 - r);
  double minus = 0.5 * r * omega - 0.25 * kPi * (1.0 - r);
  if (pole_enclosed) {
    plus += (1.0 + r) * kPi;
    minus += (1.0 - r) * kPi;
  }
  return {plus, minus};
}

std::pair<Complex, Complex> analytic_theta1(const TwoLevelParams& p) {
  if (std::abs(p.a - 3.0) > 1e-12 || std::abs(p.b - std::sqrt(5.0)) > 1e-12) {
    throw Error(ErrorCode::UnsupportedParameters, "reference theta1 is only defined for a = 3, b = sqrt 5");
  }
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const double re = -1.5 * kPi * (1.0 - ct) + 3.0 * kPi / 8.0;
  const double im = -0.5 * kPi * std::sqrt(5.0) * st;
  return {Complex(wrap_2pi(re), im), Complex(wrap_2pi(-re), -im)};
}

double analytic_igp(const TwoLevelParams& p, double beta) {
  auto [plus, minus] = analytic_theta1(p);
  return weighted_arg(plus, minus, 2.0, beta);
}

std::pair<Complex, Complex> latitude_theta1(const TwoLevelParams& p) {
  require_gap(p.a, p.b);
  const Complex z = (p.a * std::cos(p.theta) - kI * p.b * std::sin(p.theta)) / std::sqrt(p.a * p.a - p.b * p.b);
  const Complex plus = kTwoPi * (0.5 * z - 0.5);
  const Complex minus = kTwoPi * (-0.5 * z - 0.5);
  return {Complex(wrap_2pi(plus.real()), plus.imag()), Complex(wrap_2pi(minus.real()), minus.imag())};
}

double latitude_igp(const TwoLevelParams& p, double beta) {
  auto [plus, minus] = latitude_theta1(p);
  return weighted_arg(plus, minus, std::sqrt(p.a * p.a - p.b * p.b), beta);
}

ComplexMatrix analytic_proper_u(double phi) {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = std::exp(kI * 0.25 * phi);
  u(1, 1) = std::exp(-kI * 0.25 * phi);
  return u;
}

ComplexMatrix analytic_sqrt_metric(const TwoLevelParams& p) {
  const double c = p.b / p.a;
  const double up = std::sqrt(1.0 + c), down = std::sqrt(1.0 - c);
  return ComplexMatrix(0.5 * (up + down) * ComplexMatrix::Identity(2, 2) - 0.5 * (up - down) * phi_sigma(p.phi));
}

}  // namespace ptgp::twolevel
