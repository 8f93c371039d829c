#include "ptgp/spin_model.hpp"

#include <cmath>

#include "ptgp/angles.hpp"
#include "ptgp/errors.hpp"

namespace ptgp::spin {

namespace {

int multiplicity(double j) {
  const double twice = 2.0 * j;
  if (!(j > 0.0) || std::abs(twice - std::round(twice)) > 1e-12 || twice > 200.0) {
    throw Error(ErrorCode::InvalidArgument, "spin must be a positive multiple of 1/2");
  }
  return static_cast<int>(std::lround(twice)) + 1;
}

}  // namespace

SpinMatrices spin_matrices(double j) {
  const int n = multiplicity(j);
  ComplexMatrix plus = ComplexMatrix::Zero(n, n);
  ComplexMatrix z = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double m = j - k;
    z(k, k) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> is row k-1.
    if (k > 0) plus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix minus = plus.adjoint();
  return {0.5 * (plus + minus), -0.5 * kI * (plus - minus), z};
}

PTSystem make_system(double a, double b, double epsilon, double j) {
  if (!(a > std::abs(b)) || !std::isfinite(a) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "spin-j model needs finite a > |b|");
  }
  const SpinMatrices s = spin_matrices(j);
  const int n = static_cast<int>(s.z.rows());
  const double eta = std::atanh(b / a);

  auto check = [](const ParameterPoint& p) {
    if (p.size() != 2) throw Error(ErrorCode::DimensionMismatch, "spin-j model takes (theta, phi)");
  };
  auto hamiltonian = [=](const ParameterPoint& p) {
    check(p);
    const double st = std::sin(p[0]), ct = std::cos(p[0]), sp = std::sin(p[1]), cp = std::cos(p[1]);
    const Complex vx = a * st * cp + kI * b * ct * cp;
    const Complex vy = a * st * sp + kI * b * ct * sp;
    const Complex vz = a * ct - kI * b * st;
    return ComplexMatrix(epsilon * ComplexMatrix::Identity(n, n) + 2.0 * (vx * s.x + vy * s.y + vz * s.z));
  };
  auto metric = [=](const ParameterPoint& p) {
    check(p);
    if (eta == 0.0) return ComplexMatrix(ComplexMatrix::Identity(n, n));
    const ComplexMatrix gen = -std::sin(p[1]) * s.x + std::cos(p[1]) * s.y;
    return num::hermitian_function(gen, [eta](double x) { return std::exp(-2.0 * eta * x); });
  };
  return PTSystem("spin-j-pt", n, hamiltonian, metric);
}

Complex latitude_theta1(double a, double b, double j, double m, double theta) {
  if (!(a > std::abs(b))) throw Error(ErrorCode::UnsupportedParameters, "closed form needs a > |b|");
  const Complex z = (a * std::cos(theta) - kI * b * std::sin(theta)) / std::sqrt(a * a - b * b);
  const Complex t = kTwoPi * (m * z - j);
  return {wrap_2pi(t.real()), t.imag()};
}

}  // namespace ptgp::spin
