#include "common.hpp"
#include "doctest.h"
#include "ptgp/errors.hpp"
#include "ptgp/twolevel.hpp"

using namespace ptgp;
using namespace ptgp::twolevel;
using testing::kSqrt5;
using testing::max_abs;

TEST_CASE("Hamiltonian special cases") {
  TwoLevelParams p{3.0, kSqrt5, 0.0, 1.2, 0.4};
  auto pairs = num::eig_general(hamiltonian(p));
  CHECK(std::abs(pairs[0].value + 2.0) < 1e-12);
  CHECK(std::abs(pairs[1].value - 2.0) < 1e-12);

  auto h = hamiltonian({2.0, 0.0, 0.5, 0.0, 1.0});
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.5;
  d(1, 1) = -1.5;
  CHECK(max_abs(h - d) < 1e-15);

  auto x = hamiltonian({1.0, 0.0, 0.3, 1.5707963267948966, 0.0});
  ComplexMatrix sx(2, 2);
  sx << 0.3, 1.0, 1.0, 0.3;
  CHECK(max_abs(x - sx) < 1e-15);
}

TEST_CASE("metric") {
  CHECK(max_abs(metric({2.0, 0.0, 0.0, 1.0, 2.0}) - ComplexMatrix::Identity(2, 2)) == 0.0);

  ComplexMatrix sy(2, 2);
  sy << 0.0, -kI, kI, 0.0;
  ComplexMatrix expected = ComplexMatrix::Identity(2, 2) - (kSqrt5 / 3.0) * sy;
  CHECK(max_abs(metric({3.0, kSqrt5, 0.0, 0.9, 0.0}) - expected) < 1e-15);

  for (double th : {0.1, 1.7, 3.0}) {
    for (double ph : {0.0, 2.0, 6.0}) {
      TwoLevelParams p{3.0, kSqrt5, 0.7, th, ph};
      auto h = hamiltonian(p);
      auto w = metric(p);
      CHECK((w * h - h.adjoint() * w).norm() <= 1e-14 * h.norm());
      CHECK(num::hermiticity_residual(w) == 0.0);
    }
  }
}

TEST_CASE("analytic eigenvectors") {
  auto [up, down] = analytic_eigenvectors({1.0, 0.0, 0.0, 0.0, 0.0});
  CHECK(std::abs(up(1)) < 1e-15);
  CHECK(std::abs(std::abs(up(0)) - 1.0) < 1e-15);

  for (double th : {0.3, 1.4, 2.9}) {
    TwoLevelParams p{3.0, kSqrt5, 0.0, th, 1.3};
    auto [plus, minus] = analytic_eigenvectors(p);
    auto w = metric(p);
    auto h = hamiltonian(p);
    CHECK(std::abs(plus.dot(w * minus)) < 1e-12);
    CHECK(std::abs(plus.dot(w * plus) - 1.0) < 1e-12);
    CHECK(std::abs(minus.dot(w * minus) - 1.0) < 1e-12);
    CHECK((h * plus - 2.0 * plus).norm() < 1e-12);
    CHECK((h * minus + 2.0 * minus).norm() < 1e-12);
  }
}

TEST_CASE("reference theta2 closed forms") {
  auto [p, m] = analytic_theta2({3.0, kSqrt5, 0.0, 1.5707963267948966, 0.0}, true);
  CHECK(angle_distance(p, -9.0 * kPi / 8.0) < 1e-14);
  CHECK(angle_distance(m, 9.0 * kPi / 8.0) < 1e-14);

  const double th = 0.8;
  const double omega = kTwoPi * (1.0 - std::cos(th));
  auto [hp, hm] = analytic_theta2({1.0, 0.0, 0.0, th, 0.0}, true);
  CHECK(hp == doctest::Approx(-0.5 * omega + kTwoPi));
  CHECK(hm == doctest::Approx(0.5 * omega));

  for (double t : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    auto [a2, b2] = analytic_theta2({3.0, kSqrt5, 0.0, t, 0.0}, true);
    auto [a1, b1] = analytic_theta1({3.0, kSqrt5, 0.0, t, 0.0});
    CHECK(angle_distance(a2, a1.real()) < 1e-12);
    CHECK(angle_distance(b2, b1.real()) < 1e-12);
  }
}

TEST_CASE("reference theta1 closed forms") {
  auto [p, m] = analytic_theta1({3.0, kSqrt5, 0.0, 1.5707963267948966, 0.0});
  CHECK(angle_distance(p.real(), -9.0 * kPi / 8.0) < 1e-14);
  CHECK(p.imag() == doctest::Approx(-kSqrt5 * kPi / 2.0));
  CHECK(angle_distance(m.real(), 9.0 * kPi / 8.0) < 1e-14);
  CHECK(m.imag() == doctest::Approx(kSqrt5 * kPi / 2.0));

  auto [p0, m0] = analytic_theta1({3.0, kSqrt5, 0.0, 0.0, 0.0});
  CHECK(p0.real() == doctest::Approx(3.0 * kPi / 8.0));
  CHECK(p0.imag() == 0.0);
  (void)m0;

  try {
    analytic_theta1({3.0, 2.0, 0.0, 1.0, 0.0});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedParameters);
  }
}

TEST_CASE("reference IGP closed form") {
  CHECK(analytic_igp({3.0, kSqrt5, 0.0, 1.5707963267948966, 0.0}, 50.0) ==
        doctest::Approx(9.0 * kPi / 8.0));
  CHECK(analytic_igp({3.0, kSqrt5, 0.0, 0.0, 0.0}, 50.0) == doctest::Approx(kTwoPi - 3.0 * kPi / 8.0));
  // The offset cancels.
  CHECK(analytic_igp({3.0, kSqrt5, 1.3, 0.7, 0.0}, 0.9) ==
        doctest::Approx(analytic_igp({3.0, kSqrt5, 0.0, 0.7, 0.0}, 0.9)));

  const double theta_a = std::acos(5.0 / 12.0);
  const double before = analytic_igp({3.0, kSqrt5, 0.0, theta_a, 0.0}, 1.55);
  const double after = analytic_igp({3.0, kSqrt5, 0.0, theta_a, 0.0}, 1.65);
  CHECK(angle_distance(before, after) > 0.9 * kPi);
}

TEST_CASE("exact latitude closed forms") {
  auto [p, m] = latitude_theta1({3.0, kSqrt5, 0.0, 1.5707963267948966, 0.0});
  CHECK(p.real() == doctest::Approx(kPi));
  CHECK(m.real() == doctest::Approx(kPi));
  CHECK(p.imag() == doctest::Approx(-kSqrt5 * kPi / 2.0));

  // b = 0 is the ordinary Berry phase.
  const double th = 1.1;
  auto [hp, hm] = latitude_theta1({2.0, 0.0, 0.0, th, 0.0});
  CHECK(angle_distance(hp.real(), -kPi * (1.0 - std::cos(th))) < 1e-14);
  CHECK(angle_distance(hm.real(), kPi * (1.0 - std::cos(th))) < 1e-14);

  // The equator value is pi for every beta.
  for (double beta : {0.001, 0.5, 3.0, 50.0}) {
    CHECK(latitude_igp({3.0, kSqrt5, 0.0, 1.5707963267948966, 0.0}, beta) ==
          doctest::Approx(kPi).epsilon(1e-12));
  }
}

TEST_CASE("analytic proper u") {
  CHECK(analytic_proper_u(0.0) == ComplexMatrix::Identity(2, 2));
  auto u = analytic_proper_u(kTwoPi);
  CHECK(std::abs(u(0, 0) - kI) < 1e-15);
  CHECK(std::abs(u(1, 1) + kI) < 1e-15);
  auto u4 = analytic_proper_u(2.0 * kTwoPi);
  CHECK(max_abs(u4 + ComplexMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("analytic sqrt metric squares to W") {
  for (double ph : {0.0, 1.0, 4.0}) {
    TwoLevelParams p{3.0, kSqrt5, 0.0, 0.5, ph};
    auto r = analytic_sqrt_metric(p);
    CHECK(max_abs(r * r - metric(p)) < 1e-14);
    CHECK(max_abs(r - num::hermitian_sqrt(metric(p))) < 1e-14);
  }
}
