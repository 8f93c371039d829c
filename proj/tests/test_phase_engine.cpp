#include <random>

#include "common.hpp"
#include "doctest.h"
#include "ptgp/errors.hpp"
#include "ptgp/phase_engine.hpp"
#include "ptgp/registry.hpp"
#include "ptgp/twolevel.hpp"

using namespace ptgp;
using testing::kSqrt5;
using testing::phase_error;

namespace {

const double kHalfPi = 1.5707963267948966;

Complex exact_plus(double theta) {
  return twolevel::latitude_theta1({3.0, kSqrt5, 0.0, theta, 0.0}).first;
}

Complex exact_minus(double theta) {
  return twolevel::latitude_theta1({3.0, kSqrt5, 0.0, theta, 0.0}).second;
}

}  // namespace

TEST_CASE("theta1 on latitude loops") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  for (double th : {0.3, kHalfPi, 2.5}) {
    auto path = LoopPath::latitude(th, 4000);
    auto plus = theta1_loop(sys, path, 1);
    auto minus = theta1_loop(sys, path, 0);
    CHECK(phase_error(plus.theta, exact_plus(th)) < 1e-8);
    CHECK(phase_error(minus.theta, exact_minus(th)) < 1e-8);
    CHECK(plus.theta.real() >= 0.0);
    CHECK(plus.theta.real() < kTwoPi);
    CHECK(std::abs(plus.theta.imag() + minus.theta.imag()) < 1e-6);
    CHECK(plus.theta.imag() == doctest::Approx(-0.5 * kPi * kSqrt5 * std::sin(th)).epsilon(1e-8));
    CHECK(plus.unwrapped_real() == doctest::Approx(plus.theta.real() + kTwoPi * plus.branch));
  }
}

TEST_CASE("theta1 at the equator is pi for both levels") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::latitude(kHalfPi, 4000);
  CHECK(theta1_loop(sys, path, 1).theta.real() == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(theta1_loop(sys, path, 0).theta.real() == doctest::Approx(kPi).epsilon(1e-9));
}

TEST_CASE("plain one-sided product is first-order in the imaginary part") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::latitude(kHalfPi, 4000);
  WilsonOptions plain{false, false};
  auto t = theta1_loop(sys, path, 1, {}, plain);
  const double err = std::abs(t.theta.imag() - exact_plus(kHalfPi).imag());
  CHECK(err > 1e-4);
  CHECK(err < 1e-2);
}

TEST_CASE("Hermitian limit reproduces the Berry phase") {
  auto sys = twolevel::make_system(1.0, 0.0, 0.0);
  for (double th : {0.5, 2.0}) {
    auto path = LoopPath::latitude(th, 2000);
    const double omega = kTwoPi * (1.0 - std::cos(th));
    auto plus = theta1_loop(sys, path, 1);
    auto minus = theta1_loop(sys, path, 0);
    CHECK(std::abs(plus.theta.imag()) < 1e-12);
    CHECK(angle_distance(plus.theta.real(), -0.5 * omega) < 1e-8);
    CHECK(angle_distance(minus.theta.real(), 0.5 * omega) < 1e-8);
  }
}

TEST_CASE("Wilson loop is invariant under random rescaling") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::latitude(1.2, 1000);
  auto specs = spectrum_along(sys, path);
  auto right = right_states(specs, 1);
  auto left = left_states(specs, 1);
  auto reference = wilson_phase(right, left, true);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mag(0.2, 5.0), ang(-kPi, kPi);
  for (std::size_t k = 0; k < right.size(); ++k) {
    Complex lambda = std::polar(mag(rng), ang(rng));
    right[k] *= lambda;
    left[k] /= std::conj(lambda);
  }
  auto shuffled = wilson_phase(right, left, true);
  CHECK(phase_error(reference.theta, shuffled.theta) < 1e-10);
}

TEST_CASE("zero overlap is reported") {
  std::vector<ComplexVector> states(3, ComplexVector::Zero(2));
  states[0](0) = 1.0;
  states[1](1) = 1.0;
  states[2](0) = 1.0;
  try {
    wilson_phase(states, states, true);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroOverlap);
  }
}

TEST_CASE("theta2, Berry form and theta1 agree") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  for (double th : {0.3, kHalfPi, 2.5}) {
    auto path = LoopPath::latitude(th, 4000);
    for (std::size_t n : {0u, 1u}) {
      auto t1 = theta1_loop(sys, path, n);
      auto t2 = theta2_loop(sys, path, n);
      const double tb = berry_w_formula(sys, path, n);
      CHECK(std::abs(t2.imaginary_residual) < 1e-8);
      CHECK(angle_distance(t2.theta, tb) < 1e-5);
      CHECK(angle_distance(t2.theta, t1.theta.real()) < 1e-5);
      CHECK(t2.theta >= 0.0);
      CHECK(t2.theta < kTwoPi);
    }
  }
}

TEST_CASE("Berry form in the Hermitian limit") {
  auto sys = twolevel::make_system(2.0, 0.0, 0.0);
  auto path = LoopPath::latitude(0.9, 600);
  const double omega = kTwoPi * (1.0 - std::cos(0.9));
  CHECK(angle_distance(berry_w_formula(sys, path, 1), -0.5 * omega) < 1e-7);
}

TEST_CASE("dynamic phases on latitude loops") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  for (double th : {0.7, kHalfPi}) {
    auto path = LoopPath::latitude(th, 4000);
    auto plus = dynamic_phases(sys, path, 1);
    auto minus = dynamic_phases(sys, path, 0);
    CHECK(plus.theta_dyn_0 == doctest::Approx(-2.0 * kTwoPi).epsilon(1e-12));
    CHECK(minus.theta_dyn_0 == doctest::Approx(2.0 * kTwoPi).epsilon(1e-12));
    const double expected = -0.5 * kPi * kSqrt5 * std::sin(th);
    CHECK(std::abs(plus.correction.real()) < 1e-6);
    CHECK(std::abs(plus.correction.imag() - expected) < 1e-4);
    CHECK(std::abs(minus.correction.imag() + expected) < 1e-4);
    CHECK(std::abs(plus.theta_dyn_tilde - (plus.theta_dyn_0 - plus.correction)) < 1e-12);
  }
}

TEST_CASE("dynamic phases on a constant loop") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.5);
  auto d = dynamic_phases(sys, LoopPath::constant({{0.4, 0.2}}, 10, 3.0), 1);
  CHECK(d.theta_dyn_0 == doctest::Approx(-2.5 * 3.0));
  CHECK(std::abs(d.correction) < 1e-14);

  auto z = dynamic_phases(sys, LoopPath::constant({{0.4, 0.2}}, 10, 1e-12), 0);
  CHECK(std::abs(z.theta_dyn_0) < 1e-11);
  CHECK(std::abs(z.theta_dyn_tilde) < 1e-11);
}

TEST_CASE("phase reports carry small consistency residuals") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto reports = phase_reports(sys, LoopPath::latitude(1.1, 4000));
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    CHECK(r.residual_eq24 <= 1e-5);
    CHECK(r.residual_eq25 <= 1e-4);
  }
}

TEST_CASE("evolution oracle on a constant Hamiltonian") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::constant({{0.6, 1.0}}, 200, 3.0);
  auto r = evolve_oracle(sys, path, 1, 1.0);
  CHECK(std::abs(r.phi_total - Complex(-2.0 * 3.0, 0.0)) < 1e-10);
  CHECK(r.error < 1e-10);
  CHECK(r.leaked < 1e-20);
}

TEST_CASE("evolution oracle approaches the adiabatic prediction") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::latitude(1.0, 1000);
  double last = 1e9;
  for (double ramp : {10.0, 50.0, 200.0}) {
    auto r = evolve_oracle(sys, path, 1, ramp);
    CHECK(r.error < last);
    last = r.error;
  }
  CHECK(last <= 1e-2);
}

TEST_CASE("evolution oracle flags fast driving") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::latitude(1.0, 1000).time_scaled(0.05);
  CHECK_THROWS_AS(evolve_oracle(sys, path, 1, 1.0), Error);
  OracleOptions soft;
  soft.throw_on_breakdown = false;
  auto r = evolve_oracle(sys, path, 1, 1.0, {}, soft);
  CHECK(r.breakdown);
  CHECK(r.leaked > 0.01);
}

TEST_CASE("evolution oracle in the Hermitian limit") {
  auto sys = twolevel::make_system(2.0, 0.0, 0.0);
  auto path = LoopPath::latitude(1.0, 1000);
  // The leading non-adiabatic shift falls off as 1 / ramp.
  auto slow = evolve_oracle(sys, path, 0, 400.0);
  CHECK(slow.error <= 1e-3);
  auto slower = evolve_oracle(sys, path, 0, 800.0);
  CHECK(slower.error / slow.error == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("parallel transport residual") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::latitude(kHalfPi, 4000);
  CHECK(parallel_transport_residual(sys, path) <= 1e-4);
  CHECK(parallel_transport_residual(sys, path, false) > 0.1);
  CHECK(parallel_transport_residual(sys, LoopPath::constant({{1.0, 2.0}}, 50, 1.0)) < 1e-12);
}

TEST_CASE("partial phases close onto the loop value") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::latitude(0.9, 800);
  auto specs = spectrum_along(sys, path);
  auto partial = partial_theta1(specs, 1);
  REQUIRE(partial.size() == specs.size());
  CHECK(partial[0] == Complex(0.0, 0.0));
  // Closure adds -i log nu with nu = <Phi(0)|Psi(T)>.
  const Complex nu = specs.front().left[1].dot(specs.back().right[1]);
  const Complex closed = partial.back() - kI * std::log(nu);
  CHECK(phase_error(closed, theta1_loop(sys, path, 1).theta) < 1e-10);
}

TEST_CASE("grid convergence is at least second order without extrapolation") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  WilsonOptions no_rich{true, false};
  const Complex exact = exact_plus(1.3);
  const double e1 = phase_error(theta1_loop(sys, LoopPath::latitude(1.3, 500), 1, {}, no_rich).theta, exact);
  const double e2 = phase_error(theta1_loop(sys, LoopPath::latitude(1.3, 1000), 1, {}, no_rich).theta, exact);
  CHECK(e2 <= e1 / 3.5);
}

TEST_CASE("phases do not depend on the time parameterisation") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::latitude(2.2, 2000);
  std::vector<double> warped;
  for (double t : path.times()) warped.push_back(t + 0.3 * std::sin(t));
  LoopPath other(path.points(), warped, true, path.periods());
  CHECK(phase_error(theta1_loop(sys, path, 1).theta, theta1_loop(sys, other, 1).theta) < 1e-10);
}
