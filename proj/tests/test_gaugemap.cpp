#include "common.hpp"
#include "doctest.h"
#include "ptgp/errors.hpp"
#include "ptgp/gaugemap.hpp"
#include "ptgp/registry.hpp"
#include "ptgp/twolevel.hpp"

using namespace ptgp;
using testing::kSqrt5;
using testing::max_abs;

namespace {

// S for a = 3, b = sqrt 5 on the latitude phi.
ComplexMatrix expected_s(double phi) {
  ComplexMatrix s(2, 2);
  const double d = 0.5 * std::sqrt(7.5);
  const double o = 0.5 * std::sqrt(1.5);
  s << d, -kI * o * std::exp(-kI * phi), kI * o * std::exp(kI * phi), d;
  return s;
}

ComplexMatrix expected_s_proper(double phi) {
  ComplexMatrix s(2, 2);
  const double d = 0.5 * std::sqrt(7.5);
  const double o = 0.5 * std::sqrt(1.5);
  s << d * std::exp(kI * phi / 4.0), -kI * o * std::exp(-5.0 * kI * phi / 4.0),
      kI * o * std::exp(5.0 * kI * phi / 4.0), d * std::exp(-kI * phi / 4.0);
  return s;
}

}  // namespace

TEST_CASE("sqrt_metric_map with identity metric") {
  auto sys = make_model("hermitian-spin-half", {{"a", 2.0}});
  auto m = sqrt_metric_map(sys, {{0.3, 0.1}});
  CHECK(max_abs(m.s - ComplexMatrix::Identity(2, 2)) < 1e-15);
  CHECK(max_abs(m.s_inv - ComplexMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("sqrt_metric_map for a = 3, b = sqrt 5") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  for (double th : {0.2, 1.0, 2.6}) {
    for (double ph : {0.0, 0.8, 4.1}) {
      auto m = sqrt_metric_map(sys, {{th, ph}});
      CHECK(max_abs(m.s - expected_s(ph)) < 1e-12);
      CHECK(max_abs(m.s * m.s_inv - ComplexMatrix::Identity(2, 2)) < 1e-12);
      auto w = sys.metric({{th, ph}});
      CHECK((m.s_inv.adjoint() * m.s_inv - w).norm() <= 1e-10 * w.norm());

      auto h0 = hermitian_partner(sys, m);
      ComplexMatrix expected(2, 2);
      expected << 2.0 * std::cos(th), 2.0 * std::exp(-kI * ph) * std::sin(th),
          2.0 * std::exp(kI * ph) * std::sin(th), -2.0 * std::cos(th);
      CHECK(max_abs(h0 - expected) < 1e-12);
    }
  }
}

TEST_CASE("proper map on a constant path is the identity") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto pm = proper_map_along(sys, LoopPath::constant({{1.0, 0.5}}, 50, 1.0));
  for (const auto& u : pm.u) CHECK(max_abs(u - ComplexMatrix::Identity(2, 2)) < 1e-14);
  CHECK(properness_residual(pm) < 1e-12);
}

TEST_CASE("proper map on a latitude circle") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  for (double th : {0.4, 1.5707963267948966, 2.7}) {
    auto path = LoopPath::latitude(th, 4000);
    auto pm = proper_map_along(sys, path);
    CHECK(pm.u.front() == ComplexMatrix::Identity(2, 2));
    double worst_u = 0.0;
    double worst_s = 0.0;
    double worst_unitary = 0.0;
    for (std::size_t k = 0; k < pm.u.size(); ++k) {
      const double phi = path.points()[k][1];
      worst_u = std::max(worst_u, max_abs(pm.u[k] - twolevel::analytic_proper_u(phi)));
      worst_s = std::max(worst_s, max_abs(pm.s_proper[k] - expected_s_proper(phi)));
      worst_unitary = std::max(
          worst_unitary, max_abs(pm.u[k].adjoint() * pm.u[k] - ComplexMatrix::Identity(2, 2)));
    }
    CHECK(worst_u < 1e-6);
    CHECK(worst_s < 1e-6);
    CHECK(worst_unitary < 1e-8);
    CHECK(properness_residual(pm) <= 1e-4);

    // H0 stays Hermitian with the proper map and picks up the e^{-3i phi/2} twist.
    for (std::size_t k = 0; k < pm.u.size(); k += 397) {
      const double phi = path.points()[k][1];
      auto h = sys.hamiltonian(path.points()[k]);
      ComplexMatrix h0 = pm.s_proper_inv[k] * h * pm.s_proper[k];
      CHECK(num::hermiticity_residual(h0) <= 1e-8 * h.norm());
      CHECK(std::abs(h0(0, 1) - 2.0 * std::exp(-1.5 * kI * phi) * std::sin(th)) < 1e-6);
    }
  }
}

TEST_CASE("raw sqrt-metric map is not proper") {
  auto sys = twolevel::make_system(3.0, kSqrt5, 0.0);
  auto path = LoopPath::latitude(1.5707963267948966, 4000);
  std::vector<ComplexMatrix> raw;
  for (const auto& p : path.points()) raw.push_back(sqrt_metric_map(sys, p).s);
  const double r = properness_residual(path, raw);
  CHECK(r > 1e-2);
  CHECK(r == doctest::Approx(0.15713484).epsilon(1e-4));
}

TEST_CASE("coarse grids are refused") {
  auto sys = twolevel::make_system(3.0, 2.9, 0.0);
  try {
    proper_map_along(sys, LoopPath::latitude(1.0, 6));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepTooCoarse);
  }
}
