#include "common.hpp"
#include "doctest.h"
#include "ptgp/phase_engine.hpp"
#include "ptgp/registry.hpp"
#include "ptgp/spin_model.hpp"
#include "ptgp/twolevel.hpp"

using namespace ptgp;
using testing::kSqrt5;
using testing::max_abs;

TEST_CASE("spin matrices obey the algebra") {
  for (double j : {0.5, 1.0, 1.5, 2.0}) {
    auto s = spin::spin_matrices(j);
    const int n = static_cast<int>(2 * j + 1);
    CHECK(s.z.rows() == n);
    ComplexMatrix comm = s.x * s.y - s.y * s.x;
    CHECK(max_abs(comm - kI * s.z) < 1e-13);
    ComplexMatrix casimir = s.x * s.x + s.y * s.y + s.z * s.z;
    CHECK(max_abs(casimir - j * (j + 1) * ComplexMatrix::Identity(n, n)) < 1e-13);
  }
}

TEST_CASE("spin one half is the two-level model") {
  auto sys = spin::make_system(3.0, kSqrt5, 0.2, 0.5);
  for (double th : {0.3, 2.0}) {
    ParameterPoint p{{th, 1.1}};
    twolevel::TwoLevelParams tp{3.0, kSqrt5, 0.2, th, 1.1};
    CHECK(max_abs(sys.hamiltonian(p) - twolevel::hamiltonian(tp)) < 1e-14);
    // Same metric up to the positive factor cosh(eta) = a / sqrt(a^2 - b^2).
    CHECK(max_abs(sys.metric(p) - 1.5 * twolevel::metric(tp)) < 1e-14);
  }
}

TEST_CASE("spin-j metric intertwines the Hamiltonian") {
  auto sys = spin::make_system(2.0, 1.2, -0.3, 1.5);
  for (double th : {0.4, 1.9}) {
    CHECK(check_pseudo_hermiticity(sys, {{th, 2.2}}) < 1e-12);
    auto spec = spectrum_at(sys, {{th, 2.2}});
    REQUIRE(spec.size() == 4);
    for (std::size_t n = 0; n < 4; ++n) {
      const double m = -1.5 + static_cast<double>(n);
      CHECK(spec.energies[n].real() == doctest::Approx(-0.3 + 2.0 * m * 1.6).epsilon(1e-12));
    }
  }
}

TEST_CASE("spin-1 Wilson loops match the closed form") {
  auto sys = make_model("spin-j-pt", {{"a", 3.0}, {"b", kSqrt5}, {"spin", 1.0}});
  auto path = LoopPath::latitude(1.2, 2000);
  for (std::size_t n = 0; n < 3; ++n) {
    const double m = -1.0 + static_cast<double>(n);
    auto t = theta1_loop(sys, path, n);
    CHECK(testing::phase_error(t.theta, spin::latitude_theta1(3.0, kSqrt5, 1.0, m, 1.2)) < 1e-7);
  }
}

TEST_CASE("spin one half closed form matches the two-level one") {
  twolevel::TwoLevelParams p{3.0, kSqrt5, 0.0, 0.9, 0.0};
  auto [plus, minus] = twolevel::latitude_theta1(p);
  CHECK(testing::phase_error(plus, spin::latitude_theta1(3.0, kSqrt5, 0.5, 0.5, 0.9)) < 1e-14);
  CHECK(testing::phase_error(minus, spin::latitude_theta1(3.0, kSqrt5, 0.5, -0.5, 0.9)) < 1e-14);
}
