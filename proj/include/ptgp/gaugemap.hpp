#pragma once

#include <vector>

#include "ptgp/numkernel.hpp"
#include "ptgp/path.hpp"
#include "ptgp/ptsystem.hpp"
#include "ptgp/tolerances.hpp"

namespace ptgp {

// H = S H0 S^-1 with W = (S^-1)^dagger S^-1.
struct SimilarityMap {
  ParameterPoint point;
  ComplexMatrix s;
  ComplexMatrix s_inv;
};

// S^-1 = sqrt(W), principal branch.
SimilarityMap sqrt_metric_map(const PTSystem& sys, const ParameterPoint& p,
                              const Tolerances& tol = {});

// H0 = S^-1 H S.
ComplexMatrix hermitian_partner(const PTSystem& sys, const SimilarityMap& map);

struct ProperMapPath {
  LoopPath path;
  std::vector<ComplexMatrix> u;
  std::vector<ComplexMatrix> s_proper;
  std::vector<ComplexMatrix> s_proper_inv;
  double residual = 0.0;
};

// Integrates u' = (A - A^dagger) u / 2, A = (dS^-1/dt) S, u(0) = 1 with RK4 on
// the path grid and returns S u at every sample.
ProperMapPath proper_map_along(const PTSystem& sys, const LoopPath& path,
                               const Tolerances& tol = {});

// max over interior samples of ||A - A^dagger||_F / ||S||_F^2 with A built from
// central differences of S^-1.
double properness_residual(const LoopPath& path, const std::vector<ComplexMatrix>& s);
double properness_residual(const ProperMapPath& pmap);

}  // namespace ptgp
