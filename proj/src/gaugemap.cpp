#include "ptgp/gaugemap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptgp/errors.hpp"

namespace ptgp {

namespace {

constexpr std::size_t kReunitarizeEvery = 100;

ComplexMatrix sqrt_metric(const PTSystem& sys, const ParameterPoint& p, const Tolerances& tol) {
  return num::hermitian_sqrt(sys.metric(p), tol.hermitian, tol.positive_definite);
}

// (A - A^dagger)/2 with A = (dS^-1/dt) S at time t.
ComplexMatrix generator(const PTSystem& sys, const LoopPath& path, double t, double delta,
                        const Tolerances& tol) {
  const ComplexMatrix plus = sqrt_metric(sys, path.at_extended(t + delta), tol);
  const ComplexMatrix minus = sqrt_metric(sys, path.at_extended(t - delta), tol);
  const ComplexMatrix s = num::inverse(sqrt_metric(sys, path.at_extended(t), tol), tol.max_condition);
  const ComplexMatrix a = (plus - minus) / (2.0 * delta) * s;
  return 0.5 * (a - a.adjoint());
}

}  // namespace

SimilarityMap sqrt_metric_map(const PTSystem& sys, const ParameterPoint& p, const Tolerances& tol) {
  SimilarityMap map;
  map.point = p;
  map.s_inv = sqrt_metric(sys, p, tol);
  map.s = num::inverse(map.s_inv, tol.max_condition);
  return map;
}

ComplexMatrix hermitian_partner(const PTSystem& sys, const SimilarityMap& map) {
  return map.s_inv * sys.hamiltonian(map.point) * map.s;
}

ProperMapPath proper_map_along(const PTSystem& sys, const LoopPath& path, const Tolerances& tol) {
  if (path.samples() < 2) throw Error(ErrorCode::InvalidArgument, "proper map needs >= 2 samples");
  const std::size_t n = path.samples();
  const int dim = sys.dim();

  std::vector<ComplexMatrix> s_inv(n), s(n);
  for (std::size_t k = 0; k < n; ++k) {
    s_inv[k] = sqrt_metric(sys, path.points()[k], tol);
    s[k] = num::inverse(s_inv[k], tol.max_condition);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double step = (s[k + 1] - s[k]).norm();
    if (step > tol.step_coarse * s[k].norm()) {
      std::ostringstream os;
      os << "path step " << k << " changes S by " << step / s[k].norm()
         << " of its norm; refine the grid";
      throw Error(ErrorCode::StepTooCoarse, os.str());
    }
  }

  ProperMapPath out{path, {}, {}, {}, 0.0};
  out.u.reserve(n);
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  out.u.push_back(u);
  const auto& ts = path.times();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double t = ts[k];
    const double h = ts[k + 1] - ts[k];
    const double delta = 1e-2 * h;
    const ComplexMatrix g0 = generator(sys, path, t, delta, tol);
    const ComplexMatrix gm = generator(sys, path, t + 0.5 * h, delta, tol);
    const ComplexMatrix g1 = generator(sys, path, t + h, delta, tol);
    const ComplexMatrix k1 = g0 * u;
    const ComplexMatrix k2 = gm * (u + 0.5 * h * k1);
    const ComplexMatrix k3 = gm * (u + 0.5 * h * k2);
    const ComplexMatrix k4 = g1 * (u + h * k3);
    u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((k + 1) % kReunitarizeEvery == 0) u = num::polar_unitary(u);
    out.u.push_back(u);
  }

  out.s_proper.reserve(n);
  out.s_proper_inv.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.s_proper.push_back(s[k] * out.u[k]);
    out.s_proper_inv.push_back(out.u[k].adjoint() * s_inv[k]);
  }
  out.residual = n >= 3 ? properness_residual(path, out.s_proper) : 0.0;
  if (out.residual > tol.proper_residual) {
    std::ostringstream os;
    os << "properness residual " << out.residual << " exceeds " << tol.proper_residual
       << "; refine the grid";
    throw Error(ErrorCode::StepTooCoarse, os.str());
  }
  return out;
}

double properness_residual(const LoopPath& path, const std::vector<ComplexMatrix>& s) {
  if (s.size() != path.samples()) {
    throw Error(ErrorCode::DimensionMismatch, "one S sample per path point is required");
  }
  if (s.size() < 3) throw Error(ErrorCode::InvalidArgument, "properness residual needs >= 3 samples");
  const auto& ts = path.times();
  std::vector<ComplexMatrix> s_inv;
  s_inv.reserve(s.size());
  for (const auto& m : s) s_inv.push_back(num::inverse(m));

  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double hm = ts[k] - ts[k - 1];
    const double hp = ts[k + 1] - ts[k];
    // Second-order three-point derivative on a possibly non-uniform grid.
    const ComplexMatrix d = (hm / (hp * (hm + hp))) * (s_inv[k + 1] - s_inv[k]) +
                            (hp / (hm * (hm + hp))) * (s_inv[k] - s_inv[k - 1]);
    const ComplexMatrix a = d * s[k];
    const double norm = s[k].norm();
    worst = std::max(worst, (a - a.adjoint()).norm() / (norm * norm));
  }
  return worst;
}

double properness_residual(const ProperMapPath& pmap) {
  return properness_residual(pmap.path, pmap.s_proper);
}

}  // namespace ptgp
