#include "ptgp/ptsystem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>

#include "ptgp/errors.hpp"

namespace ptgp {

namespace {

void check_shape(const ComplexMatrix& m, int dim, const std::string& what) {
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << ", expected " << dim << "x" << dim;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  num::require_finite(m, what);
}

void require_positive_metric(const ComplexMatrix& w, const Tolerances& tol) {
  if (!num::is_hermitian(w, tol.hermitian)) {
    throw Error(ErrorCode::MetricNotPositive, "metric is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (w + w.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (!(lowest > tol.positive_definite * w.norm())) {
    std::ostringstream os;
    os << "metric is not positive definite (smallest eigenvalue " << lowest << ")";
    throw Error(ErrorCode::MetricNotPositive, os.str());
  }
}

Eigen::Index largest_component(const ComplexVector& v) {
  Eigen::Index best = 0;
  double mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > mag) {
      mag = a;
      best = i;
    }
  }
  return best;
}

}  // namespace

PTSystem::PTSystem(std::string name, int dim, MatrixFn hamiltonian, MatrixFn metric)
    : name_(std::move(name)), dim_(dim), hamiltonian_(std::move(hamiltonian)), metric_(std::move(metric)) {
  if (dim_ < 1) throw Error(ErrorCode::InvalidArgument, "system dimension must be >= 1");
  if (!hamiltonian_ || !metric_) throw Error(ErrorCode::InvalidArgument, "system needs H and W maps");
}

ComplexMatrix PTSystem::hamiltonian(const ParameterPoint& p) const {
  ComplexMatrix h = hamiltonian_(p);
  check_shape(h, dim_, "Hamiltonian");
  return h;
}

ComplexMatrix PTSystem::metric(const ParameterPoint& p) const {
  ComplexMatrix w = metric_(p);
  check_shape(w, dim_, "metric");
  return w;
}

double check_pseudo_hermiticity(const PTSystem& sys, const ParameterPoint& p, const Tolerances& tol) {
  const ComplexMatrix h = sys.hamiltonian(p);
  const ComplexMatrix w = sys.metric(p);
  require_positive_metric(w, tol);
  const double hn = h.norm();
  if (hn == 0.0) return 0.0;
  return (w * h - h.adjoint() * w).norm() / hn;
}

BiorthogonalSpectrum spectrum_at(const PTSystem& sys, const ParameterPoint& p, const Tolerances& tol) {
  const ComplexMatrix h = sys.hamiltonian(p);
  const double hn = std::max(h.norm(), 1e-300);
  auto pairs = num::eig_general(h, tol.eig_residual);

  for (const auto& e : pairs) {
    if (std::abs(e.value.imag()) > tol.broken_pt * hn) {
      std::ostringstream os;
      os << "broken PT phase: eigenvalue " << e.value.real() << (e.value.imag() < 0 ? " - " : " + ")
         << std::abs(e.value.imag()) << "i is not real";
      throw Error(ErrorCode::BrokenPTPhase, os.str());
    }
  }
  for (std::size_t m = 0; m < pairs.size(); ++m) {
    for (std::size_t n = m + 1; n < pairs.size(); ++n) {
      if (std::abs(pairs[m].value - pairs[n].value) <= tol.degeneracy * hn) {
        std::ostringstream os;
        os << "degenerate spectrum: levels " << m << " and " << n << " are "
           << std::abs(pairs[m].value - pairs[n].value) << " apart";
        throw Error(ErrorCode::DegenerateSpectrum, os.str());
      }
    }
  }

  const ComplexMatrix w = sys.metric(p);
  require_positive_metric(w, tol);

  BiorthogonalSpectrum spec;
  spec.point = p;
  for (auto& e : pairs) {
    ComplexVector psi = e.vector;
    const Eigen::Index j = largest_component(psi);
    psi *= std::conj(psi(j)) / std::abs(psi(j));
    psi(j) = Complex(psi(j).real(), 0.0);
    const double wnorm = std::sqrt(psi.dot(w * psi).real());
    psi /= wnorm;
    ComplexVector phi = w * psi;
    const Complex pair = phi.dot(psi);
    phi /= std::conj(pair);
    spec.energies.push_back(e.value);
    spec.right.push_back(std::move(psi));
    spec.left.push_back(std::move(phi));
  }
  return spec;
}

std::vector<BiorthogonalSpectrum> spectrum_along(const PTSystem& sys, const LoopPath& path,
                                                 const Tolerances& tol) {
  if (path.samples() < 3) throw Error(ErrorCode::InvalidArgument, "path needs at least 3 samples");
  std::vector<BiorthogonalSpectrum> out;
  out.reserve(path.samples());
  out.push_back(spectrum_at(sys, path.points().front(), tol));
  const std::size_t levels = out.front().size();

  for (std::size_t k = 1; k < path.samples(); ++k) {
    BiorthogonalSpectrum next = spectrum_at(sys, path.points()[k], tol);
    const BiorthogonalSpectrum& prev = out.back();

    std::vector<std::size_t> assign(levels);
    std::vector<bool> taken(levels, false);
    for (std::size_t m = 0; m < levels; ++m) {
      std::size_t best = levels;
      const double ref = prev.right[m].norm();
      for (std::size_t n = 0; n < levels; ++n) {
        const double r = std::abs(prev.left[m].dot(next.right[n])) * ref / next.right[n].norm();
        if (r > tol.level_match) {
          if (best != levels || taken[n]) {
            std::ostringstream os;
            os << "ambiguous level matching between samples " << k - 1 << " and " << k;
            throw Error(ErrorCode::LevelOrderSwap, os.str());
          }
          best = n;
        }
      }
      if (best == levels) {
        std::ostringstream os;
        os << "level " << m << " lost between samples " << k - 1 << " and " << k;
        throw Error(ErrorCode::LevelOrderSwap, os.str());
      }
      assign[m] = best;
      taken[best] = true;
    }

    BiorthogonalSpectrum matched;
    matched.point = next.point;
    for (std::size_t m = 0; m < levels; ++m) {
      const std::size_t n = assign[m];
      ComplexVector psi = next.right[n];
      ComplexVector phi = next.left[n];
      const Complex c = prev.left[m].dot(psi);
      const Complex lambda = std::conj(c) / std::abs(c);
      psi *= lambda;
      phi *= lambda;
      matched.energies.push_back(next.energies[n]);
      matched.right.push_back(std::move(psi));
      matched.left.push_back(std::move(phi));
    }
    out.push_back(std::move(matched));
  }
  return out;
}

SpectrumResiduals spectrum_residuals(const PTSystem& sys, const BiorthogonalSpectrum& spec) {
  SpectrumResiduals r;
  const std::size_t n = spec.size();
  const ComplexMatrix w = sys.metric(spec.point);
  ComplexMatrix sum = ComplexMatrix::Zero(sys.dim(), sys.dim());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Complex o = spec.left[a].dot(spec.right[b]);
      r.biorthonormality = std::max(r.biorthonormality, std::abs(o - (a == b ? 1.0 : 0.0)));
    }
    sum += spec.right[a] * spec.left[a].adjoint();
    r.metric_pairing =
        std::max(r.metric_pairing, (spec.left[a] - w * spec.right[a]).norm() / spec.left[a].norm());
  }
  r.completeness = (sum - ComplexMatrix::Identity(sys.dim(), sys.dim())).norm();
  return r;
}

}  // namespace ptgp
