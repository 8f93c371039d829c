#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ptgp/numkernel.hpp"
#include "ptgp/path.hpp"
#include "ptgp/tolerances.hpp"

namespace ptgp {

using MatrixFn = std::function<ComplexMatrix(const ParameterPoint&)>;

// A parameterised pseudo-Hermitian family: W(R) H(R) = H(R)^dagger W(R) with a
// Hermitian positive-definite metric W.
class PTSystem {
 public:
  PTSystem(std::string name, int dim, MatrixFn hamiltonian, MatrixFn metric);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  // Both evaluate the user callback and check shape and finiteness.
  ComplexMatrix hamiltonian(const ParameterPoint& p) const;
  ComplexMatrix metric(const ParameterPoint& p) const;

 private:
  std::string name_;
  int dim_;
  MatrixFn hamiltonian_;
  MatrixFn metric_;
};

// Right states |Psi_n>, left states |Phi_n> = W |Psi_n>, <Phi_m|Psi_n> = delta_mn.
struct BiorthogonalSpectrum {
  ParameterPoint point;
  std::vector<Complex> energies;
  std::vector<ComplexVector> right;
  std::vector<ComplexVector> left;

  std::size_t size() const { return energies.size(); }
};

struct SpectrumResiduals {
  double biorthonormality = 0.0;  // max |<Phi_m|Psi_n> - delta_mn|
  double completeness = 0.0;      // ||sum |Psi_n><Phi_n| - 1||_F
  double metric_pairing = 0.0;    // max ||Phi_n - W Psi_n|| / ||Phi_n||
};

// ||W H - H^dagger W||_F / ||H||_F. Throws MetricNotPositive when W is not
// Hermitian positive definite.
double check_pseudo_hermiticity(const PTSystem& sys, const ParameterPoint& p,
                                const Tolerances& tol = {});

BiorthogonalSpectrum spectrum_at(const PTSystem& sys, const ParameterPoint& p,
                                 const Tolerances& tol = {});

// Gauge-continuous spectra along a path: level labels follow maximal overlap
// and each pair is rephased so that <Phi_n(t_k)|Psi_n(t_{k+1})> is real positive.
std::vector<BiorthogonalSpectrum> spectrum_along(const PTSystem& sys, const LoopPath& path,
                                                 const Tolerances& tol = {});

SpectrumResiduals spectrum_residuals(const PTSystem& sys, const BiorthogonalSpectrum& spec);

}  // namespace ptgp
