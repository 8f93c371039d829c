#pragma once

#include <utility>

#include "ptgp/numkernel.hpp"
#include "ptgp/ptsystem.hpp"

namespace ptgp::twolevel {

// H = epsilon + (a n^r + i b n^theta) . sigma on the (theta, phi) sphere.
struct TwoLevelParams {
  double a = 3.0;
  double b = 2.23606797749979;
  double epsilon = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

ComplexMatrix hamiltonian(const TwoLevelParams& p);
// W = 1 - (b/a) n^phi . sigma
ComplexMatrix metric(const TwoLevelParams& p);

// Coordinates are (theta, phi).
PTSystem make_system(double a, double b, double epsilon);

// (Psi_+, Psi_-), each with <Psi|W|Psi> = 1.
std::pair<ComplexVector, ComplexVector> analytic_eigenvectors(const TwoLevelParams& p);

// Reference closed forms. pole_enclosed selects the branch with the extra
// (1 +- ratio) pi term. Solid angle of the latitude circle is 2pi(1 - cos theta).
std::pair<double, double> analytic_theta2(const TwoLevelParams& p, bool pole_enclosed);
// Reference pair for a = 3, b = sqrt 5 only (UnsupportedParameters otherwise).
// Real parts reduced to [0, 2pi).
std::pair<Complex, Complex> analytic_theta1(const TwoLevelParams& p);
// arg of the thermally weighted sum of the reference phases, in [0, 2pi).
double analytic_igp(const TwoLevelParams& p, double beta);

// Latitude-loop phases valid for any a > |b|:
// theta1_pm = 2 pi (pm z / 2 - 1/2), z = (a cos theta - i b sin theta) / sqrt(a^2 - b^2).
// Real parts reduced to [0, 2pi).
std::pair<Complex, Complex> latitude_theta1(const TwoLevelParams& p);
double latitude_igp(const TwoLevelParams& p, double beta);

// u(phi) = diag(e^{i phi/4}, e^{-i phi/4}) for a = 3, b = sqrt 5.
ComplexMatrix analytic_proper_u(double phi);

// sqrt(W) written out.
ComplexMatrix analytic_sqrt_metric(const TwoLevelParams& p);

}  // namespace ptgp::twolevel
