#pragma once

#include <complex>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ptgp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

struct EigenPair {
  Complex value;
  ComplexVector vector;  // unit 2-norm
};

namespace num {

// Eigen-decomposition of a general square complex matrix. Pairs are sorted by
// (real part, imaginary part). N = 2 uses the closed-form quadratic; larger
// matrices go through a complex Schur (QR) reduction.
std::vector<EigenPair> eig_general(const ComplexMatrix& m, double residual_tol = 1e-10);

// Principal square root of a Hermitian positive-definite matrix.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& m, double hermitian_tol = 1e-12,
                             double pd_tol = 1e-12);

// f applied to the eigenvalues of a Hermitian matrix: V f(Λ) V†.
ComplexMatrix hermitian_function(const ComplexMatrix& m, const std::function<double(double)>& f,
                                 double hermitian_tol = 1e-12);

ComplexMatrix inverse(const ComplexMatrix& m, double max_condition = 1e12);
ComplexMatrix adjoint(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
double condition_number(const ComplexMatrix& m);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v);
// Conjugate-linear in u.
Complex inner(const ComplexVector& u, const ComplexVector& v);

// Closest unitary in Frobenius norm (polar factor).
ComplexMatrix polar_unitary(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double rel_tol);
double hermiticity_residual(const ComplexMatrix& m);

void require_finite(const ComplexMatrix& m, std::string_view what);
void require_finite(const ComplexVector& v, std::string_view what);
void require_square(const ComplexMatrix& m, std::string_view what);

}  // namespace num
}  // namespace ptgp
