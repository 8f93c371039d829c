#include "ptgp/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ptgp/errors.hpp"

namespace ptgp::num {

namespace {

bool eigen_order(const EigenPair& x, const EigenPair& y) {
  if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
  return x.value.imag() < y.value.imag();
}

std::vector<EigenPair> eig_2x2(const ComplexMatrix& m) {
  const Complex p = m(0, 0), q = m(0, 1), r = m(1, 0), s = m(1, 1);
  const Complex mean = 0.5 * (p + s);
  const Complex half_diff = 0.5 * (p - s);
  const Complex disc = std::sqrt(half_diff * half_diff + q * r);
  const double scale = std::max(m.norm(), 1e-300);

  std::vector<EigenPair> out;
  out.reserve(2);
  for (const Complex lambda : {mean - disc, mean + disc}) {
    ComplexVector a(2), b(2);
    a << q, lambda - p;
    b << lambda - s, r;
    ComplexVector v = a.norm() >= b.norm() ? a : b;
    if (v.norm() <= 1e-14 * scale) {
      // Scalar matrix: every vector is an eigenvector.
      v = ComplexVector::Zero(2);
      v(out.empty() ? 0 : 1) = 1.0;
    }
    out.push_back({lambda, v.normalized()});
  }
  return out;
}

}  // namespace

void require_square(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " must be square with dim >= 1 (got " << m.rows() << "x" << m.cols() << ")";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!m.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

void require_finite(const ComplexVector& v, std::string_view what) {
  if (!v.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

std::vector<EigenPair> eig_general(const ComplexMatrix& m, double residual_tol) {
  require_square(m, "eig_general input");
  require_finite(m, "eig_general input");
  const Eigen::Index n = m.rows();

  std::vector<EigenPair> pairs;
  if (n == 1) {
    pairs.push_back({m(0, 0), ComplexVector::Ones(1)});
    return pairs;
  }
  if (n == 2) {
    pairs = eig_2x2(m);
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, true);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::NonConvergence, "complex Schur reduction did not converge");
    }
    pairs.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      pairs.push_back({solver.eigenvalues()(k), solver.eigenvectors().col(k).normalized()});
    }
  }

  const double norm = m.norm();
  for (const auto& pair : pairs) {
    const double residual = (m * pair.vector - pair.value * pair.vector).norm();
    if (!(residual <= residual_tol * std::max(norm, 1e-300))) {
      std::ostringstream os;
      os << "eigenpair residual " << residual << " exceeds " << residual_tol << " * ||m|| = "
         << residual_tol * norm;
      throw Error(ErrorCode::NonConvergence, os.str());
    }
  }
  std::sort(pairs.begin(), pairs.end(), eigen_order);
  return pairs;
}

double hermiticity_residual(const ComplexMatrix& m) {
  return (m - m.adjoint()).norm();
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  return hermiticity_residual(m) <= rel_tol * m.norm();
}

ComplexMatrix hermitian_function(const ComplexMatrix& m, const std::function<double(double)>& f,
                                 double hermitian_tol) {
  require_square(m, "hermitian_function input");
  require_finite(m, "hermitian_function input");
  if (!is_hermitian(m, hermitian_tol)) {
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "Hermitian eigen-decomposition did not converge");
  }
  Eigen::VectorXd mapped = solver.eigenvalues().unaryExpr([&](double x) { return f(x); });
  const ComplexMatrix& v = solver.eigenvectors();
  return v * mapped.cast<Complex>().asDiagonal() * v.adjoint();
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m, double hermitian_tol, double pd_tol) {
  require_square(m, "hermitian_sqrt input");
  require_finite(m, "hermitian_sqrt input");
  if (!is_hermitian(m, hermitian_tol)) {
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "Hermitian eigen-decomposition did not converge");
  }
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest <= pd_tol * m.norm()) {
    std::ostringstream os;
    os << "smallest eigenvalue " << smallest << " is not positive";
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexMatrix root =
      v * solver.eigenvalues().cwiseSqrt().cast<Complex>().asDiagonal() * v.adjoint();
  return 0.5 * (root + root.adjoint());
}

double condition_number(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

ComplexMatrix inverse(const ComplexMatrix& m, double max_condition) {
  require_square(m, "inverse input");
  require_finite(m, "inverse input");
  const double cond = condition_number(m);
  if (!(cond < max_condition)) {
    std::ostringstream os;
    os << "condition estimate " << cond << " exceeds " << max_condition;
    throw Error(ErrorCode::SingularMatrix, os.str());
  }
  return m.fullPivLu().inverse();
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matmul shapes");
  return a * b;
}

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matvec shapes");
  return m * v;
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "inner shapes");
  return u.dot(v);
}

ComplexMatrix polar_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace ptgp::num
