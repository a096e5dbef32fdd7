#include "ocqsl/numerics/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ocqsl/error.hpp"

namespace ocqsl {

Complex LogDeterminant::value() const {
  if (std::isinf(log_abs) && log_abs < 0) return 0.0;
  return phase * std::exp(log_abs);
}

LogDeterminant log_determinant(const ComplexMatrix& m) {
  if (!m.is_square()) throw DomainError("determinant: matrix is not square");
  if (!m.all_finite()) throw NonFiniteError("determinant: non-finite entry");

  const std::size_t n = m.rows();
  ComplexMatrix lu = m;
  LogDeterminant det;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(lu(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) {
      return {-std::numeric_limits<double>::infinity(), 0.0};
    }
    if (pivot != col) {
      std::swap_ranges(lu.row(col).begin(), lu.row(col).end(), lu.row(pivot).begin());
      det.phase = -det.phase;
    }
    const Complex p = lu(col, col);
    det.log_abs += std::log(best);
    det.phase *= p / best;
    const auto pivot_row = lu.row(col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu(r, col) / p;
      if (f == 0.0) continue;
      auto target = lu.row(r);
      for (std::size_t c = col + 1; c < n; ++c) target[c] -= f * pivot_row[c];
    }
  }
  // Renormalize accumulated phase roundoff.
  if (n > 0) det.phase /= std::abs(det.phase);
  return det;
}

Complex determinant(const ComplexMatrix& m) {
  if (m.rows() == 1 && m.cols() == 1) {
    if (!m.all_finite()) throw NonFiniteError("determinant: non-finite entry");
    return m(0, 0);
  }
  return log_determinant(m).value();
}

namespace {

bool is_tridiagonal(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = c + 2; r < n; ++r) {
      if (a(r, c) != 0.0) return false;
    }
  }
  return true;
}

template <typename Solver>
void check_solver(const Solver& solver) {
  if (solver.info() != Eigen::Success) throw Error("eigh: eigensolver did not converge");
}

}  // namespace

EigenDecomposition eigh(const ComplexMatrix& m, const Tolerances& tol) {
  if (!m.is_square()) throw DomainError("eigh: matrix is not square");
  if (m.rows() == 0) throw DomainError("eigh: dimension 0");
  if (!m.all_finite()) throw NonFiniteError("eigh: non-finite entry");
  const double defect = m.hermiticity_defect();
  if (defect > tol.hermiticity) {
    throw DomainError("eigh: matrix not Hermitian (defect " + std::to_string(defect) + ")");
  }

  const auto n = static_cast<Eigen::Index>(m.rows());
  EigenDecomposition out;
  out.eigenvectors = ComplexMatrix(m.rows(), m.cols());
  out.eigenvalues.resize(m.rows());

  if (m.is_real()) {
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        a(r, c) = 0.5 * (m(r, c).real() + m(c, r).real());
      }
    }
    Eigen::MatrixXd vectors;
    Eigen::VectorXd values;
    if (is_tridiagonal(a)) {
      Eigen::VectorXd diag = a.diagonal();
      Eigen::VectorXd sub = n > 1 ? Eigen::VectorXd(a.diagonal(-1)) : Eigen::VectorXd();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
      solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      check_solver(solver);
      values = solver.eigenvalues();
      vectors = solver.eigenvectors();
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
      check_solver(solver);
      values = solver.eigenvalues();
      vectors = solver.eigenvectors();
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      out.eigenvalues[j] = values(j);
      for (Eigen::Index r = 0; r < n; ++r) out.eigenvectors(r, j) = vectors(r, j);
    }
  } else {
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    check_solver(solver);
    for (Eigen::Index j = 0; j < n; ++j) {
      out.eigenvalues[j] = solver.eigenvalues()(j);
      for (Eigen::Index r = 0; r < n; ++r) out.eigenvectors(r, j) = solver.eigenvectors()(r, j);
    }
  }
  return out;
}

double eigen_residual(const ComplexMatrix& m, const EigenDecomposition& eig) {
  const std::size_t n = m.rows();
  const double scale = std::max(m.norm(), std::numeric_limits<double>::min());
  double worst = 0.0;
  std::vector<Complex> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < n; ++r) v[r] = eig.eigenvectors(r, j);
    const auto hv = m.apply(v);
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += std::norm(hv[r] - eig.eigenvalues[j] * v[r]);
    worst = std::max(worst, std::sqrt(s) / scale);
  }
  return worst;
}

double orthonormality_defect(const ComplexMatrix& vectors) {
  const ComplexMatrix gram = vectors.adjoint() * vectors;
  double worst = 0.0;
  for (std::size_t r = 0; r < gram.rows(); ++r) {
    for (std::size_t c = 0; c < gram.cols(); ++c) {
      worst = std::max(worst, std::abs(gram(r, c) - (r == c ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace ocqsl
