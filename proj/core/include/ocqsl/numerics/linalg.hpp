#pragma once

#include <vector>

#include "ocqsl/numerics/complex_matrix.hpp"
#include "ocqsl/numerics/tolerances.hpp"

namespace ocqsl {

/// Determinant as log-modulus plus unit phase, so values far below the
/// double range (survival amplitudes of large Slater determinants) survive.
struct LogDeterminant {
  /// ln|det|; -inf for an exactly singular matrix.
  double log_abs = 0.0;
  /// det / |det|; 0 for an exactly singular matrix.
  Complex phase = 1.0;

  /// det itself; underflows to 0 below exp(-745).
  Complex value() const;
};

/// LU factorization with partial pivoting on max modulus.
/// Throws DomainError for non-square input and NonFiniteError for NaN/Inf.
LogDeterminant log_determinant(const ComplexMatrix& m);

/// det(m) via log_determinant; exact for 1x1.
Complex determinant(const ComplexMatrix& m);

struct EigenDecomposition {
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Column j is the normalized eigenvector of eigenvalues[j].
  ComplexMatrix eigenvectors;
};

/// Full spectrum of a Hermitian matrix.
///
/// The input is checked against `tol.hermiticity`, symmetrized as
/// (m + m^dagger)/2 and diagonalized. Real input uses a real solver and
/// real tridiagonal input skips the Householder reduction.
EigenDecomposition eigh(const ComplexMatrix& m, const Tolerances& tol = {});

/// Max over pairs of ||m v - E v|| / ||m||_F.
double eigen_residual(const ComplexMatrix& m, const EigenDecomposition& eig);

/// Max entrywise |V^dagger V - 1|.
double orthonormality_defect(const ComplexMatrix& vectors);

}  // namespace ocqsl
