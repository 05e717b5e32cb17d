#pragma once

#include <vector>

#include "cartan/matrix.hpp"

namespace cartan {

struct QrResult {
  Matrix q;  // rows × cols, orthonormal columns
  Matrix r;  // cols × cols, upper triangular, real nonnegative diagonal
};

/// Thin Householder QR of a matrix with rows >= cols. The diagonal of r is
/// made real and nonnegative by absorbing phases into q.
QrResult qr(const Matrix& a);

/// Orthonormal basis (as columns) of the complement of span(q), for q with
/// orthonormal columns. Returns an m × (m − k) matrix; m × 0 when k == m.
Matrix orthonormal_complement(const Matrix& q);

struct SvdResult {
  Matrix u;                   // rows × rows, unitary
  std::vector<double> sigma;  // min(rows, cols) values, descending, nonnegative
  Matrix v_dagger;            // cols × cols, unitary
};

/// Singular value decomposition by one-sided Jacobi. Throws NumericalError if
/// 30 sweeps do not reach relative column orthogonality.
SvdResult svd(const Matrix& a);

/// Reassemble u·diag(sigma)·v† (rectangular diag when rows != cols).
Matrix svd_reconstruct(const SvdResult& s);

/// Determinant via LU with partial pivoting.
Complex det(const Matrix& a);

/// Nearest unitary in Frobenius norm (the unitary polar factor).
Matrix polar_unitary(const Matrix& a);

}  // namespace cartan
