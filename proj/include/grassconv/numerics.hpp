#pragma once

#include "grassconv/types.hpp"

namespace grassconv {

struct SvdResult {
  Matrix u;      // rows x rows, orthogonal
  Vector sigma;  // min(rows, cols) values, nonnegative, descending
  Matrix v;      // cols x cols, orthogonal

  Matrix reconstruct() const;
};

/// Full SVD a = u * diag(sigma) * v^T. Rejects non-finite input.
SvdResult svd(const Matrix& a);

struct SymmetricSpectrum {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // columns, orthonormal

  Matrix reconstruct() const;
};

/// Symmetric eigendecomposition. The input is symmetrized as (a + a^T)/2
/// before decomposing to absorb floating-point asymmetry.
SymmetricSpectrum sym_eig(const Matrix& a);

/// Inverse square root of an SPD matrix via its spectrum.
Matrix sym_inverse_sqrt(const Matrix& g);

/// Eigenvalues of g^{-1/2} a g^{-1/2}, ascending. a is PSD with respect to g
/// iff the smallest of these is >= -tol. Throws if g is not positive definite,
/// naming the offending eigenvalue.
Vector gen_sym_eig(const Matrix& a, const Matrix& g);

/// Directional derivative of log det along a matrix curve: tr(da * a^{-1}).
/// Throws if a is singular.
double logdet_derivative(const Matrix& a, const Matrix& da);

/// Second directional derivative of log det:
/// tr(dda * a^{-1}) - tr(da_x * a^{-1} * da_y * a^{-1}).
double logdet_second_derivative(const Matrix& a, const Matrix& da_x,
                                const Matrix& da_y, const Matrix& dda);

}  // namespace grassconv
