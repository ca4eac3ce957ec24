#pragma once

#include "grassconv/types.hpp"

namespace grassconv {

// A point of the coordinate chart: the plane spanned by the rows of
// [I_n | Z]. Every finite Z is a valid chart point.
struct ChartPoint {
  Matrix z;  // n x m

  explicit ChartPoint(Matrix coords);

  Index n() const { return z.rows(); }
  Index m() const { return z.cols(); }
  Index p() const { return std::min(z.rows(), z.cols()); }
};

// The p = min(n, m) principal angles between the chart point and the
// reference plane, with lambda = tan(theta) sorted descending.
struct JordanAngles {
  Vector theta;   // in [0, pi/2)
  Vector lambda;  // tan(theta), descending

  Index p() const { return lambda.size(); }

  /// lambda extended by zero beyond the first p slots. Row indices above m
  /// (or column indices above n) carry no angle.
  double lam(Index k) const { return k < lambda.size() ? lambda(k) : 0.0; }
};

JordanAngles angles_from_lambda(Vector lambda);
JordanAngles jordan_angles(const ChartPoint& point);

/// Sum of any two distinct angles stays strictly below pi/2. Vacuously true
/// for p = 1.
bool in_bjx(const JordanAngles& angles);

/// The canonical inner product tr((I+ZZ^T)^{-1} X (I+Z^TZ)^{-1} Y^T) of two
/// tangent coordinates at a chart point.
double metric_inner(const ChartPoint& point, const Matrix& x, const Matrix& y);

struct MetricGram {
  Matrix g;  // (nm) x (nm), SPD, fixed flattening
};

/// Gram matrix of metric_inner over the coordinate basis E_{i,alpha}.
MetricGram metric_gram(const ChartPoint& point);

/// Closed-form Gram matrix at a diagonal point: diagonal with entries
/// (1+lam_i^2)^{-1} (1+lam_alpha^2)^{-1}.
Matrix metric_gram_diag(const JordanAngles& angles, Index n, Index m);

// Connection coefficients at a diagonal chart point. Only the contraction
// against a gradient is ever needed at full size, so coefficients are kept
// in closed form instead of as a rank-6 array.
struct ChristoffelDiag {
  JordanAngles angles;
  Index n = 0;
  Index m = 0;

  double coeff(Index i, Index a, Index j, Index b, Index k, Index c) const;

  /// C[(i,a),(j,b)] = sum_{k,c} Gamma_{ia,jb}^{kc} grad(k,c).
  Matrix contract(const Matrix& grad) const;
};

ChristoffelDiag christoffel_diag(const JordanAngles& angles, Index n, Index m);

// Orthogonal change of frame bringing a chart point to diagonal form:
// u * Z * v = z0 with z0 = diag(lambda), lambda descending.
struct DiagonalNormalization {
  Matrix u;  // n x n orthogonal
  Matrix v;  // m x m orthogonal
  JordanAngles angles;
  Matrix z0;  // n x m, diagonal

  /// Push a tangent coordinate into the normalized frame.
  Matrix to_normalized(const Matrix& x) const { return u * x * v; }
};

DiagonalNormalization normalize_diagonal(const ChartPoint& point);

}  // namespace grassconv
