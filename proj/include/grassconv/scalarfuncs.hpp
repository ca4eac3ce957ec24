#pragma once

#include "grassconv/grassmann.hpp"

namespace grassconv {

/// det(I + ZZ^T)^{1/2}, the product of the angle secants. Always >= 1.
/// Accepts any matrix expression.
template <typename Derived>
double v_value_of(const Eigen::MatrixBase<Derived>& z) {
  const Index n = z.rows(), m = z.cols();
  if (m <= n) {
    const Matrix b = Matrix::Identity(m, m) + z.transpose() * z;
    return std::sqrt(b.determinant());
  }
  const Matrix a = Matrix::Identity(n, n) + z.derived() * z.transpose();
  return std::sqrt(a.determinant());
}

/// tr(ZZ^T), the sum of squared angle tangents.
template <typename Derived>
double u_value_of(const Eigen::MatrixBase<Derived>& z) {
  return z.squaredNorm();
}

double v_value(const ChartPoint& point);
double u_value(const ChartPoint& point);

/// Height of the chart point over the reference plane; the reciprocal of v.
double w_value(const ChartPoint& point);

// Value, differential and covariant Hessian of a scalar function at a
// diagonal chart point. gradient(i,a) holds the derivative along E_{i,alpha};
// hessian is the bilinear form on those basis directions in the fixed
// flattening, connection correction already applied.
struct ScalarJet2 {
  double value = 0.0;
  Matrix gradient;  // n x m
  Matrix hessian;   // (nm) x (nm), symmetric
};

ScalarJet2 v_jet(const JordanAngles& angles, Index n, Index m);
ScalarJet2 u_jet(const JordanAngles& angles, Index n, Index m);

enum class HKind { h1, h2, h3, h4 };

const char* to_string(HKind kind);

// Margin kept away from the pole at v = 2 (resp. u = 2); the auxiliary
// functions carry negative powers of the distance to it.
inline constexpr double kHDomainMargin = 1e-9;

/// Whether the h-function of this kind is driven by v (h1, h2) or u (h3, h4).
bool h_uses_v(HKind kind);

/// phi(s), phi'(s), phi''(s) for the scalar profile of an auxiliary function,
/// where s is v (h1, h2) or u (h3, h4) and p = min(n, m).
struct ScalarProfile {
  double value;
  double d1;
  double d2;
};

ScalarProfile h_profile(HKind kind, double s, Index p);

/// Value of the auxiliary function at an arbitrary chart point.
/// Throws std::domain_error when v >= 2 (resp. u >= 2).
double h_value(HKind kind, const ChartPoint& point);

/// Closed-form jet at a diagonal point by the chain rule
/// Hess(phi(s)) = phi'(s) Hess(s) + phi''(s) ds (x) ds with s in {v, u}.
ScalarJet2 h_jet(HKind kind, const JordanAngles& angles, Index n, Index m);

// Jet of any supported scalar at an arbitrary chart point: the point is
// brought to diagonal form first and the jet is reported in that frame.
struct NormalizedJet {
  DiagonalNormalization frame;
  ScalarJet2 jet;
};

NormalizedJet v_jet_at(const ChartPoint& point);
NormalizedJet u_jet_at(const ChartPoint& point);
NormalizedJet h_jet_at(HKind kind, const ChartPoint& point);

}  // namespace grassconv
