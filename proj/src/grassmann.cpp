#include "grassconv/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "grassconv/numerics.hpp"

namespace grassconv {

ChartPoint::ChartPoint(Matrix coords) : z(std::move(coords)) {
  require_finite(z, "ChartPoint");
  require_desk_scale(z, "ChartPoint");
  if (z.rows() < 1 || z.cols() < 1)
    throw std::invalid_argument("ChartPoint: empty coordinate matrix");
}

JordanAngles angles_from_lambda(Vector lambda) {
  if ((lambda.array() < 0).any())
    throw std::invalid_argument("angles_from_lambda: negative tangent value");
  // descending, ties keep original order
  std::vector<Index> order(lambda.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return lambda(a) > lambda(b); });
  JordanAngles out;
  out.lambda.resize(lambda.size());
  out.theta.resize(lambda.size());
  for (Index k = 0; k < lambda.size(); ++k) {
    out.lambda(k) = lambda(order[k]);
    out.theta(k) = std::atan(out.lambda(k));
  }
  return out;
}

JordanAngles jordan_angles(const ChartPoint& point) {
  return angles_from_lambda(svd(point.z).sigma);
}

bool in_bjx(const JordanAngles& angles) {
  const Index p = angles.p();
  for (Index a = 0; a < p; ++a)
    for (Index b = a + 1; b < p; ++b)
      if (angles.theta(a) + angles.theta(b) >= M_PI / 2) return false;
  return true;
}

double metric_inner(const ChartPoint& point, const Matrix& x, const Matrix& y) {
  const Matrix& z = point.z;
  if (x.rows() != z.rows() || x.cols() != z.cols() || y.rows() != z.rows() ||
      y.cols() != z.cols())
    throw std::invalid_argument("metric_inner: tangent shape mismatch");
  const Matrix a = Matrix::Identity(z.rows(), z.rows()) + z * z.transpose();
  const Matrix b = Matrix::Identity(z.cols(), z.cols()) + z.transpose() * z;
  const Matrix ax = a.llt().solve(x);
  const Matrix by = b.llt().solve(y.transpose()).transpose();
  return (ax.array() * by.array()).sum();
}

MetricGram metric_gram(const ChartPoint& point) {
  const Matrix& z = point.z;
  const Index n = z.rows(), m = z.cols();
  const Matrix a_inv =
      (Matrix::Identity(n, n) + z * z.transpose()).llt().solve(Matrix::Identity(n, n));
  const Matrix b_inv =
      (Matrix::Identity(m, m) + z.transpose() * z).llt().solve(Matrix::Identity(m, m));
  // <E_{ia}, E_{jb}> = (A^{-1})_{ij} (B^{-1})_{ab}
  Matrix g(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index a = 0; a < m; ++a)
      for (Index j = 0; j < n; ++j)
        for (Index b = 0; b < m; ++b)
          g(flat_index(i, a, m), flat_index(j, b, m)) = a_inv(i, j) * b_inv(a, b);
  return MetricGram{std::move(g)};
}

Matrix metric_gram_diag(const JordanAngles& angles, Index n, Index m) {
  Matrix g = Matrix::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index a = 0; a < m; ++a) {
      const double li = angles.lam(i), la = angles.lam(a);
      g(flat_index(i, a, m), flat_index(i, a, m)) = 1.0 / ((1 + li * li) * (1 + la * la));
    }
  return g;
}

double ChristoffelDiag::coeff(Index i, Index a, Index j, Index b, Index k, Index c) const {
  double out = 0.0;
  if (a == j && b == c && i == k) {
    const double la = angles.lam(a);
    out -= la / (1 + la * la);
  }
  if (b == i && a == c && j == k) {
    const double lb = angles.lam(b);
    out -= lb / (1 + lb * lb);
  }
  return out;
}

Matrix ChristoffelDiag::contract(const Matrix& grad) const {
  Matrix out = Matrix::Zero(n * m, n * m);
  for (Index i = 0; i < n; ++i)
    for (Index a = 0; a < m; ++a)
      for (Index j = 0; j < n; ++j)
        for (Index b = 0; b < m; ++b) {
          double s = 0.0;
          if (a == j) {
            const double la = angles.lam(a);
            s -= la / (1 + la * la) * grad(i, b);
          }
          if (b == i) {
            const double lb = angles.lam(b);
            s -= lb / (1 + lb * lb) * grad(j, a);
          }
          out(flat_index(i, a, m), flat_index(j, b, m)) = s;
        }
  return out;
}

ChristoffelDiag christoffel_diag(const JordanAngles& angles, Index n, Index m) {
  if (angles.p() != std::min(n, m))
    throw std::invalid_argument("christoffel_diag: angle count does not match min(n, m)");
  return ChristoffelDiag{angles, n, m};
}

DiagonalNormalization normalize_diagonal(const ChartPoint& point) {
  const SvdResult s = svd(point.z);
  DiagonalNormalization out;
  out.u = s.u.transpose();
  out.v = s.v;
  out.angles = angles_from_lambda(s.sigma);
  out.z0 = Matrix::Zero(point.n(), point.m());
  for (Index k = 0; k < out.angles.p(); ++k) out.z0(k, k) = out.angles.lambda(k);
  return out;
}

}  // namespace grassconv
