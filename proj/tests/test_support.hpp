#pragma once

// Shared fixtures and independent oracles for the unit suites. Everything in
// here stays deliberately dumb: plain loops, textbook formulas, no reuse of
// the code paths under test.

#include <Eigen/Dense>
#include <cmath>

#include "grassconv/grassmann.hpp"
#include "grassconv/rng.hpp"
#include "grassconv/types.hpp"

namespace testsup {

using grassconv::Index;
using grassconv::Matrix;
using grassconv::SplitMix64;
using grassconv::Vector;

inline Matrix random_matrix(SplitMix64& rng, Index rows, Index cols, double lo = -1.0,
                            double hi = 1.0) {
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = rng.uniform(lo, hi);
  return out;
}

inline Matrix random_symmetric(SplitMix64& rng, Index k, double lo = -1.0, double hi = 1.0) {
  const Matrix a = random_matrix(rng, k, k, lo, hi);
  return 0.5 * (a + a.transpose());
}

inline Matrix random_spd(SplitMix64& rng, Index k, double eig_lo = 0.5, double eig_hi = 3.0) {
  const Matrix gauss = random_matrix(rng, k, k, -1.0, 1.0);
  const Eigen::HouseholderQR<Matrix> qr(gauss);
  Matrix q = qr.householderQ();
  Vector d(k);
  for (Index i = 0; i < k; ++i) d(i) = rng.uniform(eig_lo, eig_hi);
  return q * d.asDiagonal() * q.transpose();
}

inline double rel_frobenius(const Matrix& got, const Matrix& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

// Principal angles between span[I; Z^T] and span[I; 0] from orthonormalized
// frames: arccos of the singular values of Q1^T Q2.
inline Vector principal_angles_frame_oracle(const Matrix& z) {
  const Index n = z.rows(), m = z.cols();
  Matrix frame(n + m, n);
  frame.topRows(n) = Matrix::Identity(n, n);
  frame.bottomRows(m) = z.transpose();
  const Matrix q1 = Eigen::HouseholderQR<Matrix>(frame)
                        .householderQ() *
                    Matrix::Identity(n + m, n);
  Matrix ref = Matrix::Zero(n + m, n);
  ref.topRows(n) = Matrix::Identity(n, n);
  const Vector cosines = Eigen::JacobiSVD<Matrix>(q1.transpose() * ref).singularValues();
  Vector theta(std::min(n, m));
  //-- the n singular values include n - min(n, m) trivial ones equal to 1;
  //    the angles against the reference plane are the smallest cosines
  for (Index k = 0; k < theta.size(); ++k)
    theta(k) = std::acos(std::min(1.0, cosines(n - 1 - k)));
  // descending to match the library convention
  std::sort(theta.data(), theta.data() + theta.size(), std::greater<double>());
  return theta;
}

// Height of the chart point over the reference plane through the orthonormal
// frame route: the top-block determinant of the orthonormalized graph frame.
inline double height_frame_oracle(const Matrix& z) {
  const Index n = z.rows(), m = z.cols();
  Matrix frame(n + m, n);
  frame.topRows(n) = Matrix::Identity(n, n);
  frame.bottomRows(m) = z.transpose();
  const Matrix q =
      Eigen::HouseholderQR<Matrix>(frame).householderQ() * Matrix::Identity(n + m, n);
  return std::abs(q.topRows(n).determinant());
}

inline grassconv::ChartPoint random_chart_point(SplitMix64& rng, Index n, Index m,
                                                double scale = 1.0) {
  return grassconv::ChartPoint(scale * random_matrix(rng, n, m));
}

}  // namespace testsup
