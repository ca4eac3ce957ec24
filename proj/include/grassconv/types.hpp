#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace grassconv {

using Scalar = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Hard cap on matrix extent. Everything in this library is desk scale and
// dense; nothing is tuned for matrices beyond this.
inline constexpr Index kMaxDim = 64;

// Fixed flattening of an n x m coordinate matrix: (i, alpha) -> i*m + alpha.
// Every Gram matrix, Hessian and covector in this library indexes rows and
// columns this way; there is no second convention anywhere.
inline Index flat_index(Index i, Index alpha, Index m) { return i * m + alpha; }

inline Vector flatten(const Matrix& x) {
  Vector out(x.size());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index a = 0; a < x.cols(); ++a) out(flat_index(i, a, x.cols())) = x(i, a);
  return out;
}

inline Matrix unflatten(const Vector& v, Index n, Index m) {
  Matrix out(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index a = 0; a < m; ++a) out(i, a) = v(flat_index(i, a, m));
  return out;
}

inline void require_finite(const Matrix& a, const std::string& what) {
  if (!a.allFinite())
    throw std::domain_error(what + ": matrix contains NaN or Inf entries");
}

inline void require_desk_scale(const Matrix& a, const std::string& what) {
  if (a.rows() > kMaxDim || a.cols() > kMaxDim)
    throw std::invalid_argument(what + ": matrix exceeds the supported size " +
                                std::to_string(kMaxDim) + "x" + std::to_string(kMaxDim));
}

}  // namespace grassconv
