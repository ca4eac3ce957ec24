#include "grassconv/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace grassconv {

Matrix SvdResult::reconstruct() const {
  Matrix s = Matrix::Zero(u.cols(), v.cols());
  for (Index k = 0; k < sigma.size(); ++k) s(k, k) = sigma(k);
  return u * s * v.transpose();
}

SvdResult svd(const Matrix& a) {
  require_finite(a, "svd");
  require_desk_scale(a, "svd");
  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return SvdResult{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Matrix SymmetricSpectrum::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
}

SymmetricSpectrum sym_eig(const Matrix& a) {
  require_finite(a, "sym_eig");
  require_desk_scale(a, "sym_eig");
  if (a.rows() != a.cols()) throw std::invalid_argument("sym_eig: matrix is not square");
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::domain_error("sym_eig: eigendecomposition did not converge");
  return SymmetricSpectrum{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix sym_inverse_sqrt(const Matrix& g) {
  const SymmetricSpectrum s = sym_eig(g);
  const double max_eig = s.eigenvalues.cwiseAbs().maxCoeff();
  const double min_eig = s.eigenvalues.minCoeff();
  if (min_eig <= 1e-12 * std::max(max_eig, 1.0))
    throw std::domain_error("sym_inverse_sqrt: matrix not positive definite, min eigenvalue " +
                            std::to_string(min_eig));
  const Vector d = s.eigenvalues.cwiseSqrt().cwiseInverse();
  return s.eigenvectors * d.asDiagonal() * s.eigenvectors.transpose();
}

Vector gen_sym_eig(const Matrix& a, const Matrix& g) {
  require_finite(a, "gen_sym_eig");
  require_finite(g, "gen_sym_eig");
  if (a.rows() != a.cols() || g.rows() != g.cols() || a.rows() != g.rows())
    throw std::invalid_argument("gen_sym_eig: dimension mismatch");
  const SymmetricSpectrum gs = sym_eig(g);
  const double max_eig = gs.eigenvalues.cwiseAbs().maxCoeff();
  const double min_eig = gs.eigenvalues.minCoeff();
  if (min_eig <= 1e-12 * std::max(max_eig, 1.0))
    throw std::domain_error("gen_sym_eig: g not positive definite, min eigenvalue " +
                            std::to_string(min_eig) + " vs max " + std::to_string(max_eig));
  const Vector d = gs.eigenvalues.cwiseSqrt().cwiseInverse();
  const Matrix w = gs.eigenvectors * d.asDiagonal() * gs.eigenvectors.transpose();
  return sym_eig(w * a * w).eigenvalues;
}

namespace {

Eigen::FullPivLU<Matrix> nonsingular_lu(const Matrix& a, const char* who) {
  require_finite(a, who);
  if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix is not square");
  Eigen::FullPivLU<Matrix> lu(a);
  if (!lu.isInvertible()) throw std::domain_error(std::string(who) + ": matrix is singular");
  return lu;
}

}  // namespace

double logdet_derivative(const Matrix& a, const Matrix& da) {
  auto lu = nonsingular_lu(a, "logdet_derivative");
  return (da * lu.inverse()).trace();
}

double logdet_second_derivative(const Matrix& a, const Matrix& da_x,
                                const Matrix& da_y, const Matrix& dda) {
  auto lu = nonsingular_lu(a, "logdet_second_derivative");
  const Matrix inv = lu.inverse();
  return (dda * inv).trace() - (da_x * inv * da_y * inv).trace();
}

}  // namespace grassconv
