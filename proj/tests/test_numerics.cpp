#include <doctest.h>

#include "grassconv/numerics.hpp"
#include "test_support.hpp"

using namespace grassconv;
using testsup::random_matrix;
using testsup::random_spd;
using testsup::random_symmetric;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("svd of the identity") {
  const SvdResult s = svd(Matrix::Identity(2, 2));
  CHECK(s.sigma(0) == doctest::Approx(1.0));
  CHECK(s.sigma(1) == doctest::Approx(1.0));
  CHECK((s.reconstruct() - Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("svd of a diagonal matrix") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 3.0;
  const SvdResult s = svd(a);
  CHECK(s.sigma(0) == doctest::Approx(3.0));
  CHECK(s.sigma(1) == doctest::Approx(0.0));
}

TEST_CASE("svd reconstruction residual on random input") {
  SplitMix64 rng(11);
  const Matrix a = random_matrix(rng, 4, 3, -5.0, 5.0);
  const SvdResult s = svd(a);
  CHECK((a - s.reconstruct()).norm() <= 1e-10 * a.norm());
  CHECK((s.u.transpose() * s.u - Matrix::Identity(4, 4)).norm() < 1e-10);
  CHECK((s.v.transpose() * s.v - Matrix::Identity(3, 3)).norm() < 1e-10);
  for (Index k = 1; k < s.sigma.size(); ++k) CHECK(s.sigma(k) <= s.sigma(k - 1));
}

TEST_CASE("svd rejects non-finite input") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = std::nan("");
  CHECK_THROWS_AS(svd(a), std::domain_error);
}

TEST_CASE("sym_eig on fixed spectra") {
  const SymmetricSpectrum id = sym_eig(Matrix::Identity(3, 3));
  for (Index k = 0; k < 3; ++k) CHECK(id.eigenvalues(k) == doctest::Approx(1.0));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = -1.0;
  d(1, 1) = 2.0;
  const SymmetricSpectrum s = sym_eig(d);
  CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
}

TEST_CASE("sym_eig trace identity on random symmetric input") {
  SplitMix64 rng(12);
  const Matrix a = random_symmetric(rng, 6, -10.0, 10.0);
  const SymmetricSpectrum s = sym_eig(a);
  CHECK(s.eigenvalues.sum() == doctest::Approx(a.trace()).epsilon(1e-10));
}

TEST_CASE("spectral reconstruction bounds over many random matrices") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index k = 2 + static_cast<Index>(rng.next() % 7);
    const Matrix a = random_symmetric(rng, k, -10.0, 10.0);
    const SymmetricSpectrum s = sym_eig(a);
    CHECK((a - s.reconstruct()).norm() <= 1e-10 * (1 + a.norm()));
    CHECK((s.eigenvectors.transpose() * s.eigenvectors - Matrix::Identity(k, k)).norm() <= 1e-10);
  }
}

TEST_CASE("svd reconstruction bounds over many random matrices") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index rows = 1 + static_cast<Index>(rng.next() % 8);
    const Index cols = 1 + static_cast<Index>(rng.next() % 8);
    const Matrix a = random_matrix(rng, rows, cols, -10.0, 10.0);
    const SvdResult s = svd(a);
    CHECK((a - s.reconstruct()).norm() <= 1e-10 * (1 + a.norm()));
    CHECK((s.u.transpose() * s.u - Matrix::Identity(rows, rows)).norm() <= 1e-10);
    CHECK((s.v.transpose() * s.v - Matrix::Identity(cols, cols)).norm() <= 1e-10);
  }
}

TEST_CASE("gen_sym_eig fixed cases") {
  SplitMix64 rng(14);
  const Matrix g = random_spd(rng, 5);

  const Vector ones = gen_sym_eig(g, g);
  for (Index k = 0; k < 5; ++k) CHECK(ones(k) == doctest::Approx(1.0).epsilon(1e-10));

  const Vector zeros = gen_sym_eig(Matrix::Zero(5, 5), g);
  for (Index k = 0; k < 5; ++k) CHECK(zeros(k) == doctest::Approx(0.0).epsilon(1e-12));

  const Vector twos = gen_sym_eig(2 * g, g);
  for (Index k = 0; k < 5; ++k) CHECK(twos(k) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("gen_sym_eig against the identity matches sym_eig") {
  SplitMix64 rng(15);
  const Matrix a = random_symmetric(rng, 6, -3.0, 3.0);
  const Vector lhs = gen_sym_eig(a, Matrix::Identity(6, 6));
  const Vector rhs = sym_eig(a).eigenvalues;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("gen_sym_eig rejects indefinite weights") {
  Matrix g = Matrix::Identity(3, 3);
  g(2, 2) = -0.5;
  CHECK_THROWS_WITH_AS(gen_sym_eig(Matrix::Identity(3, 3), g),
                       doctest::Contains("not positive definite"), std::domain_error);
}

TEST_CASE("logdet derivative of a scalar dilation") {
  const Index n = 4;
  // A(t) = (1+t) I: d/dt log det = n/(1+t)
  CHECK(logdet_derivative(Matrix::Identity(n, n), Matrix::Identity(n, n)) ==
        doctest::Approx(static_cast<double>(n)));
  CHECK(logdet_derivative(Matrix::Identity(n, n), Matrix::Zero(n, n)) == doctest::Approx(0.0));
}

TEST_CASE("logdet derivatives match extrapolated finite differences") {
  // quadratic matrix curves a0 + t da + t^2 qa, differentiated at t = 0
  SplitMix64 rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next() % 4);
    const Matrix a0 = Matrix::Identity(n, n) * 2.0 + random_matrix(rng, n, n, -0.3, 0.3);
    const Matrix da = random_matrix(rng, n, n);
    const Matrix qa = random_matrix(rng, n, n, -0.5, 0.5);

    auto logdet = [&](double t) {
      return std::log(std::abs((a0 + t * da + t * t * qa).determinant()));
    };
    auto central = [&](double h) { return (logdet(h) - logdet(-h)) / (2 * h); };
    auto second = [&](double h) { return (logdet(h) - 2 * logdet(0) + logdet(-h)) / (h * h); };
    const double h = 1e-3;
    const double d1_fd = (4 * central(h / 2) - central(h)) / 3;
    const double d2_fd = (4 * second(h / 2) - second(h)) / 3;

    const double d1 = logdet_derivative(a0, da);
    const double d2 = logdet_second_derivative(a0, da, da, 2 * qa);
    CHECK(std::abs(d1 - d1_fd) <= 1e-6 * std::max(1.0, std::abs(d1_fd)));
    CHECK(std::abs(d2 - d2_fd) <= 1e-6 * std::max(1.0, std::abs(d2_fd)));
  }
}

TEST_CASE("logdet rejects singular input") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1.0;
  CHECK_THROWS_AS(logdet_derivative(a, Matrix::Identity(3, 3)), std::domain_error);
}

TEST_SUITE_END();
