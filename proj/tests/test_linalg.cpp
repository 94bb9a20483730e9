#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "framecert/linalg.hpp"

using namespace framecert;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> nd;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Complex(nd(rng), nd(rng));
  return m;
}

Matrix random_hermitian(std::mt19937_64& rng, int n) {
  Matrix m = random_matrix(rng, n, n);
  return ((m + m.adjoint()) / 2.0).eval();
}

Matrix random_unitary(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

Matrix diag(std::initializer_list<double> vals) {
  int n = static_cast<int>(vals.size());
  Matrix m = Matrix::Zero(n, n);
  int i = 0;
  for (double v : vals) m(i, i) = Complex(v, 0), ++i;
  return m;
}

}  // namespace

TEST_CASE("hermitian_eig") {
  SpectralFactor id3 = hermitian_eig(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(id3.eigenvalues[i] == doctest::Approx(1.0));

  SpectralFactor d = hermitian_eig(diag({3, 1, 2}));
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(d.eigenvalues[2] == doctest::Approx(3.0));

  std::mt19937_64 rng(11);
  Matrix h = random_hermitian(rng, 6);
  SpectralFactor sf = hermitian_eig(h);
  CHECK((h - sf.reconstruct()).norm() / h.norm() <= 1e-10);
  // eigenvector matrix is unitary
  CHECK((sf.eigenvectors.adjoint() * sf.eigenvectors - Matrix::Identity(6, 6))
            .norm() <= 1e-12);

  Matrix nh = random_matrix(rng, 4, 4);
  nh(0, 1) += Complex(1.0, 0.0);
  CHECK_THROWS_AS(hermitian_eig(nh), std::invalid_argument);
}

TEST_CASE("pinv basics and Moore-Penrose identities") {
  CHECK((pinv(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)).norm() < 1e-14);
  Matrix d = diag({2, 0});
  Matrix dp = pinv(d);
  CHECK(std::abs(dp(0, 0) - Complex(0.5, 0)) < 1e-15);
  CHECK(std::abs(dp(1, 1)) < 1e-15);

  CHECK(pinv(Matrix::Zero(3, 2)).norm() == 0.0);
  CHECK_THROWS_AS(pinv(Matrix::Identity(2, 2), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(pinv(Matrix::Identity(2, 2), 1.5), std::invalid_argument);

  std::mt19937_64 rng(13);
  Matrix w = random_matrix(rng, 5, 3);
  Matrix wp = pinv(w);
  CHECK((wp * w - Matrix::Identity(3, 3)).norm() <= 1e-9);  // full column rank
  CHECK((w * wp * w - w).norm() / w.norm() <= 1e-9);
  CHECK((wp * w * wp - wp).norm() / wp.norm() <= 1e-9);
  CHECK((w * wp - (w * wp).adjoint()).norm() <= 1e-9);
  CHECK((wp * w - (wp * w).adjoint()).norm() <= 1e-9);

  // pinv acts as the identity on the range and kills its orthogonal complement
  Matrix rank1 = random_matrix(rng, 4, 1) * random_matrix(rng, 1, 4);
  Matrix rp = pinv(rank1);
  Matrix proj = rank1 * rp;  // projector onto R(rank1)
  Vector f = rank1 * random_matrix(rng, 4, 1);
  CHECK((proj * f - f).norm() / f.norm() <= 1e-10);
}

TEST_CASE("douglas_factor detects range inclusion") {
  std::mt19937_64 rng(17);
  Matrix t2star = random_matrix(rng, 5, 3);  // rank 3, range is 3-dim
  Matrix inside = t2star * random_matrix(rng, 3, 2);
  DouglasFactor good = douglas_factor(inside, t2star);
  CHECK(good.residual <= 1e-12);
  CHECK((inside - t2star * good.solution).norm() / inside.norm() <= 1e-12);

  // minimal-norm solution has no component in N(t2star) = R(t2star^*)^perp
  Matrix back = pinv(t2star) * (t2star * good.solution);
  CHECK((back - good.solution).norm() <= 1e-10);

  Matrix q = range_basis(t2star);
  Matrix outside = inside;
  // add a component orthogonal to R(t2star)
  Vector v = random_matrix(rng, 5, 1);
  v -= q * (q.adjoint() * v);
  v.normalize();
  outside.col(0) += v * inside.norm();
  CHECK(douglas_factor(outside, t2star).residual > 0.1);

  CHECK_THROWS_AS(douglas_factor(Matrix::Identity(3, 3), Matrix::Identity(4, 4)),
                  std::invalid_argument);
  CHECK(douglas_factor(Matrix::Zero(5, 2), t2star).residual == 0.0);
}

TEST_CASE("sqrt_psd") {
  Matrix r = sqrt_psd(diag({4, 9}));
  CHECK(std::abs(r(0, 0) - Complex(2, 0)) < 1e-14);
  CHECK(std::abs(r(1, 1) - Complex(3, 0)) < 1e-14);

  std::mt19937_64 rng(19);
  Matrix b = random_matrix(rng, 5, 5);
  Matrix psd = b * b.adjoint();
  Matrix root = sqrt_psd(psd);
  CHECK((root * root - psd).norm() / psd.norm() <= 1e-10);
  CHECK((root - root.adjoint()).norm() <= 1e-12);

  // commutes with unitary conjugation
  Matrix u = random_unitary(rng, 5);
  Matrix lhs = sqrt_psd((u * psd * u.adjoint()).eval());
  Matrix rhs = u * root * u.adjoint();
  CHECK((lhs - rhs).norm() / rhs.norm() <= 1e-9);

  CHECK_THROWS_AS(sqrt_psd(diag({1, -1})), std::invalid_argument);
  // rounding-level eigenvalues are clipped: root keeps the numerical rank
  Matrix nearly = diag({1, 1e-15});
  CHECK(std::abs(sqrt_psd(nearly)(1, 1)) == 0.0);
}

TEST_CASE("range_basis and range_exclusion_residual") {
  std::mt19937_64 rng(23);
  Matrix k = random_matrix(rng, 6, 2) * random_matrix(rng, 2, 4);  // rank 2
  Matrix q = range_basis(k);
  CHECK(q.cols() == 2);
  CHECK((q.adjoint() * q - Matrix::Identity(2, 2)).norm() <= 1e-12);
  CHECK(range_exclusion_residual(k, q) <= 1e-12);

  Matrix other = random_matrix(rng, 6, 3);
  other -= q * (q.adjoint() * other);  // orthogonal to R(k)
  CHECK(range_exclusion_residual(other, q) > 0.99);
  CHECK(range_exclusion_residual(Matrix::Zero(6, 2), q) == 0.0);
  CHECK(range_basis(Matrix::Zero(3, 3)).cols() == 0);
}

TEST_CASE("min_generalized_quotient") {
  CHECK(min_generalized_quotient(Matrix::Identity(3, 3), Matrix::Identity(3, 3)) ==
        doctest::Approx(1.0));

  // minimizer need not lie in R(D): S = diag(1,0), D the projector direction
  // (1,1)/sqrt(2); taking h = (t,1-t...) drives the quotient to 0.
  Matrix s = diag({1, 0});
  Matrix dmat(2, 2);
  dmat << Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0);
  CHECK(min_generalized_quotient(s, dmat) <= 1e-10);

  // with S positive definite the compression is a genuine Schur complement:
  // S = [[2,1],[1,2]], D = e1 projector; min over h of <Sh,h>/|h1|^2 = 2 - 1/2
  Matrix s2(2, 2);
  s2 << Complex(2, 0), Complex(1, 0), Complex(1, 0), Complex(2, 0);
  CHECK(min_generalized_quotient(s2, diag({1, 0})) == doctest::Approx(1.5));

  // block aligned with R(D): plain restricted eigenvalue
  CHECK(min_generalized_quotient(diag({3, 5}), diag({1, 1})) ==
        doctest::Approx(3.0));

  CHECK_THROWS_AS(min_generalized_quotient(s2, Matrix::Zero(2, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(min_generalized_quotient(s2, diag({1, 0, 0})),
                  std::invalid_argument);

  // scale invariance in the denominator: quotient scales inversely
  std::mt19937_64 rng(29);
  Matrix b = random_matrix(rng, 4, 4);
  Matrix spsd = b * b.adjoint();
  Matrix c = random_matrix(rng, 4, 2);
  Matrix den = c * c.adjoint();
  double q1 = min_generalized_quotient(spsd, den);
  double q2 = min_generalized_quotient(spsd, (4.0 * den).eval());
  CHECK(q2 == doctest::Approx(q1 / 4.0).epsilon(1e-8));
}

TEST_CASE("spectral_norm") {
  CHECK(spectral_norm(diag({3, 1, 2})) == doctest::Approx(3.0));
  CHECK(spectral_norm(Matrix::Zero(2, 3)) == 0.0);
}
