#include "framecert/linalg.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace framecert {

namespace {

void require_hermitian(const Matrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  const double scale = m.norm();
  if (scale > 0 && (m - m.adjoint()).norm() > 1e-10 * scale)
    throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
}

}  // namespace

Matrix SpectralFactor::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
         eigenvectors.adjoint();
}

SpectralFactor hermitian_eig(const Matrix& m) {
  require_hermitian(m, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return SpectralFactor{es.eigenvalues(), es.eigenvectors()};
}

Matrix pinv(const Matrix& w, double rtol) {
  if (!(rtol > 0.0 && rtol < 1.0))
    throw std::invalid_argument("pinv: rtol must be in (0,1)");
  if (w.norm() == 0.0) return Matrix::Zero(w.cols(), w.rows());
  Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cut = rtol * sigma[0];
  RealVector inv = RealVector::Zero(sigma.size());
  for (int i = 0; i < sigma.size(); ++i)
    if (sigma[i] > cut) inv[i] = 1.0 / sigma[i];
  return svd.matrixV() * inv.asDiagonal().toDenseMatrix().cast<Complex>() *
         svd.matrixU().adjoint();
}

DouglasFactor douglas_factor(const Matrix& t1, const Matrix& t2star,
                             double rtol) {
  if (t1.rows() != t2star.rows())
    throw std::invalid_argument("douglas_factor: codomain mismatch");
  Matrix m = pinv(t2star, rtol) * t1;
  const double scale = std::max(t1.norm(), 1e-300);
  const double residual = (t1 - t2star * m).norm() / scale;
  return DouglasFactor{std::move(m), residual};
}

Matrix sqrt_psd(const Matrix& m) {
  SpectralFactor sf = hermitian_eig(m);
  const double lmax = sf.eigenvalues.size() ? sf.eigenvalues.maxCoeff() : 0.0;
  RealVector roots = RealVector::Zero(sf.eigenvalues.size());
  for (int i = 0; i < sf.eigenvalues.size(); ++i) {
    double lam = sf.eigenvalues[i];
    if (lam < -1e-10 * std::max(lmax, 0.0))
      throw std::invalid_argument("sqrt_psd: matrix is significantly indefinite");
    // Zero-clip rounding-level eigenvalues so the root keeps the numerical
    // rank of the input; otherwise noise lambda ~ eps*lmax turns into
    // sqrt(eps)-sized spurious directions in the root's range.
    if (lam < 1e-13 * std::max(lmax, 0.0)) lam = 0.0;
    roots[i] = std::sqrt(std::max(lam, 0.0));
  }
  Matrix r = sf.eigenvectors *
             roots.asDiagonal().toDenseMatrix().cast<Complex>() *
             sf.eigenvectors.adjoint();
  return ((r + r.adjoint()) / 2.0).eval();
}

Matrix range_basis(const Matrix& k, double rtol) {
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[0] == 0.0) return Matrix::Zero(k.rows(), 0);
  int rank = 0;
  while (rank < sigma.size() && sigma[rank] > rtol * sigma[0]) ++rank;
  return svd.matrixU().leftCols(rank);
}

double range_exclusion_residual(const Matrix& m, const Matrix& basis) {
  const double scale = m.norm();
  if (scale == 0.0) return 0.0;
  return (m - basis * (basis.adjoint() * m)).norm() / scale;
}

double min_generalized_quotient(const Matrix& s, const Matrix& d, double rtol) {
  if (s.rows() != d.rows() || s.cols() != d.cols() || s.rows() != s.cols())
    throw std::invalid_argument("min_generalized_quotient: shape mismatch");
  Matrix q = range_basis(d, rtol);
  if (q.cols() == 0)
    throw std::invalid_argument("min_generalized_quotient: zero denominator form");

  const int n = static_cast<int>(s.rows());
  const int r = static_cast<int>(q.cols());

  // Complement basis via full QR of q.
  Eigen::HouseholderQR<Matrix> qr(q);
  Matrix full = qr.householderQ() * Matrix::Identity(n, n);
  Matrix qc = full.rightCols(n - r);

  Matrix s11 = q.adjoint() * s * q;
  Matrix s_eff = s11;
  if (n > r) {
    Matrix s00 = qc.adjoint() * s * qc;
    Matrix s01 = q.adjoint() * s * qc;
    // Compression of the quadratic form: minimize over the complement. The
    // inverse of s00 is cut relative to the scale of the full S, not of s00
    // itself, so a rounding-level complement block cannot be inverted into an
    // order-one correction.
    SpectralFactor sf00 = hermitian_eig(((s00 + s00.adjoint()) / 2.0).eval());
    const double cut = rtol * std::max(spectral_norm(s), 1e-300);
    RealVector inv = RealVector::Zero(sf00.eigenvalues.size());
    for (int i = 0; i < sf00.eigenvalues.size(); ++i)
      if (sf00.eigenvalues[i] > cut) inv[i] = 1.0 / sf00.eigenvalues[i];
    Matrix s00_pinv = sf00.eigenvectors *
                      inv.asDiagonal().toDenseMatrix().cast<Complex>() *
                      sf00.eigenvectors.adjoint();
    s_eff = s11 - s01 * s00_pinv * s01.adjoint();
  }
  s_eff = ((s_eff + s_eff.adjoint()) / 2.0).eval();
  Matrix d11 = q.adjoint() * d * q;
  d11 = ((d11 + d11.adjoint()) / 2.0).eval();

  // Generalized Hermitian eigenproblem (s_eff, d11), d11 positive definite.
  Eigen::LLT<Matrix> llt(d11);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("min_generalized_quotient: denominator not PD on its range");
  Matrix l = llt.matrixL();
  Matrix w = l.triangularView<Eigen::Lower>().solve(s_eff);
  w = l.triangularView<Eigen::Lower>().solve(w.adjoint().eval()).adjoint();
  SpectralFactor sf = hermitian_eig(((w + w.adjoint()) / 2.0).eval());
  return std::max(sf.eigenvalues.minCoeff(), 0.0);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0 || m.norm() == 0.0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()[0];
}

}  // namespace framecert
