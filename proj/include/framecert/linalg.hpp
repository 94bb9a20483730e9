#pragma once

#include "framecert/types.hpp"

namespace framecert {

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
struct SpectralFactor {
  RealVector eigenvalues;
  Matrix eigenvectors;  // unitary, columns are eigenvectors

  Matrix reconstruct() const;
};

SpectralFactor hermitian_eig(const Matrix& m);

// Moore-Penrose pseudo-inverse via SVD; singular values kept iff
// sigma > rtol * sigma_max.
Matrix pinv(const Matrix& w, double rtol = kDefaultRtol);

// Least-squares solution of T1 = T2star * M with minimal-norm M. The residual
// is ||T1 - T2star*M|| / max(||T1||, eps); it is small exactly when
// R(T1) is numerically contained in R(T2star).
struct DouglasFactor {
  Matrix solution;
  double residual = 0.0;
};

DouglasFactor douglas_factor(const Matrix& t1, const Matrix& t2star,
                             double rtol = kDefaultRtol);

// Hermitian PSD square root; eigenvalues below -1e-10 * lambda_max reject the
// input, small negatives are clipped to zero.
Matrix sqrt_psd(const Matrix& m);

// Orthonormal basis of the numerical range of k (columns), rank cut at
// rtol * sigma_max.
Matrix range_basis(const Matrix& k, double rtol = kDefaultRtol);

// ||(I - P_{R(basis)}) m|| / ||m|| for an orthonormal basis of a range.
double range_exclusion_residual(const Matrix& m, const Matrix& basis);

// inf over h with Dh != 0 of <Sh,h> / <Dh,h>, for Hermitian PSD S and D.
// The infimum over all of H is computed by compressing S onto R(D) through a
// Schur complement (the minimizer need not lie in R(D)). Returns 0 when the
// quotient is not bounded below by a positive constant. Throws if D is zero.
double min_generalized_quotient(const Matrix& s, const Matrix& d,
                                double rtol = kDefaultRtol);

double spectral_norm(const Matrix& m);

}  // namespace framecert
