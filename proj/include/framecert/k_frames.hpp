#pragma once

#include <optional>

#include "framecert/frame_ops.hpp"

namespace framecert {

// Coefficient operator M: J -> L^2(X,mu) samples, in the sqrt(w)-embedded
// convention (row i carries sqrt(w_i) times the unweighted coefficient).
struct CoefficientMap {
  Matrix matrix;  // m x dim_J
  double gamma = 0.0;  // operator norm ||M||
};

struct KFrameReport {
  FrameCertificate certificate;
  std::optional<CoefficientMap> coefficients;
  std::optional<VectorFamily> dual;  // K-dual family in J
  double factorization_residual = 0.0;
  // lambda_min of S restricted to span{psi}; diagnostic only, no verdict claim.
  double span_lambda_min = 0.0;
};

// alpha ||K*h||^2 <= int |<h,psi_x>|^2 dmu <= beta ||h||^2; alpha is the
// optimal constant (infimum over all h with K*h != 0). K = 0 is rejected.
FrameCertificate certify_k_frame(const VectorFamily& psi, const Matrix& k,
                                 double rtol = kDefaultRtol);

// Douglas factorization K = C* M with minimal-norm M; failure is a verdict.
KFrameReport atomic_system_factor(const VectorFamily& psi, const Matrix& k,
                                  double rtol = kDefaultRtol);

// Riesz rows of M: phi_{x_i} = conj(M[i,:]) / sqrt(w_i), a Bessel family in J.
VectorFamily k_dual_from_m(const CoefficientMap& m, const MeasureSpace& sp);

// Remark-level check that a K-dual phi is an atomic system for K*:
// <K*h, f> = int <h,psi_x><phi_x,f> dmu over full basis pairs, phi Bessel.
FrameCertificate dual_is_atomic_for_adjoint(const VectorFamily& psi,
                                            const VectorFamily& phi,
                                            const Matrix& k,
                                            double rtol = kDefaultRtol);

// theta_x = (pinv(K) restricted to R(K))^* phi_x for closed-range K; both
// interchange identities hold on R(K) x H. Throws on ambiguous rank.
VectorFamily interchange_dual(const VectorFamily& psi, const VectorFamily& phi,
                              const Matrix& k, double rtol = kDefaultRtol);

// Max relative residual of the two interchange identities
//   <h,f> = int <h,theta_x><psi_x,f> dmu = int <h,psi_x><theta_x,f> dmu
// over h in R(K), f in H (evaluated on full basis pairs).
double interchange_residuals(const VectorFamily& psi, const VectorFamily& theta,
                             const Matrix& k, double rtol = kDefaultRtol);

struct EquivalenceTable {
  bool k_frame = false;           // (i)  optimal alpha > 0
  bool range_inclusion = false;   // (ii) R(K) subset R(C*)
  bool douglas_factorizes = false;  // (iii) K = C* M
  bool operator_bound = false;    // (iv) S >= alpha K K*
  bool sqrt_factorizes = false;   // (v)  K = S^{1/2} U
  bool agreement = false;

  bool all() const {
    return k_frame && range_inclusion && douglas_factorizes && operator_bound &&
           sqrt_factorizes;
  }
};

// Evaluates the five predicates through independent routes and reports whether
// they agree.
EquivalenceTable equivalence_harness(const VectorFamily& psi, const Matrix& k,
                                     double rtol = kDefaultRtol);

// Local atoms for the subspace picked out by an orthogonal projector.
FrameCertificate local_atoms_check(const VectorFamily& psi, const Matrix& p,
                                   double rtol = kDefaultRtol);

struct TransformCertificates {
  FrameCertificate ek_frame;  // E psi certified for E K
  FrameCertificate kg_frame;  // psi certified for K G
};

TransformCertificates transform_frames(const VectorFamily& psi, const Matrix& k,
                                       const Matrix& e, const Matrix& g,
                                       double rtol = kDefaultRtol);

}  // namespace framecert
