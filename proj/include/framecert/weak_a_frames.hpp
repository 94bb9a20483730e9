#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "framecert/k_frames.hpp"

namespace framecert {

enum class GrowthTag { bounded, unbounded };

// Truncation ladder n -> A_n modeling a densely defined (possibly unbounded)
// operator at desk scale; A_n acts on span{e_1..e_n}.
struct OperatorLadder {
  std::string name;
  std::function<Matrix(int)> generator;
  GrowthTag growth = GrowthTag::bounded;
  std::vector<int> sample_dims;

  Matrix at(int n) const;
  // Checks well-formedness and, for unbounded ladders, strict norm growth
  // along the sample dims.
  void validate() const;
};

inline const std::vector<int> kDefaultLadderDims = {8, 16, 32, 64};

// diag(1..n), self-adjoint with ||A_n|| = n.
OperatorLadder diag_ladder(std::vector<int> dims = kDefaultLadderDims);
// Periodic spectral differentiation (-i d/dx on n grid points, unit period).
OperatorLadder fourier_diff_ladder(std::vector<int> dims = kDefaultLadderDims);
// Non-normal weighted shift, adversarial ladder for duality tests.
OperatorLadder weighted_shift_ladder(std::vector<int> dims = kDefaultLadderDims);

OperatorLadder ladder_by_name(const std::string& name, std::vector<int> dims);

using FamilyRule = std::function<VectorFamily(int)>;

struct WeakFrameCertificate {
  std::map<int, FrameCertificate> per_dim;
  double uniform_alpha = 0.0;
  bool stable = false;
};

// Ratio threshold for the stable flag: min/max per-dim alpha across the ladder.
inline constexpr double kStabilityRatio = 0.9;

WeakFrameCertificate certify_weak_a_frame(const FamilyRule& psi_rule,
                                          const OperatorLadder& ladder,
                                          double rtol = kDefaultRtol);

// Step family psi_x = A e_k / sqrt(mu(X_k)) for x in X_k; sp must carry
// exactly dim(A) partition blocks.
VectorFamily onb_atomic_system(const Matrix& a_n, const MeasureSpace& sp);

// Step coefficients a_f(x) = <f,e_k>/sqrt(mu(X_k)) on X_k (unweighted samples).
Vector onb_atomic_coefficients(const Vector& f, const MeasureSpace& sp);

struct WeakDual {
  VectorFamily phi;
  CoefficientMap coefficients;
};

// Bessel weak A-dual through the factorization A = C* M; throws (carrying the
// residual) when R(A) is not contained in R(C*).
WeakDual weak_a_dual(const VectorFamily& psi, const Matrix& a_n,
                     double rtol = kDefaultRtol);

// Residual of <A*u,h> = int <u,psi_x><phi_x,h> dmu over full basis pairs.
double adjoint_decomposition_residual(const VectorFamily& psi,
                                      const VectorFamily& phi,
                                      const Matrix& a_n);

// theta_x = (pinv(A))* phi_x; requires R(A) to be the whole space.
VectorFamily interchange_unbounded(const VectorFamily& psi,
                                   const VectorFamily& phi, const Matrix& a_n,
                                   double rtol = kDefaultRtol);

// Residual of <f,u> = int <f,theta_x><psi_x,u> dmu over full basis pairs.
double unbounded_interchange_residual(const VectorFamily& psi,
                                      const VectorFamily& theta);

// Certifies psi for the composition A F (F bounded, per-dim matrices).
WeakFrameCertificate compose_bounded(const FamilyRule& psi_rule,
                                     const OperatorLadder& ladder,
                                     const std::function<Matrix(int)>& f_rule,
                                     double rtol = kDefaultRtol);

// Certifies A^k psi for A^{k+1}, A self-adjoint per dim.
WeakFrameCertificate power_frame(const FamilyRule& psi_rule,
                                 const OperatorLadder& ladder, int k,
                                 double rtol = kDefaultRtol);

struct AtomicConstruction {
  Matrix a_m;  // C* M read back as a dense operator
  VectorFamily phi;
  FrameCertificate certificate;
};

// Builds A_M = C* M together with the dual family carried by M.
AtomicConstruction construct_a_m(const VectorFamily& psi,
                                 const CoefficientMap& m,
                                 double rtol = kDefaultRtol);

// A_sharp = (I + A*A)^{-1} A*, the graph-metric adjoint of A: H_A -> H.
Matrix graph_adjoint(const Matrix& a_n);

// alpha ||A_sharp h||_A^2 <= int |<h,psi_x>|^2 dmu <= beta ||h||^2.
FrameCertificate certify_graph_a_frame(const VectorFamily& psi,
                                       const Matrix& a_n,
                                       double rtol = kDefaultRtol);

struct GraphEquivalenceTable {
  bool atomic_system = false;      // (i)   columnwise coefficient existence
  bool a_frame = false;            // (ii)  alpha > 0 against ||A_sharp h||_A
  bool bessel_dual = false;        // (iii) Bessel weak dual in H_A
  bool range_inclusion = false;    // (iv)  R(A) subset R(C*)
  bool douglas_factorizes = false; // (v)   A = C* M
  bool operator_bound = false;     // (vi)  S >= alpha A A_sharp
  bool sqrt_factorizes = false;    // (vii) A = S^{1/2} U
  bool agreement = false;

  bool all() const {
    return atomic_system && a_frame && bessel_dual && range_inclusion &&
           douglas_factorizes && operator_bound && sqrt_factorizes;
  }
};

GraphEquivalenceTable corollary_equivalences(const VectorFamily& psi,
                                             const Matrix& a_n,
                                             double rtol = kDefaultRtol);

}  // namespace framecert
