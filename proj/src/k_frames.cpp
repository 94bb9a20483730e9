#include "framecert/k_frames.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace framecert {

namespace {

Matrix weighted_outer(const VectorFamily& left, const VectorFamily& right) {
  // Sum_i w_i left_i right_i^*
  Matrix acc = Matrix::Zero(left.dim(), right.dim());
  for (int i = 0; i < left.size(); ++i)
    acc += left.space.weights()[i] * left.vector(i) *
           right.vector(i).adjoint();
  return acc;
}

}  // namespace

FrameCertificate certify_k_frame(const VectorFamily& psi, const Matrix& k,
                                 double rtol) {
  if (k.rows() != psi.dim())
    throw std::invalid_argument("certify_k_frame: K codomain must match the family space");
  if (k.norm() == 0.0)
    throw std::invalid_argument("certify_k_frame: K must be nonzero");
  Matrix s = frame_operator(psi);
  FrameCertificate cert;
  cert.kind = "k_frame";
  cert.rtol = rtol;
  cert.beta = hermitian_eig(s).eigenvalues.maxCoeff();
  Matrix d = k * k.adjoint();
  cert.alpha = min_generalized_quotient(s, ((d + d.adjoint()) / 2.0).eval(), rtol);
  if (cert.alpha <= kAlphaFloor * cert.beta) cert.alpha = 0.0;
  cert.verdict = cert.alpha > 0.0 && std::isfinite(cert.beta);
  return cert;
}

KFrameReport atomic_system_factor(const VectorFamily& psi, const Matrix& k,
                                  double rtol) {
  AnalysisOperator c = analysis_operator(psi);
  Matrix cstar = c.matrix.adjoint();
  DouglasFactor df = douglas_factor(k, cstar, rtol);

  KFrameReport report;
  report.factorization_residual = df.residual;
  report.coefficients =
      CoefficientMap{df.solution, spectral_norm(df.solution)};

  Matrix s = frame_operator(psi);
  Matrix span = range_basis(cstar, rtol);
  if (span.cols() > 0) {
    SpectralFactor restricted = hermitian_eig(span.adjoint() * s * span);
    report.span_lambda_min = std::max(restricted.eigenvalues.minCoeff(), 0.0);
  }

  FrameCertificate& cert = report.certificate;
  cert.kind = "atomic_system";
  cert.rtol = rtol;
  cert.beta = hermitian_eig(s).eigenvalues.maxCoeff();
  const double gamma = report.coefficients->gamma;
  cert.alpha = gamma > 0.0 ? 1.0 / (gamma * gamma) : 0.0;
  cert.residuals["factorization"] = df.residual;
  cert.verdict = df.residual <= kResidualTol;
  return report;
}

VectorFamily k_dual_from_m(const CoefficientMap& m, const MeasureSpace& sp) {
  if (m.matrix.rows() != sp.size())
    throw std::invalid_argument("k_dual_from_m: row count must match the measure space");
  Matrix phi = m.matrix.conjugate();
  for (int i = 0; i < sp.size(); ++i)
    phi.row(i) /= std::sqrt(sp.weights()[i]);
  return VectorFamily(sp, std::move(phi));
}

FrameCertificate dual_is_atomic_for_adjoint(const VectorFamily& psi,
                                            const VectorFamily& phi,
                                            const Matrix& k, double rtol) {
  if (k.rows() != psi.dim() || k.cols() != phi.dim())
    throw std::invalid_argument("dual_is_atomic_for_adjoint: dimension mismatch");
  // <K*h, f>_J = int <h,psi_x><phi_x,f> dmu  <=>  K* == Sum_i w_i phi_i psi_i^*
  Matrix rhs = weighted_outer(phi, psi);
  const double scale = std::max(k.norm(), 1e-300);
  FrameCertificate cert;
  cert.kind = "atomic_system";
  cert.rtol = rtol;
  cert.beta = hermitian_eig(frame_operator(phi)).eigenvalues.maxCoeff();
  cert.residuals["adjoint_expansion"] = (k.adjoint() - rhs).norm() / scale;
  cert.verdict = cert.residuals["adjoint_expansion"] <= kResidualTol &&
                 std::isfinite(cert.beta);
  return cert;
}

VectorFamily interchange_dual(const VectorFamily& psi, const VectorFamily& phi,
                              const Matrix& k, double rtol) {
  if (k.rows() != psi.dim() || k.cols() != phi.dim())
    throw std::invalid_argument("interchange_dual: dimension mismatch");
  Eigen::JacobiSVD<Matrix> svd(k);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[0] == 0.0)
    throw std::invalid_argument("interchange_dual: K is zero");
  int rank = 0;
  while (rank < sigma.size() && sigma[rank] > rtol * sigma[0]) ++rank;
  if (rank < sigma.size() && sigma[rank] > 0.0 &&
      sigma[rank - 1] / sigma[rank] < 10.0)
    throw std::invalid_argument(
        "interchange_dual: numerically ambiguous rank, range is ill-posed");

  Matrix kdag_star = pinv(k, rtol).adjoint();  // J -> H
  Matrix theta = phi.vectors * kdag_star.transpose();
  return VectorFamily(psi.space, std::move(theta));
}

double interchange_residuals(const VectorFamily& psi, const VectorFamily& theta,
                             const Matrix& k, double rtol) {
  Matrix q = range_basis(k, rtol);
  if (q.cols() == 0)
    throw std::invalid_argument("interchange_residuals: K is zero");
  Matrix g1 = weighted_outer(psi, theta);
  Matrix g2 = weighted_outer(theta, psi);
  const double qn = q.norm();
  double r1 = ((g1 - Matrix::Identity(g1.rows(), g1.cols())) * q).norm() / qn;
  double r2 = ((g2 - Matrix::Identity(g2.rows(), g2.cols())) * q).norm() / qn;
  return std::max(r1, r2);
}

EquivalenceTable equivalence_harness(const VectorFamily& psi, const Matrix& k,
                                     double rtol) {
  Matrix s = frame_operator(psi);
  Matrix cstar = analysis_operator(psi).matrix.adjoint();
  const double beta = hermitian_eig(s).eigenvalues.maxCoeff();

  EquivalenceTable table;
  // (i) optimal lower bound through the compressed generalized eigenproblem.
  Matrix kkstar = k * k.adjoint();
  double alpha =
      min_generalized_quotient(s, ((kkstar + kkstar.adjoint()) / 2.0).eval(), rtol);
  table.k_frame = alpha > kAlphaFloor * beta;

  // (ii) range inclusion against an orthonormal basis of R(C*).
  table.range_inclusion =
      range_exclusion_residual(k, range_basis(cstar, rtol)) <= kResidualTol;

  // (iii) K = C* M.
  table.douglas_factorizes = douglas_factor(k, cstar, rtol).residual <= kResidualTol;

  // (iv) S >= alpha K K*, as range inclusion of the PSD square roots.
  Matrix root_kk = sqrt_psd(((kkstar + kkstar.adjoint()) / 2.0).eval());
  Matrix root_s = sqrt_psd(s);
  table.operator_bound = douglas_factor(root_kk, root_s, rtol).residual <= kResidualTol;

  // (v) K = S^{1/2} U.
  table.sqrt_factorizes = douglas_factor(k, root_s, rtol).residual <= kResidualTol;

  const bool v = table.k_frame;
  table.agreement = table.range_inclusion == v && table.douglas_factorizes == v &&
                    table.operator_bound == v && table.sqrt_factorizes == v;
  return table;
}

FrameCertificate local_atoms_check(const VectorFamily& psi, const Matrix& p,
                                   double rtol) {
  const double scale = std::max(p.norm(), 1e-300);
  if ((p * p - p).norm() / scale > 1e-10 || (p - p.adjoint()).norm() / scale > 1e-10)
    throw std::invalid_argument("local_atoms_check: input is not an orthogonal projector");
  FrameCertificate cert = certify_k_frame(psi, p, rtol);
  cert.kind = "atomic_system";
  if (cert.verdict) {
    // Coefficient functionals c_x(f) = a_f(x) with Sum-bound gamma^2.
    KFrameReport report = atomic_system_factor(psi, p, rtol);
    const double gamma = report.coefficients->gamma;
    cert.residuals["gamma_sq"] = gamma * gamma;
    cert.residuals["factorization"] = report.factorization_residual;
    cert.verdict = report.factorization_residual <= kResidualTol;
  }
  return cert;
}

TransformCertificates transform_frames(const VectorFamily& psi, const Matrix& k,
                                       const Matrix& e, const Matrix& g,
                                       double rtol) {
  if (e.cols() != psi.dim() || g.rows() != psi.dim() || k.rows() != psi.dim())
    throw std::invalid_argument("transform_frames: dimension mismatch");
  VectorFamily e_psi(psi.space, psi.vectors * e.transpose());

  TransformCertificates out;
  out.ek_frame = certify_k_frame(e_psi, e * k, rtol);
  out.kg_frame = certify_k_frame(psi, k * g, rtol);

  const double alpha = certify_k_frame(psi, k, rtol).alpha;
  const double gnorm = spectral_norm(g);
  if (gnorm > 0.0)
    out.kg_frame.residuals["lower_bound_margin"] =
        out.kg_frame.alpha - alpha / (gnorm * gnorm);
  return out;
}

}  // namespace framecert
