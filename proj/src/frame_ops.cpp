#include "framecert/frame_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace framecert {

VectorFamily::VectorFamily(MeasureSpace sp, Matrix vecs)
    : space(std::move(sp)), vectors(std::move(vecs)) {
  if (vectors.rows() != space.size())
    throw std::invalid_argument("VectorFamily: row count must match the measure space");
  if (!vectors.allFinite())
    throw std::invalid_argument("VectorFamily: entries must be finite");
}

Vector AnalysisOperator::samples(const Vector& h, const MeasureSpace& sp) const {
  Vector weighted = apply(h);
  for (int i = 0; i < sp.size(); ++i) weighted[i] /= std::sqrt(sp.weights()[i]);
  return weighted;
}

AnalysisOperator analysis_operator(const VectorFamily& psi) {
  Matrix c = psi.vectors.conjugate();
  for (int i = 0; i < psi.size(); ++i)
    c.row(i) *= std::sqrt(psi.space.weights()[i]);
  return AnalysisOperator{std::move(c)};
}

Vector synthesis_apply(const VectorFamily& psi, const Vector& a) {
  if (a.size() != psi.size())
    throw std::invalid_argument("synthesis_apply: coefficient length mismatch");
  Vector out = Vector::Zero(psi.dim());
  for (int i = 0; i < psi.size(); ++i)
    out += psi.space.weights()[i] * a[i] * psi.vector(i);
  return out;
}

Matrix frame_operator(const VectorFamily& psi) {
  Matrix c = analysis_operator(psi).matrix;
  Matrix s = c.adjoint() * c;
  return ((s + s.adjoint()) / 2.0).eval();
}

Complex sesquilinear_form(const VectorFamily& psi, const Vector& f,
                          const Vector& g) {
  if (f.size() != psi.dim() || g.size() != psi.dim())
    throw std::invalid_argument("sesquilinear_form: dimension mismatch");
  AnalysisOperator c = analysis_operator(psi);
  Vector cf = c.apply(f);
  Vector cg = c.apply(g);
  return (cg.adjoint() * cf)(0, 0);
}

FrameCertificate certify_bessel(const VectorFamily& psi) {
  SpectralFactor sf = hermitian_eig(frame_operator(psi));
  const double beta = sf.eigenvalues.maxCoeff();
  const double cnorm = spectral_norm(analysis_operator(psi).matrix);
  FrameCertificate cert;
  cert.kind = "bessel";
  cert.beta = beta;
  cert.alpha = 0.0;
  cert.residuals["opnorm_cross_check"] =
      std::abs(cnorm * cnorm - beta) / std::max(beta, 1e-300);
  cert.verdict = std::isfinite(beta) &&
                 cert.residuals["opnorm_cross_check"] <= 1e-8;
  return cert;
}

FrameCertificate certify_frame(const VectorFamily& psi, double rtol) {
  SpectralFactor sf = hermitian_eig(frame_operator(psi));
  FrameCertificate cert;
  cert.kind = "frame";
  cert.rtol = rtol;
  cert.beta = sf.eigenvalues.maxCoeff();
  cert.alpha = std::max(sf.eigenvalues.minCoeff(), 0.0);
  if (cert.alpha <= rtol * cert.beta) cert.alpha = 0.0;
  cert.verdict = cert.alpha > 0.0 && std::isfinite(cert.beta);
  return cert;
}

namespace {

// Trailing coefficient d_{m+1}(p) of the even partial sum.
double d_coef(double p, double alpha, double m) {
  return std::pow(m + 1, 2 * alpha) * (std::pow(m, p) - std::pow(m + 1, p)) /
         (std::pow(m, p) * std::pow(m + 1, p));
}

double b_coef(double p, double alpha, double beta, double n) {
  return std::pow(n, 2 * beta - p) +
         std::pow(n, 2 * alpha) * (std::pow(n - 1, p) - std::pow(n, p)) /
             (std::pow(n, p) * std::pow(n - 1, p)) -
         std::pow(n + 1, 2 * alpha) * (std::pow(n, p) - std::pow(n + 1, p)) /
             (std::pow(n, p) * std::pow(n + 1, p));
}

}  // namespace

void check_divergence_params(double p, double alpha, double beta) {
  auto fail = [](const std::string& ineq) {
    throw std::invalid_argument("divergence probe: parameter constraint violated: " + ineq);
  };
  if (!(p > beta + 0.5)) fail("p > beta + 1/2");
  if (!(p > alpha - 0.5)) fail("p > alpha - 1/2");
  if (!(p > 2 * beta + 0.5)) fail("p > 2*beta + 1/2");
  if (!(p > 2 * alpha - 1.5)) fail("p > 2*alpha - 3/2");
  if (!(p >= 2 * alpha - beta - 1)) fail("p >= 2*alpha - beta - 1");
  const double s = 2 * alpha - 1 - p;
  if (!(s > 0.0 && s < beta)) fail("0 < 2*alpha - 1 - p < beta");
}

DivergenceProbe domain_divergence_probe(double p, double alpha, double beta,
                                        const std::vector<long>& m_grid) {
  check_divergence_params(p, alpha, beta);
  if (m_grid.size() < 2)
    throw std::invalid_argument("divergence probe: need at least two grid points");

  DivergenceProbe probe;
  probe.m_grid = m_grid;
  probe.expected_exponent = 2 * alpha - 1 - p;

  const double a = 1.0 + std::pow(2.0, 2 * alpha) * (1.0 - std::pow(2.0, -p));

  // ||s_{2m}||^2 = a^2 + sum_{n=2}^m b_n^2 + d_{m+1}^2, accumulated
  // incrementally along the ascending grid.
  double head = a * a;
  long n_done = 1;
  for (long m : m_grid) {
    if (m <= n_done)
      throw std::invalid_argument("divergence probe: m_grid must be ascending, m >= 2");
    for (long n = n_done + 1; n <= m; ++n) {
      double b = b_coef(p, alpha, beta, static_cast<double>(n));
      head += b * b;
    }
    n_done = m;
    double d = d_coef(p, alpha, static_cast<double>(m));
    probe.norms.push_back(std::sqrt(head + d * d));

    // s_{2(m+1)} - s_{2m} = (b_{m+1} - d_{m+1}) e_{m+1} + d_{m+2} e_{m+2}
    double db = b_coef(p, alpha, beta, static_cast<double>(m + 1)) - d;
    double d2 = d_coef(p, alpha, static_cast<double>(m + 1));
    probe.increment_norms.push_back(std::sqrt(db * db + d2 * d2));
  }

  // Least-squares slope of log(increment norm) against log(m).
  const int k = static_cast<int>(m_grid.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < k; ++i) {
    double x = std::log(static_cast<double>(m_grid[i]));
    double y = std::log(probe.increment_norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  probe.growth_exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return probe;
}

double divergence_l2_tail(double p, double alpha, double beta, long n_max) {
  long n_half = n_max / 2;
  double tail = 0.0;
  for (long n = n_half + 1; n <= n_max; ++n) {
    double nn = static_cast<double>(n);
    double diff = std::pow(nn, p) - std::pow(nn + 1, p);
    tail += std::pow(nn, 2 * beta - 2 * p) +
            std::pow(nn + 1, 2 * alpha) * diff * diff /
                (std::pow(nn, 2 * p) * std::pow(nn + 1, 2 * p));
  }
  return tail;
}

}  // namespace framecert
