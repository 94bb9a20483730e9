#pragma once

#include <map>
#include <string>
#include <vector>

#include "framecert/linalg.hpp"
#include "framecert/measure_space.hpp"

namespace framecert {

// Discretized function psi: X -> H. Row i holds the coordinates of psi_{x_i}.
struct VectorFamily {
  MeasureSpace space;
  Matrix vectors;  // m x d

  VectorFamily(MeasureSpace sp, Matrix vecs);

  int size() const { return static_cast<int>(vectors.rows()); }
  int dim() const { return static_cast<int>(vectors.cols()); }
  Vector vector(int i) const { return vectors.row(i).transpose(); }
};

// C with row i = sqrt(w_i) * conj(psi_i)^T, so that the plain l2 norm of Ch
// equals the weighted L^2(X,mu) norm of x -> <h, psi_x>.
struct AnalysisOperator {
  Matrix matrix;  // m x d

  Vector apply(const Vector& h) const { return matrix * h; }
  // Unweighted samples x -> <h, psi_x>.
  Vector samples(const Vector& h, const MeasureSpace& sp) const;
};

struct FrameCertificate {
  std::string kind;
  double alpha = 0.0;
  double beta = 0.0;
  std::map<std::string, double> residuals;
  double rtol = kDefaultRtol;
  bool verdict = false;
};

AnalysisOperator analysis_operator(const VectorFamily& psi);

// Sum_i w_i a_i psi_i (weak synthesis, a given as unweighted samples on X).
Vector synthesis_apply(const VectorFamily& psi, const Vector& a);

// S = C*C, Hermitian PSD d x d.
Matrix frame_operator(const VectorFamily& psi);

// Psi(f,g) = integral <f,psi_x><psi_x,g> dmu = <Cf, Cg>.
Complex sesquilinear_form(const VectorFamily& psi, const Vector& f,
                          const Vector& g);

FrameCertificate certify_bessel(const VectorFamily& psi);
FrameCertificate certify_frame(const VectorFamily& psi,
                               double rtol = kAlphaFloor);

// Divergence probe for the truncation-ladder family with coefficients
//   s_{2m} = a e_1 + sum_{n=2}^m b_n(p) e_n + d_{m+1}(p) e_{m+1}.
// Evaluates ||s_{2m}|| on a log grid of m and estimates the growth exponent
// of the divergent component from the partial-sum increment norms
// ||s_{2(m+1)} - s_{2m}||, which converge to slope 2*alpha - 1 - p.
struct DivergenceProbe {
  std::vector<long> m_grid;
  std::vector<double> norms;            // ||s_{2m}||
  std::vector<double> increment_norms;  // ||s_{2(m+1)} - s_{2m}||
  double growth_exponent = 0.0;
  double expected_exponent = 0.0;
};

// Validates the parameter constraints; throws naming the violated inequality.
void check_divergence_params(double p, double alpha, double beta);

DivergenceProbe domain_divergence_probe(double p, double alpha, double beta,
                                        const std::vector<long>& m_grid);

// Partial sums of the D(Psi) membership series
//   sum_n n^{2 beta}/n^{2p} + (n+1)^{2 alpha} |n^p-(n+1)^p|^2 / (n^{2p}(n+1)^{2p});
// returns the tail sum_{n_half < n <= n_max} as a Cauchy gap estimate.
double divergence_l2_tail(double p, double alpha, double beta, long n_max);

}  // namespace framecert
