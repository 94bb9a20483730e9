#pragma once

#include "framecert/frame_ops.hpp"

namespace framecert {

struct FamilyWithOperator {
  VectorFamily theta;  // base family
  VectorFamily psi;    // A theta
  Matrix a_n;
};

// Exponential family theta_t = e^{2 pi i t .} on (0,1), truncated to the
// first d Fourier modes and sampled with trapezoidal weights on [-T, T].
// a_n is the differentiation operator 2*pi*diag(0..d-1) in this basis.
FamilyWithOperator gen_exponential_family(double T, int n_t, int d);

// Discrete periodic Gabor system on Z_n over the full n x n phase-space grid
// with weights 1/n, window g (normalized); a_n is the spectral
// differentiation matrix, psi = A theta.
FamilyWithOperator gen_stft_weak_frame(int n, const Vector& g);

struct MultiplicationFrame {
  VectorFamily psi;  // M_g theta
  Matrix mg;         // Toeplitz multiplication operator on d Fourier modes
};

// psi_t = g e^{2 pi i t .} as a continuous M_g-frame; g given by samples on a
// uniform grid of (0,1), realized through its Fourier coefficients.
MultiplicationFrame gen_multiplication_frame(const Vector& g_samples, double T,
                                             int n_t, int d);

struct DivergenceSpec {
  double p = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// Validates the parameter inequalities; throws naming the violated one.
DivergenceSpec gen_divergence_example(double p, double alpha, double beta);

}  // namespace framecert
