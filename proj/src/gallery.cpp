#include "framecert/gallery.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "framecert/weak_a_frames.hpp"

namespace framecert {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// <e^{2 pi i t .}, e^{2 pi i k .}> on (0,1) = (e^{2 pi i (t-k)} - 1) /
// (2 pi i (t-k)), with limit 1 at t = k.
Complex mode_coord(double t, int k) {
  const double u = t - k;
  if (std::abs(u) < 1e-9) {
    // second-order expansion keeps the removable singularity smooth
    return Complex(1.0 - kTau * kTau * u * u / 6.0, kTau * u / 2.0);
  }
  return (std::exp(Complex(0, kTau * u)) - 1.0) / Complex(0, kTau * u);
}

}  // namespace

FamilyWithOperator gen_exponential_family(double T, int n_t, int d) {
  if (T <= 0.0 || n_t < 2 || d < 1)
    throw std::invalid_argument("gen_exponential_family: need T > 0, n_t >= 2, d >= 1");
  MeasureSpace sp = MeasureSpace::trapezoid(-T, T, n_t);
  Matrix theta(n_t, d);
  const double step = 2.0 * T / (n_t - 1);
  for (int i = 0; i < n_t; ++i) {
    const double t = -T + i * step;
    for (int k = 0; k < d; ++k) theta(i, k) = mode_coord(t, k);
  }
  Matrix a_n = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) a_n(k, k) = Complex(kTau * k, 0);

  FamilyWithOperator out{VectorFamily(sp, theta),
                         VectorFamily(sp, theta * a_n.transpose()), a_n};
  return out;
}

FamilyWithOperator gen_stft_weak_frame(int n, const Vector& g) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw std::invalid_argument("gen_stft_weak_frame: n must be a power of 2");
  if (g.size() != n)
    throw std::invalid_argument("gen_stft_weak_frame: window length must equal n");
  const double gnorm = g.norm();
  if (gnorm == 0.0)
    throw std::invalid_argument("gen_stft_weak_frame: zero window");
  Vector window = g / gnorm;

  // Full phase-space grid (s,t) in Z_n x Z_n, weights 1/n so the discrete
  // Parseval identity Sum |<f,theta_{s,t}>|^2 / n = ||f||^2 is exact.
  RealVector weights = RealVector::Constant(n * n, 1.0 / n);
  Matrix theta(n * n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int row = s * n + t;
      for (int j = 0; j < n; ++j)
        theta(row, j) =
            std::exp(Complex(0, kTau * t * j / n)) * window[(j - s % n + n) % n];
    }

  Matrix a_n = fourier_diff_ladder({n}).at(n);
  MeasureSpace sp{weights};
  FamilyWithOperator out{VectorFamily(sp, theta),
                         VectorFamily(sp, theta * a_n.transpose()), a_n};
  return out;
}

MultiplicationFrame gen_multiplication_frame(const Vector& g_samples, double T,
                                             int n_t, int d) {
  const int n = static_cast<int>(g_samples.size());
  if (n < 1) throw std::invalid_argument("gen_multiplication_frame: empty g");
  if (d < 1) throw std::invalid_argument("gen_multiplication_frame: d >= 1 required");

  // Fourier coefficients of g on (0,1): g_hat(k) = (1/n) Sum_j g_j e^{-2 pi i k j/n}.
  auto ghat = [&](int k) {
    Complex acc(0, 0);
    for (int j = 0; j < n; ++j)
      acc += g_samples[j] * std::exp(Complex(0, -kTau * k * j / n));
    return acc / double(n);
  };
  // Multiplication by g in the retained mode basis: (M_g)_{k,l} = g_hat(k-l).
  Matrix mg(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) mg(k, l) = ghat(k - l);

  FamilyWithOperator base = gen_exponential_family(T, n_t, d);
  MultiplicationFrame out{
      VectorFamily(base.theta.space, base.theta.vectors * mg.transpose()), mg};
  return out;
}

DivergenceSpec gen_divergence_example(double p, double alpha, double beta) {
  check_divergence_params(p, alpha, beta);
  return DivergenceSpec{p, alpha, beta};
}

}  // namespace framecert
